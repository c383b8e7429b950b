#include "jacobsthal/radical.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "jacobsthal/errors.hpp"
#include "jacobsthal/primality.hpp"
#include "jacobsthal/prime_table.hpp"

namespace jac {

namespace {

constexpr uint64_t kFactorInputMax = 1'000'000'000'000ull;  // 10^12

std::vector<uint64_t> factor_squarefree(uint64_t n, const PrimeTable* table) {
  if (n < 2) throw ParseError("integer radical input must be at least 2");
  if (n > kFactorInputMax)
    throw ParseError("integer radical input exceeds 10^12; pass a prime list instead");
  std::vector<uint64_t> factors;
  auto strip = [&](uint64_t p) {
    if (n % p != 0) return;
    n /= p;
    if (n % p == 0) throw ParseError("not squarefree: repeated factor " + std::to_string(p));
    factors.push_back(p);
  };
  strip(2);
  strip(3);
  if (table != nullptr) {
    for (uint64_t p : table->primes()) {
      if (p < 5) continue;
      if (p * p > n) break;
      strip(p);
    }
  }
  // Wheel over 6k +- 1 beyond whatever the table covered.
  uint64_t start = 5;
  if (table != nullptr && table->count() > 2) {
    uint64_t top = table->primes().back();
    start = top - top % 6 + 5;
  }
  for (uint64_t p = start; p <= 1'000'000 && p * p <= n; p += 6) {
    strip(p);
    if (p + 2 <= 1'000'000) strip(p + 2);
  }
  // Remaining cofactor has no factor <= 1e6, so it is 1, a prime, p^2, or
  // a semiprime; rho handles the last case.
  while (n > 1) {
    if (is_prime_u64(n)) {
      factors.push_back(n);
      n = 1;
      break;
    }
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    for (uint64_t c : {r - 1, r, r + 1}) {
      if (c > 1 && c * c == n) throw ParseError("not squarefree: repeated factor " + std::to_string(c));
    }
    uint64_t d = pollard_rho(n);
    if (d == 0) throw ParseError("factoring timeout on " + std::to_string(n));
    if (n / d % d == 0 || (n / d == d))
      throw ParseError("not squarefree: repeated factor " + std::to_string(d));
    if (!is_prime_u64(d)) throw ParseError("factoring failed on " + std::to_string(n));
    factors.push_back(d);
    n /= d;
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace

Radical Radical::from_primes(std::vector<uint64_t> primes) {
  if (primes.empty()) throw ParseError("radical needs at least one prime");
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i > 0 && primes[i] == primes[i - 1])
      throw ParseError("duplicate prime: " + std::to_string(primes[i]));
    if (!is_prime_u64(primes[i]))
      throw ParseError("not prime: " + std::to_string(primes[i]));
  }
  Radical r;
  r.primes_ = std::move(primes);
  return r;
}

Radical Radical::from_sorted_primes_unchecked(std::vector<uint64_t> primes) {
  Radical r;
  r.primes_ = std::move(primes);
  return r;
}

Radical Radical::first_k_primes(const PrimeTable& table, std::size_t k) {
  if (k == 0) throw ParseError("radical needs at least one prime");
  if (k > table.count())
    throw CapacityError("P" + std::to_string(k) + " needs " + std::to_string(k) +
                        " primes, table has " + std::to_string(table.count()));
  Radical r;
  r.primes_.assign(table.primes().begin(), table.primes().begin() + static_cast<long>(k));
  return r;
}

Radical Radical::parse(const std::string& spec, const PrimeTable* table) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty radical spec");

  if (s[0] == 'P' || s[0] == 'p') {
    std::size_t k = 0;
    try {
      k = std::stoull(s.substr(1));
    } catch (...) {
      throw ParseError("bad primorial spec: " + spec);
    }
    if (k == 0) throw ParseError("P0 is not a radical");
    if (table != nullptr && table->count() >= k) return first_k_primes(*table, k);
    // Self-serve sieve sized by the usual p_k overestimate.
    double kd = static_cast<double>(std::max<std::size_t>(k, 6));
    uint64_t bound = static_cast<uint64_t>(kd * (std::log(kd) + std::log(std::log(kd))) * 1.2) + 16;
    PrimeTable local(bound);
    return first_k_primes(local, k);
  }

  if (s.find(',') != std::string::npos) {
    std::vector<uint64_t> primes;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw ParseError("empty element in prime list");
      try {
        primes.push_back(std::stoull(tok));
      } catch (...) {
        throw ParseError("bad prime list element: " + tok);
      }
    }
    return from_primes(std::move(primes));
  }

  uint64_t n = 0;
  try {
    n = std::stoull(s);
  } catch (...) {
    throw ParseError("unrecognized radical spec: " + spec);
  }
  Radical r;
  r.primes_ = factor_squarefree(n, table);
  return r;
}

Int Radical::product() const {
  Int n = 1;
  for (uint64_t q : primes_) n *= q;
  return n;
}

std::optional<uint64_t> Radical::product_u64() const {
  uint64_t n = 1;
  for (uint64_t q : primes_) {
    if (n > UINT64_MAX / q) return std::nullopt;
    n *= q;
  }
  return n;
}

std::string Radical::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(primes_[i]);
  }
  return out;
}

std::string Radical::to_json() const {
  std::string out = "{\"primes\":[";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(primes_[i]);
  }
  out += "],\"k\":" + std::to_string(primes_.size()) + "}";
  return out;
}

CertifiedReal sigma_inv(const Radical& rad) {
  CertifiedReal out;
  if (rad.k() <= Radical::kExactFactorLimit) {
    Rat e = 0;
    for (uint64_t q : rad.primes()) e += Rat(1, q);
    out.exact = e;
    out.enc = to_interval(e);
    return out;
  }
  Interval s = Interval::point(0.0);
  for (uint64_t q : rad.primes()) s = iadd(s, irecip_u64(q));
  out.enc = s;
  return out;
}

CertifiedReal pi_inv(const Radical& rad) {
  CertifiedReal out;
  if (rad.k() <= Radical::kExactFactorLimit) {
    Rat e = 1;
    for (uint64_t q : rad.primes()) e *= Rat(q - 1, q);
    out.exact = e;
    out.enc = to_interval(e);
    return out;
  }
  Interval p = Interval::point(1.0);
  for (uint64_t q : rad.primes()) p = imul(p, isub(Interval::point(1.0), irecip_u64(q)));
  out.enc = p;
  return out;
}

namespace {

Interval endpoint_interval(uint64_t q) {
  Interval base = idiv(ifrom_u64(q), ifrom_u64(q - 1));
  return ipow(base, ifrom_u64(q));
}

}  // namespace

MediantResult mediant_T(const Radical& rad) {
  MediantResult res;
  uint64_t q1 = rad.smallest();
  uint64_t qk = rad.largest();
  res.lower_endpoint = endpoint_interval(qk);
  res.upper_endpoint = endpoint_interval(q1);

  // k = 1 with a small prime: 1/sigma^{-1} = q is an integer, so the power
  // is an exact rational, e.g. T({2}) = 4 exactly.
  if (rad.k() == 1 && q1 <= 1024) {
    Rat base(q1, q1 - 1);
    Rat t = 1;
    for (uint64_t i = 0; i < q1; ++i) t *= base;
    res.T.exact = t;
    res.T.enc = to_interval(t);
    return res;
  }

  CertifiedReal sig = sigma_inv(rad);
  CertifiedReal pii = pi_inv(rad);
  Interval inv_pi = idiv(Interval::point(1.0), pii.enc);
  res.T.enc = iexp(idiv(ilog(inv_pi), sig.enc));
  return res;
}

Int totative_count(const Radical& rad, const Int& x) {
  if (rad.k() > 24)
    throw CapacityError("totative count enumerates 2^k subsets; k <= 24 required");
  if (x <= 0) return Int(0);
  const auto& qs = rad.primes();
  Int total = x;  // empty subset
  // DFS over subset products, pruned once the product exceeds x (then the
  // floor term and every superset's term vanish).
  struct Frame {
    std::size_t next;
    Int prod;
    int sign;
  };
  std::vector<Frame> stack;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (Int(qs[i]) > x) break;
    stack.push_back({i + 1, Int(qs[i]), -1});
  }
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    total += f.sign * (x / f.prod);
    for (std::size_t j = f.next; j < qs.size(); ++j) {
      Int p = f.prod * qs[j];
      if (p > x) break;
      stack.push_back({j + 1, std::move(p), -f.sign});
    }
  }
  return total;
}

namespace {

// Shared scan once the suffix enclosures are available.  thresholds are
// 1 + 1/(2 q_l); comparisons must be certain, with an exact-rational retry
// for small radicals when an enclosure straddles.
template <class TailFn, class ExactRetry>
TailSplit find_l_scan(std::size_t k, const std::vector<uint64_t>& qs, TailFn tail,
                      ExactRetry retry) {
  for (std::size_t l = 1; l <= k; ++l) {
    Interval t = tail(l);
    Interval thr = iadd(Interval::point(1.0),
                        idiv(Interval::point(1.0), imul(Interval::point(2.0), ifrom_u64(qs[l - 1]))));
    Cmp3 c = certainly_less(t, thr);
    if (c == Cmp3::Unknown) c = retry(l);
    if (c == Cmp3::True) return {l, qs[l - 1]};
  }
  // l = k always satisfies: 1/q_k < 1 + 1/(2 q_k).
  return {k, qs[k - 1]};
}

}  // namespace

TailSplit find_l(const Radical& rad) {
  const auto& qs = rad.primes();
  std::size_t k = rad.k();
  std::vector<Interval> suffix(k + 1, Interval::point(0.0));
  for (std::size_t i = k; i-- > 0;) suffix[i] = iadd(suffix[i + 1], irecip_u64(qs[i]));

  auto tail = [&](std::size_t l) { return suffix[l - 1]; };
  auto retry = [&](std::size_t l) -> Cmp3 {
    if (k > Radical::kExactFactorLimit)
      throw IndeterminateError("tail sum enclosure straddles its threshold");
    Rat t = 0;
    for (std::size_t i = l - 1; i < k; ++i) t += Rat(1, qs[i]);
    Rat thr = 1 + Rat(1, 2 * Int(qs[l - 1]));
    return t < thr ? Cmp3::True : Cmp3::False;
  };
  return find_l_scan(k, qs, tail, retry);
}

TailSplit find_l_primorial(const PrimeTable& table, std::size_t k) {
  if (k == 0) throw DomainError("find_l needs k >= 1");
  if (k > table.count()) throw CapacityError("find_l_primorial: table smaller than k");
  const auto& ps = table.primes();
  std::vector<uint64_t> qs(ps.begin(), ps.begin() + static_cast<long>(k));
  auto tail = [&](std::size_t l) { return table.recip_sum(l - 1, k - (l - 1)); };
  auto retry = [&](std::size_t) -> Cmp3 {
    throw IndeterminateError("primorial tail sum enclosure straddles its threshold");
  };
  return find_l_scan(k, qs, tail, retry);
}

}  // namespace jac
