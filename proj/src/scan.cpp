#include "jacobsthal/scan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "jacobsthal/errors.hpp"
#include "jacobsthal/parallel.hpp"
#include "jacobsthal/prime_table.hpp"

namespace jac {

namespace {

constexpr uint64_t kScanSegmentBits = uint64_t(1) << 22;
constexpr uint64_t kParallelScanThreshold = 100'000'000ull;

// Binary gcd with conditional-move selects in the loop body.
inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  unsigned shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  b >>= std::countr_zero(b);
  while (a != b) {
    uint64_t big = a > b ? a : b;
    uint64_t small = a > b ? b : a;
    uint64_t d = big - small;
    a = small;
    b = d >> std::countr_zero(d);
  }
  return a << shift;
}

using u128 = unsigned __int128;

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((u128)a * b % m);
}

// a^{-1} mod m for gcd(a, m) = 1, by extended Euclid.
uint64_t invmod_u64(uint64_t a, uint64_t m) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t, nt);
    nt -= q * t;
    std::swap(r, nr);
    nr -= q * r;
  }
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

// Per-segment run digest.  A "run" is a maximal block of marked positions
// (integers sharing a factor with n).  Interior runs touch neither segment
// boundary; the head/tail blocks are stitched across segments by the fold.
struct SegStats {
  uint64_t len = 0;
  uint64_t head = 0;
  uint64_t tail = 0;
  uint64_t best_interior = 0;
  bool all_marked = false;
  uint64_t count_L = 0;   // interior runs of exactly L (phase 2)
  uint64_t first_L = 0;   // absolute start of the earliest, 0 = none
};

void mark_segment(std::vector<uint64_t>& words, uint64_t lo, uint64_t len,
                  const std::vector<uint64_t>& primes) {
  std::size_t nwords = static_cast<std::size_t>((len + 63) / 64);
  std::fill(words.begin(), words.begin() + nwords, 0);
  for (uint64_t q : primes) {
    if (q == 2) {
      uint64_t pat = (lo % 2 == 0) ? 0x5555555555555555ull : 0xAAAAAAAAAAAAAAAAull;
      for (std::size_t w = 0; w < nwords; ++w) words[w] |= pat;
      continue;
    }
    uint64_t first = ((lo + q - 1) / q) * q;
    for (uint64_t m = first; m < lo + len; m += q)
      words[(m - lo) >> 6] |= uint64_t(1) << ((m - lo) & 63);
  }
  if (len & 63) words[nwords - 1] &= (~uint64_t(0)) >> (64 - (len & 63));
}

SegStats summarize(const std::vector<uint64_t>& words, uint64_t lo, uint64_t len,
                   uint64_t L) {
  SegStats st;
  st.len = len;
  uint64_t run = 0, run_start = 0;
  auto close = [&] {
    if (run == 0) return;
    if (run_start == lo) {
      st.head = run;
    } else {
      if (run > st.best_interior) st.best_interior = run;
      if (L != 0 && run == L) {
        ++st.count_L;
        if (st.first_L == 0) st.first_L = run_start;
      }
    }
    run = 0;
  };

  std::size_t nwords = static_cast<std::size_t>((len + 63) / 64);
  for (std::size_t wi = 0; wi < nwords; ++wi) {
    uint64_t x = words[wi];
    uint64_t base = lo + (uint64_t(wi) << 6);
    uint64_t m = std::min<uint64_t>(64, len - (uint64_t(wi) << 6));
    if (x == 0) {
      close();
      continue;
    }
    uint64_t full = (m == 64) ? ~uint64_t(0) : ((~uint64_t(0)) >> (64 - m));
    if (x == full) {
      if (run == 0) run_start = base;
      run += m;
      continue;
    }
    uint64_t pos = 0;
    while (pos < m) {
      uint64_t shifted = x >> pos;
      if (shifted == 0) {
        close();
        break;
      }
      unsigned tz = static_cast<unsigned>(std::countr_zero(shifted));
      if (tz > 0) {
        close();
        pos += tz;
        continue;
      }
      unsigned ones = static_cast<unsigned>(std::countr_one(shifted));
      uint64_t take = std::min<uint64_t>(ones, m - pos);
      if (run == 0) run_start = base + pos;
      run += take;
      pos += take;
    }
  }
  if (run > 0) {
    if (run == len) {
      st.all_marked = true;
      st.head = st.tail = len;
    } else {
      st.tail = run;
    }
  }
  return st;
}

uint64_t fold_longest(const std::vector<SegStats>& segs) {
  uint64_t carry = 0, best = 0;
  for (const SegStats& st : segs) {
    if (st.all_marked) {
      carry += st.len;
      continue;
    }
    best = std::max(best, std::max(carry + st.head, st.best_interior));
    carry = st.tail;
  }
  return std::max(best, carry);
}

struct RunsOfL {
  uint64_t count = 0;
  uint64_t first = 0;
};

RunsOfL fold_runs(const std::vector<SegStats>& segs, uint64_t lo0, uint64_t L) {
  RunsOfL out;
  uint64_t carry = 0, carry_start = 0;
  uint64_t lo = lo0;
  for (const SegStats& st : segs) {
    if (st.all_marked) {
      if (carry == 0) carry_start = lo;
      carry += st.len;
      lo += st.len;
      continue;
    }
    uint64_t closed = carry + st.head;
    if (closed == L) {
      uint64_t s = (carry > 0) ? carry_start : lo;
      ++out.count;
      if (out.first == 0) out.first = s;
    }
    out.count += st.count_L;
    if (out.first == 0 && st.first_L != 0) out.first = st.first_L;
    if (st.tail > 0) {
      carry = st.tail;
      carry_start = lo + st.len - st.tail;
    } else {
      carry = 0;
    }
    lo += st.len;
  }
  if (carry == L) {
    ++out.count;
    if (out.first == 0) out.first = carry_start;
  }
  return out;
}

std::vector<uint64_t>& scan_buffer(uint64_t seg_bits) {
  thread_local std::vector<uint64_t> buf;
  std::size_t words = static_cast<std::size_t>((seg_bits + 63) / 64);
  if (buf.size() < words) buf.resize(words);
  return buf;
}

std::vector<SegStats> scan_segments(const std::vector<uint64_t>& primes, uint64_t n,
                                    uint64_t seg_bits, unsigned threads, uint64_t L) {
  const uint64_t lo0 = 2;
  const uint64_t total = n - 1;  // positions [2, n]
  const uint64_t nseg = (total + seg_bits - 1) / seg_bits;
  std::vector<SegStats> segs(static_cast<std::size_t>(nseg));
  parallel_for(static_cast<std::size_t>(nseg), threads, [&](std::size_t i) {
    uint64_t lo = lo0 + uint64_t(i) * seg_bits;
    uint64_t len = std::min<uint64_t>(seg_bits, n + 1 - lo);
    std::vector<uint64_t>& buf = scan_buffer(seg_bits);
    mark_segment(buf, lo, len, primes);
    segs[i] = summarize(buf, lo, len, L);
  });
  return segs;
}

ScanResult scan_impl(const std::vector<uint64_t>& primes, uint64_t n, uint64_t seg_bits,
                     unsigned threads) {
  std::vector<SegStats> pass1 = scan_segments(primes, n, seg_bits, threads, 0);
  uint64_t L = fold_longest(pass1);

  std::vector<SegStats> pass2 = scan_segments(primes, n, seg_bits, threads, L);
  RunsOfL runs = fold_runs(pass2, 2, L);

  ScanResult res;
  res.n = n;
  res.L = L;
  res.g = L + 1;
  res.a = runs.first - 1;
  res.b = runs.count;
  res.witness_start = res.a;
  return res;
}

}  // namespace

uint64_t scan_longest_run(const std::vector<uint64_t>& primes, uint64_t n) {
  return fold_longest(scan_segments(primes, n, kScanSegmentBits, 1, 0));
}

namespace detail {
ScanResult scan_with_segment_bits(const std::vector<uint64_t>& primes, uint64_t n,
                                  uint64_t segment_bits, unsigned threads) {
  return scan_impl(primes, n, segment_bits, threads);
}
}  // namespace detail

ScanResult g_exact(const Radical& rad, uint64_t scan_budget, unsigned threads) {
  std::optional<uint64_t> nopt = rad.product_u64();
  if (!nopt || *nopt > scan_budget)
    throw CapacityError("n = " + rad.to_string() +
                        " exceeds the scan budget; use the bound suite instead");
  uint64_t n = *nopt;
  unsigned T = (n < kParallelScanThreshold) ? 1 : resolve_threads(threads);
  return scan_impl(rad.primes(), n, kScanSegmentBits, T);
}

namespace {

inline uint32_t gcd_u32(uint32_t a, uint32_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  unsigned shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  b >>= std::countr_zero(b);
  while (a != b) {
    uint32_t big = a > b ? a : b;
    uint32_t small = a > b ? b : a;
    uint32_t d = big - small;
    a = small;
    b = d >> std::countr_zero(d);
  }
  return a << shift;
}

// gcd(m, j) > 1, with the common factors 2, 3, 5 peeled off before the
// general binary gcd; each j is still decided in isolation.
template <class U>
struct SharesFactor {
  U m;
  bool d2, d3, d5;
  explicit SharesFactor(U modulus)
      : m(modulus), d2(modulus % 2 == 0), d3(modulus % 3 == 0), d5(modulus % 5 == 0) {}
  bool operator()(U j) const {
    if (d2 && (j & 1) == 0) return true;
    if (d3 && j % 3 == 0) return true;
    if (d5 && j % 5 == 0) return true;
    if constexpr (sizeof(U) == 4)
      return gcd_u32(m, j) > 1;
    else
      return gcd_u64(m, j) > 1;
  }
};

template <class U>
uint64_t gcd_scan_impl(U m) {
  SharesFactor<U> shares(m);
  U prev = 1;
  uint64_t g = 0;
  for (U j = 2; j <= m + 1; ++j) {
    if (!shares(j)) {
      if (j - prev > g) g = j - prev;
      prev = j;
    }
  }
  return g;
}

}  // namespace

uint64_t g_gcd_scan(uint64_t m) {
  if (m + 1 <= UINT32_MAX) return gcd_scan_impl<uint32_t>(static_cast<uint32_t>(m));
  return gcd_scan_impl<uint64_t>(m);
}

uint64_t g_naive(const Radical& rad) {
  std::optional<uint64_t> nopt = rad.product_u64();
  if (!nopt || *nopt > 10'000'000ull)
    throw CapacityError("g_naive requires n <= 1e7");
  return g_gcd_scan(*nopt);
}

Witness crt_witness(const Radical& rad, const std::vector<uint64_t>& perm) {
  const std::size_t k = rad.k();
  if (perm.size() != k) throw DomainError("permutation length must equal k");
  std::vector<bool> seen(k + 1, false);
  for (uint64_t v : perm) {
    if (v < 1 || v > k || seen[v]) throw DomainError("not a permutation of 1..k");
    seen[v] = true;
  }

  Int b = 0, M = 1;
  Witness w;
  w.length = k;
  for (std::size_t i = 0; i < k; ++i) {
    uint64_t q = rad.primes()[i];
    uint64_t r = (q - perm[i] % q) % q;  // b == -perm[i] (mod q)
    uint64_t bm = static_cast<uint64_t>(b % q);
    uint64_t Mm = static_cast<uint64_t>(M % q);
    uint64_t t = mulmod_u64((r + q - bm) % q, invmod_u64(Mm, q), q);
    b += M * t;
    M *= q;
    w.assignment.emplace_back(q, perm[i]);
  }
  b %= M;
  if (b == 0) b = M;  // least positive residue
  w.start = b;
  return w;
}

bool verify_witness(const Radical& rad, const Witness& w) {
  Int n = rad.product();
  for (uint64_t j = 1; j <= w.length; ++j) {
    if (boost::multiprecision::gcd(Int(w.start + j), n) == 1) return false;
  }
  return true;
}

uint64_t westzynthius_lower(const PrimeTable& table, std::size_t k) {
  if (k < 2) throw DomainError("Westzynthius lower bound needs k >= 2");
  return 2 * table.nth_prime(k - 1);
}

double asymptotic_lower_value(const PrimeTable& table, std::size_t k, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw DomainError("eps must be in (0, 1]");
  double p = static_cast<double>(table.nth_prime(k));
  double l1 = std::log(p);
  double l2 = std::log(l1);
  if (!(l2 > 0.0)) throw DomainError("loglog p_k must be positive");
  double l3 = std::log(l2);
  if (!(l3 > 0.0)) throw DomainError("logloglog p_k must be positive");
  return std::exp(MertensConstants::gamma) * (1.0 - eps) * p * l2 / l3;
}

}  // namespace jac
