#include "jacobsthal/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "jacobsthal/errors.hpp"

namespace jac {

namespace {

constexpr std::size_t kImprovementMinK = 13360;  // ceil(e^{9.5})
constexpr std::size_t kKanoldSqrtMinK = 404;     // ceil(e^6)

Int pow2_int(std::size_t e) { return Int(1) << e; }

// sum_{i=1..min(s,k)} C(k,i), exact.
Int binom_sum(std::size_t k, std::size_t s) {
  Int c = 1, sum = 0;
  std::size_t top = std::min(s, k);
  for (std::size_t i = 1; i <= top; ++i) {
    c = c * static_cast<unsigned long>(k - i + 1) / static_cast<unsigned long>(i);
    sum += c;
  }
  return sum;
}

Int binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  Int c = 1;
  for (std::size_t i = 1; i <= r; ++i)
    c = c * static_cast<unsigned long>(n - r + i) / static_cast<unsigned long>(i);
  return c;
}

Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

BoundReport applicable_report(std::string name, BoundValue v) {
  BoundReport r;
  r.name = std::move(name);
  r.applicable = true;
  r.value = std::move(v);
  return r;
}

BoundReport inapplicable_report(std::string name, std::string reason) {
  BoundReport r;
  r.name = std::move(name);
  r.applicable = false;
  r.reason = std::move(reason);
  return r;
}

// Smallest odd s with s+1 >= threshold (s+1 even follows); floored at s = 1.
std::size_t smallest_odd_s(double threshold_upper) {
  double t = std::max(2.0, threshold_upper);
  auto even = static_cast<std::size_t>(std::ceil(t));
  if (even & 1) ++even;
  while (static_cast<double>(even) < t) even += 2;  // paranoia for huge t
  return even - 1;
}

std::size_t smallest_odd_s_rat(const Rat& threshold) {
  Int c = ceil_rat(threshold);
  if (c < 2) c = 2;
  std::size_t even = c.convert_to<std::size_t>();
  if (even & 1) ++even;
  return even - 1;
}

}  // namespace

std::string fmt_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", d);
  return buf;
}

std::size_t sigma_pi_s_choice(Interval sigma_enc, double K) {
  return smallest_odd_s(imul(Interval::point(K), sigma_enc).hi);
}

std::size_t stevens_s_choice(uint64_t q_k) {
  Interval loglog = ilog(ilog(ifrom_u64(q_k)));
  Interval threshold = imul(imul(Interval::point(2.0), interval_e()),
                            iadd(loglog, Interval::point(0.5)));
  return smallest_odd_s(threshold.hi);
}

BoundValue BoundValue::from_int(Int v) {
  BoundValue b;
  if (v <= 0) throw DomainError("bound values must be positive");
  if (boost::multiprecision::msb(v) + 1 <= kExactBitLimit) {
    b.kind = Kind::Exact;
    b.exact = std::move(v);
  } else {
    b.kind = Kind::Log2;
    b.log2 = log2_int(v).hi;
  }
  return b;
}

BoundValue BoundValue::from_log2(double l2_upper) {
  BoundValue b;
  b.kind = Kind::Log2;
  b.log2 = l2_upper;
  return b;
}

BoundValue BoundValue::from_upper(double upper) {
  // ceil() of a double is exact, and cpp_int holds any finite double exactly.
  if (!(upper > 0) || !std::isfinite(upper))
    throw DomainError("bound enclosure did not produce a finite positive value");
  return from_int(Int(std::ceil(upper)));
}

BoundValue BoundValue::from_rat_ceil(const Rat& r) {
  if (r <= 0) throw DomainError("bound values must be positive");
  return from_int(ceil_rat(r));
}

Interval BoundValue::log2_enclosure() const {
  if (kind == Kind::Log2) return Interval::point(log2);
  return log2_int(exact);
}

bool BoundValue::geq_u64(uint64_t g) const {
  if (kind == Kind::Exact) return exact >= g;
  return log2 >= log2_int(Int(g)).hi;
}

std::string BoundValue::to_string() const {
  if (kind == Kind::Exact) return exact.str();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "2^{%.4f}", log2);
  return buf;
}

int compare(const BoundValue& a, const BoundValue& b) {
  if (a.kind == BoundValue::Kind::Exact && b.kind == BoundValue::Kind::Exact) {
    if (a.exact < b.exact) return -1;
    if (a.exact > b.exact) return 1;
    return 0;
  }
  Interval la = a.log2_enclosure(), lb = b.log2_enclosure();
  if (la.hi < lb.lo) return -1;
  if (la.lo > lb.hi) return 1;
  return 0;
}

BoundReport bound_jacobsthal_original(std::size_t k) {
  if (k < 1) throw DomainError("jacobsthal_original needs k >= 1");
  if (k > 100000) {
    Interval l2 = iadd(ifrom_u64(k), ilog2(ifrom_u64(k + 1)));
    return applicable_report("jacobsthal_original", BoundValue::from_log2(l2.hi));
  }
  Int v = Int(k) * pow2_int(k) + pow2_int(k) - k;
  return applicable_report("jacobsthal_original", BoundValue::from_int(v));
}

BoundReport bound_jacobsthal_L(std::size_t k) {
  if (k < 1) throw DomainError("jacobsthal_L needs k >= 1");
  BoundReport r;
  if (k > 100000) {
    Interval l2 = iadd(ifrom_u64(k), ilog2(ifrom_u64(k + 1)));
    r = applicable_report("jacobsthal_L", BoundValue::from_log2(l2.hi));
  } else {
    Int v = Int(k + 1) * (pow2_int(k) - 1);
    r = applicable_report("jacobsthal_L", BoundValue::from_int(v));
  }
  r.target = "L";
  return r;
}

BoundReport bound_kanold_2k(std::size_t k) {
  if (k < 1) throw DomainError("kanold_2k needs k >= 1");
  BoundValue v = (k < BoundValue::kExactBitLimit)
                     ? BoundValue::from_int(pow2_int(k))
                     : BoundValue::from_log2(static_cast<double>(k));
  return applicable_report("kanold_2k", v);
}

BoundReport bound_kanold_sqrt(std::size_t k) {
  if (k < 1) throw DomainError("kanold_sqrt needs k >= 1");
  auto value = [&]() -> BoundValue {
    auto root = static_cast<uint64_t>(std::sqrt(static_cast<double>(k)));
    while (root * root > k) --root;
    while ((root + 1) * (root + 1) <= k) ++root;
    if (root * root == k) {
      return (root < BoundValue::kExactBitLimit)
                 ? BoundValue::from_int(pow2_int(root))
                 : BoundValue::from_log2(static_cast<double>(root));
    }
    return BoundValue::from_log2(isqrt(ifrom_u64(k)).hi);
  };
  if (k >= kKanoldSqrtMinK) {
    BoundReport r = applicable_report("kanold_sqrt", value());
    r.params["validity"] = "k >= e^50 in the original; k > e^6 per the stronger claim";
    return r;
  }
  BoundReport r = inapplicable_report("kanold_sqrt", "k below e^6 validity threshold");
  r.params["advisory"] = value().to_string();
  return r;
}

BoundReport bound_stevens_published(std::size_t k) {
  if (k < 2) throw DomainError("stevens_published needs k >= 2");
  Interval lnk = ilog(ifrom_u64(k));
  Interval l2k = ilog2(ifrom_u64(k));
  Interval expo = iadd(Interval::point(2.0), imul(imul(Interval::point(2.0), interval_e()), lnk));
  Interval l2 = iadd(Interval::point(1.0), imul(expo, l2k));
  BoundReport r = applicable_report("stevens_published", BoundValue::from_log2(l2.hi));
  r.params["log_convention"] = "natural (both occurrences)";
  return r;
}

BoundReport bound_loglog_closed(std::size_t k) {
  if (k <= 2) throw DomainError("loglog_closed needs k > 2");
  Interval lnk = ilog(ifrom_u64(k));
  Interval expo = iadd(Interval::point(3.0), imul(Interval::point(3.81), ilog(lnk)));
  Interval l2 = imul(expo, ilog2(ifrom_u64(k)));
  return applicable_report("loglog_closed", BoundValue::from_log2(l2.hi));
}

BoundReport bound_westzynthius_sieve(const Radical& rad) {
  std::size_t k = rad.k();
  CertifiedReal pii = pi_inv(rad);
  if (rad.k() <= Radical::kExactFactorLimit && pii.exact) {
    Rat v = Rat(pow2_int(k)) / *pii.exact;
    return applicable_report("westzynthius_sieve", BoundValue::from_rat_ceil(v));
  }
  Interval l2 = isub(ifrom_u64(k), ilog2(pii.enc));
  return applicable_report("westzynthius_sieve", BoundValue::from_log2(l2.hi));
}

BoundReport bound_kanold_p(const Radical& rad, std::optional<double> r_opt) {
  std::size_t k = rad.k();
  CertifiedReal sig = sigma_inv(rad);
  if (r_opt && (!(*r_opt > 0.0) || !(*r_opt < 1.0)))
    throw DomainError("kanold_p requires r in (0,1)");

  if (sig.exact) {
    const Rat& s = *sig.exact;
    if (s >= 1) return inapplicable_report("kanold_p", "sigma^{-1} >= 1");
    BoundReport rep;
    if (r_opt) {
      Rat r = rat_from_double(*r_opt);
      if (r + s >= 1)
        return inapplicable_report("kanold_p", "r + sigma^{-1} >= 1");
      rep = applicable_report("kanold_p", BoundValue::from_rat_ceil(Rat(k) / r));
      rep.params["r"] = fmt_double(*r_opt);
      rep.params["r_mode"] = "given";
    } else {
      Rat r = 1 - s;
      rep = applicable_report("kanold_p", BoundValue::from_rat_ceil(Rat(k) / r));
      rep.params["r"] = fmt_double(to_interval(r).lo);
      rep.params["r_mode"] = "limit 1 - sigma^{-1}";
    }
    return rep;
  }

  // Enclosure-only path: test on the adverse (upper) end of sigma.
  double r = r_opt ? *r_opt : step_down(step_down(1.0 - sig.enc.hi));
  if (!(r > 0.0) || !(step_up(r + sig.enc.hi) < 1.0))
    return inapplicable_report("kanold_p", r_opt ? "r + sigma^{-1} >= 1" : "sigma^{-1} >= 1");
  Interval v = idiv(ifrom_u64(k), Interval::point(r));
  BoundReport rep = applicable_report("kanold_p", BoundValue::from_upper(v.hi));
  rep.params["r"] = fmt_double(r);
  rep.params["r_mode"] = r_opt ? "given" : "1 - sigma_hi - ulp";
  return rep;
}

BoundReport bound_variation(const Radical& rad) {
  std::size_t k = rad.k();
  if (k <= 1) throw DomainError("variation needs k > 1");
  uint64_t q1 = rad.smallest();
  CertifiedReal sig = sigma_inv(rad);

  // Precondition sigma^{-1} < 1 + 1/(2 q1), tested on the adverse end.
  bool ok;
  if (sig.exact) {
    ok = *sig.exact < 1 + Rat(1, 2 * Int(q1));
  } else {
    Interval thr = iadd(Interval::point(1.0),
                        idiv(Interval::point(1.0), ifrom_u64(2 * q1)));
    ok = sig.enc.hi < thr.lo;
  }
  if (!ok) return inapplicable_report("variation", "sigma^{-1} >= 1 + 1/(2 q1)");

  // g-form 4 k q1^2/(q1-1) carries no sigma and stays exact.
  Rat gbound = Rat(Int(4) * k * q1 * q1, Int(q1 - 1));
  BoundReport rep = applicable_report("variation", BoundValue::from_rat_ceil(gbound));
  rep.params["q1"] = std::to_string(q1);

  // L-form 2 q1 (2k - 1 - sigma) q1/(q1-1), rounded up via sigma's lower end.
  if (sig.exact) {
    Rat lb = Rat(2 * Int(q1) * q1, Int(q1 - 1)) * (Rat(2 * Int(k)) - 1 - *sig.exact);
    rep.params["L_bound"] = fmt_double(to_interval(lb).hi);
  } else {
    Interval factor = idiv(ifrom_u64(2 * q1 * q1), ifrom_u64(q1 - 1));
    Interval lb = imul(factor, isub(Interval::point(2.0 * double(k) - 1.0), sig.enc));
    rep.params["L_bound"] = fmt_double(lb.hi);
  }
  return rep;
}

BoundReport bound_observation(const Radical& rad, std::size_t split_m, uint64_t scan_budget) {
  std::size_t k = rad.k();
  if (split_m < 1 || split_m >= k)
    throw DomainError("observation split must satisfy 1 <= split_m < k");
  const auto& qs = rad.primes();
  Radical f_rad = Radical::from_primes({qs.begin(), qs.begin() + static_cast<long>(split_m)});
  Radical d_rad = Radical::from_primes({qs.begin() + static_cast<long>(split_m), qs.end()});

  auto sub_value = [&](const Radical& part, const char* tag, BoundReport& rep) -> BoundValue {
    std::optional<uint64_t> p = part.product_u64();
    if (p && *p <= scan_budget && *p <= 100'000'000ull) {
      rep.params[std::string(tag) + "_source"] = "exact";
      return BoundValue::from_int(Int(g_exact(part, scan_budget).g));
    }
    rep.params[std::string(tag) + "_source"] = "best_bound";
    BoundReport b = best_bound(part, scan_budget);
    return *b.value;
  };

  BoundReport rep;
  rep.name = "observation";
  rep.applicable = true;
  BoundValue gd = sub_value(d_rad, "g_d", rep);
  BoundValue gf = sub_value(f_rad, "g_f", rep);
  Int f = f_rad.product();
  rep.params["split_m"] = std::to_string(split_m);
  rep.params["f"] = f.str();

  if (gd.kind == BoundValue::Kind::Exact && gf.kind == BoundValue::Kind::Exact) {
    rep.value = BoundValue::from_int(gd.exact * f - f + gf.exact);
    return rep;
  }
  // g(f) <= f for f >= 2, so g(d) f - f + g(f) <= g(d) f.
  Interval l2 = iadd(gd.log2_enclosure(), log2_int(f));
  rep.value = BoundValue::from_log2(l2.hi);
  return rep;
}

BoundReport bound_improvement(const Radical& rad) {
  std::size_t k = rad.k();
  TailSplit split = find_l(rad);
  uint64_t ql = split.q_l;

  Interval term1 = imul(Interval::point(1.5), ipow(ifrom_u64(k), Interval::point(0.45)));
  Int poly_num = Int(4) * (k - split.l + 1) * ql * ql;
  Interval poly = idiv(ifrom_int(poly_num), ifrom_u64(ql - 1));
  Interval l2 = iadd(term1, ilog2(poly));

  if (k >= kImprovementMinK) {
    BoundReport rep = applicable_report("improvement", BoundValue::from_log2(l2.hi));
    rep.params["l"] = std::to_string(split.l);
    rep.params["q_l"] = std::to_string(ql);
    return rep;
  }
  BoundReport rep = inapplicable_report("improvement", "k below e^{9.5}; advisory value only");
  rep.params["l"] = std::to_string(split.l);
  rep.params["q_l"] = std::to_string(ql);
  rep.params["advisory_log2"] = fmt_double(l2.hi);
  return rep;
}

BoundReport bound_stevens_refined(const Radical& rad) {
  std::size_t k = rad.k();
  if (k <= 4) throw DomainError("stevens_refined needs k > 4");
  uint64_t qk = rad.largest();

  Interval loglog = ilog(ilog(ifrom_u64(qk)));
  std::size_t s = stevens_s_choice(qk);
  Int sb = binom_sum(k, s);
  Interval fourlog = imul(Interval::point(4.0), ilog(ifrom_u64(qk)));

  BoundValue value;
  Interval l2 = iadd(ilog2(fourlog), log2_int(sb));
  if (l2.hi < 250.0) {
    Interval v = imul(fourlog, ifrom_int(sb));
    value = BoundValue::from_upper(v.hi);
  } else {
    value = BoundValue::from_log2(l2.hi);
  }

  BoundReport rep = applicable_report("stevens_refined", std::move(value));
  rep.params["s"] = std::to_string(s);
  rep.params["pk"] = std::to_string(qk);
  rep.params["pk_note"] = "largest factor q_k used for p_k (conservative)";
  Interval closed = iadd(ilog2(fourlog),
                         imul(iadd(Interval::point(1.0),
                                   imul(imul(Interval::point(2.0), interval_e()),
                                        iadd(Interval::point(0.5), loglog))),
                              ilog2(ifrom_u64(k))));
  rep.params["closed_form_log2"] = fmt_double(closed.hi);
  return rep;
}

BoundReport bound_sigma_pi(const Radical& rad, double K) {
  std::size_t k = rad.k();
  if (k <= 2) throw DomainError("sigma_pi needs k > 2");
  CertifiedReal sig = sigma_inv(rad);
  CertifiedReal pii = pi_inv(rad);

  if (K < 3.9) {
    bool sigma_above_one =
        sig.exact ? (*sig.exact > 1) : (sig.enc.lo > 1.0);
    if (!(K >= 3.81 && sigma_above_one))
      throw DomainError("sigma_pi requires K >= 3.9, or K >= 3.81 with sigma^{-1} > 1");
  }

  std::size_t s;
  if (sig.exact) {
    s = smallest_odd_s_rat(rat_from_double(K) * *sig.exact);
  } else {
    s = sigma_pi_s_choice(sig.enc, K);
  }
  if (s + 1 > 64) throw CapacityError("sigma_pi: s grew past the supported range");

  Int sb = binom_sum(k, s);
  BoundReport rep;
  rep.name = "sigma_pi";
  rep.params["s"] = std::to_string(s);
  rep.params["K"] = fmt_double(K);

  if (sig.exact && pii.exact) {
    Rat sp = 1;
    for (std::size_t i = 0; i < s + 1; ++i) sp *= *sig.exact;
    Rat denom = *pii.exact - sp / Rat(factorial(s + 1));
    if (denom <= 0) {
      rep.applicable = false;
      rep.reason = "denominator not positive (numeric regression)";
      return rep;
    }
    rep.applicable = true;
    rep.value = BoundValue::from_rat_ceil(Rat(sb) / denom);
    rep.params["denominator"] = fmt_double(to_interval(denom).lo);
    return rep;
  }

  Interval sp = ipow_int(sig.enc, s + 1);
  Interval denom = isub(pii.enc, idiv(sp, ifrom_int(factorial(s + 1))));
  if (!(denom.lo > 0.0)) {
    rep.applicable = false;
    rep.reason = "denominator enclosure not strictly positive (numeric regression)";
    return rep;
  }
  Interval v = idiv(ifrom_int(sb), denom);
  rep.applicable = true;
  rep.value = (ilog2(v).hi < 250.0) ? BoundValue::from_upper(v.hi)
                                    : BoundValue::from_log2(ilog2(v).hi);
  rep.params["denominator"] = fmt_double(denom.lo);
  return rep;
}

BoundReport bound_sigma_pi_corollary(const Radical& rad) {
  std::size_t k = rad.k();
  if (k <= 2) throw DomainError("sigma_pi_corollary needs k > 2");
  CertifiedReal sig = sigma_inv(rad);

  std::size_t s;
  if (sig.exact) {
    s = smallest_odd_s_rat(4 * *sig.exact);
  } else {
    s = smallest_odd_s(imul(Interval::point(4.0), sig.enc).hi);
  }
  if (s + 1 > 64) throw CapacityError("sigma_pi_corollary: s grew past the supported range");

  Int num = 0;
  for (std::size_t j = 0; 2 * j < s; ++j) num += binomial(k + 1, s - 2 * j);
  num *= factorial(s + 1);

  Interval two_pi = imul(Interval::point(2.0),
                         Interval{step_down(std::numbers::pi), step_up(std::numbers::pi)});
  Interval root = isqrt(imul(two_pi, ifrom_u64(s + 1)));
  Interval sp = sig.exact ? to_interval([&] {
    Rat p = 1;
    for (std::size_t i = 0; i < s + 1; ++i) p *= *sig.exact;
    return p;
  }())
                          : ipow_int(sig.enc, s + 1);
  Interval denom = imul(isub(root, Interval::point(1.0)), sp);
  if (!(denom.lo > 0.0))
    return inapplicable_report("sigma_pi_corollary", "denominator enclosure not positive");

  Interval v = idiv(ifrom_int(num), denom);
  BoundReport rep = applicable_report(
      "sigma_pi_corollary", (ilog2(v).hi < 250.0) ? BoundValue::from_upper(v.hi)
                                                  : BoundValue::from_log2(ilog2(v).hi));
  rep.params["s"] = std::to_string(s);
  return rep;
}

BoundReport bound_addendum(const Radical& rad, std::optional<std::size_t> m_opt) {
  std::size_t k = rad.k();
  if (k < 2) return inapplicable_report("addendum", "needs k >= 2 for a proper divisor");
  if (m_opt && (*m_opt < 1 || *m_opt >= k))
    throw DomainError("addendum requires 1 <= m < k");
  const auto& qs = rad.primes();

  // Prefix pi over d and suffix sigma over n/d, one pass each so the m
  // search stays linear.
  const bool exact_lane = k <= Radical::kExactFactorLimit;
  std::vector<Interval> pi_pre(k + 1, Interval::point(1.0));
  std::vector<Interval> sig_suf(k + 1, Interval::point(0.0));
  std::vector<Rat> pi_pre_x, sig_suf_x;
  for (std::size_t i = 0; i < k; ++i)
    pi_pre[i + 1] = imul(pi_pre[i], isub(Interval::point(1.0), irecip_u64(qs[i])));
  for (std::size_t i = k; i-- > 0;)
    sig_suf[i] = iadd(sig_suf[i + 1], irecip_u64(qs[i]));
  if (exact_lane) {
    pi_pre_x.assign(k + 1, Rat(1));
    sig_suf_x.assign(k + 1, Rat(0));
    for (std::size_t i = 0; i < k; ++i)
      pi_pre_x[i + 1] = pi_pre_x[i] * Rat(qs[i] - 1, qs[i]);
    for (std::size_t i = k; i-- > 0;) sig_suf_x[i] = sig_suf_x[i + 1] + Rat(1, qs[i]);
  }

  struct Candidate {
    std::size_t m;
    BoundValue value;
    std::string t_str, pid_str;
  };
  std::optional<Candidate> best;

  auto consider = [&](std::size_t m) {
    CertifiedReal pid, snd;
    pid.enc = pi_pre[m];
    snd.enc = sig_suf[m];
    if (exact_lane) {
      pid.exact = pi_pre_x[m];
      snd.exact = sig_suf_x[m];
    }
    // t = 1 - sigma^{-1}(n/d) must be certifiably positive.
    if (snd.exact) {
      if (*snd.exact >= 1) return;
    } else if (!(snd.enc.hi < 1.0)) {
      return;
    }

    BoundValue value;
    double t_lo;
    if (pid.exact && snd.exact) {
      Rat t = 1 - *snd.exact;
      Rat v = Rat(k - m + 1) * (Rat(pow2_int(m)) + *pid.exact) / (*pid.exact * t);
      value = BoundValue::from_rat_ceil(v);
      t_lo = to_interval(t).lo;
    } else {
      Interval t = isub(Interval::point(1.0), snd.enc);
      Interval pow_term = (m <= 1023)
                              ? iadd(Interval::point(std::ldexp(1.0, static_cast<int>(m))), pid.enc)
                              : Interval{0.0, 0.0};
      Interval l2;
      if (m <= 1023) {
        l2 = iadd(ilog2(ifrom_u64(k - m + 1)), ilog2(pow_term));
      } else {
        l2 = iadd(ilog2(ifrom_u64(k - m + 1)),
                  Interval{static_cast<double>(m), step_up(static_cast<double>(m))});
      }
      l2 = isub(l2, iadd(ilog2(pid.enc), ilog2(t)));
      value = (l2.hi < 250.0)
                  ? BoundValue::from_upper(iexp(imul(l2, ilog(Interval::point(2.0)))).hi)
                  : BoundValue::from_log2(l2.hi);
      t_lo = t.lo;
    }
    Candidate c{m, std::move(value), fmt_double(t_lo), fmt_double(pid.enc.lo)};
    if (!best || compare(c.value, best->value) < 0) best = std::move(c);
  };

  if (m_opt) {
    consider(*m_opt);
    if (!best)
      return inapplicable_report("addendum",
                                 "t = 1 - sigma^{-1}(n/d) not positive for m = " +
                                     std::to_string(*m_opt));
  } else {
    for (std::size_t m = 1; m < k; ++m) consider(m);
    if (!best) return inapplicable_report("addendum", "no m with t > 0");
  }

  BoundReport rep = applicable_report("addendum", best->value);
  rep.params["m"] = std::to_string(best->m);
  rep.params["t"] = best->t_str;
  rep.params["pi_inv_d"] = best->pid_str;
  return rep;
}

namespace {

// The suite evaluated for best_bound; observation is excluded because it is
// parameterized and already delegates to best_bound for its pieces.
std::vector<BoundReport> evaluate_suite(const Radical& rad, uint64_t scan_budget,
                                        bool include_exact) {
  std::vector<BoundReport> out;
  std::size_t k = rad.k();
  auto guard = [&](auto&& fn, const std::string& name) {
    try {
      out.push_back(fn());
    } catch (const DomainError& e) {
      out.push_back(inapplicable_report(name, e.what()));
    }
  };
  guard([&] { return bound_jacobsthal_original(k); }, "jacobsthal_original");
  guard([&] { return bound_jacobsthal_L(k); }, "jacobsthal_L");
  guard([&] { return bound_kanold_2k(k); }, "kanold_2k");
  guard([&] { return bound_kanold_sqrt(k); }, "kanold_sqrt");
  guard([&] { return bound_stevens_published(k); }, "stevens_published");
  guard([&] { return bound_loglog_closed(k); }, "loglog_closed");
  guard([&] { return bound_westzynthius_sieve(rad); }, "westzynthius_sieve");
  guard([&] { return bound_kanold_p(rad); }, "kanold_p");
  guard([&] { return bound_variation(rad); }, "variation");
  guard([&] { return bound_improvement(rad); }, "improvement");
  guard([&] { return bound_stevens_refined(rad); }, "stevens_refined");
  guard([&] { return bound_sigma_pi(rad); }, "sigma_pi");
  guard([&] { return bound_sigma_pi_corollary(rad); }, "sigma_pi_corollary");
  guard([&] { return bound_addendum(rad); }, "addendum");
  if (include_exact) {
    std::optional<uint64_t> n = rad.product_u64();
    if (n && *n <= scan_budget) {
      BoundReport ex;
      ex.name = "exact";
      ex.applicable = true;
      ex.value = BoundValue::from_int(Int(g_exact(rad, scan_budget).g));
      out.push_back(std::move(ex));
    } else {
      out.push_back(inapplicable_report("exact", "n exceeds the scan budget"));
    }
  }
  return out;
}

}  // namespace

namespace {

BoundReport pick_best(const std::vector<BoundReport>& suite) {
  const BoundReport* winner = nullptr;
  for (const BoundReport& r : suite) {
    if (!r.applicable || r.target != "g") continue;
    if (winner == nullptr) {
      winner = &r;
      continue;
    }
    int c = compare(*r.value, *winner->value);
    if (c < 0 || (c == 0 && r.name < winner->name)) winner = &r;
  }
  if (winner == nullptr) throw DomainError("no applicable bound");  // cannot happen: kanold_2k
  BoundReport rep = applicable_report("best_bound", *winner->value);
  rep.params["winner"] = winner->name;
  return rep;
}

}  // namespace

BoundReport best_bound(const Radical& rad, uint64_t scan_budget) {
  return pick_best(evaluate_suite(rad, scan_budget, true));
}

std::vector<BoundReport> bound_suite(const Radical& rad, uint64_t scan_budget) {
  std::vector<BoundReport> out = evaluate_suite(rad, scan_budget, true);
  BoundReport best = pick_best(out);  // before the observation row joins
  if (rad.k() > 1) {
    try {
      out.push_back(bound_observation(rad, 1, scan_budget));
    } catch (const DomainError& e) {
      out.push_back(inapplicable_report("observation", e.what()));
    }
  } else {
    out.push_back(inapplicable_report("observation", "needs k > 1 for a coprime split"));
  }
  out.push_back(std::move(best));
  return out;
}

const std::vector<std::string>& bound_suite_names() {
  static const std::vector<std::string> names = {
      "jacobsthal_original", "jacobsthal_L",    "kanold_2k",       "kanold_sqrt",
      "stevens_published",   "loglog_closed",   "westzynthius_sieve", "kanold_p",
      "variation",           "improvement",     "stevens_refined", "sigma_pi",
      "sigma_pi_corollary",  "addendum",        "exact",           "observation",
      "best_bound"};
  return names;
}

}  // namespace jac
