#include "jacobsthal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "jacobsthal/errors.hpp"
#include "jacobsthal/scan.hpp"

namespace jac {

namespace {

Interval one_minus_half_recip(uint64_t p) {
  return isub(Interval::point(1.0), idiv(Interval::point(1.0), ifrom_u64(2 * p)));
}

// u^9 > p^20 decides u > p^{20/9} exactly.
bool exceeds_power_20_9(uint64_t u, uint64_t p) {
  Int lhs = 1, rhs = 1;
  for (int i = 0; i < 9; ++i) lhs *= u;
  for (int i = 0; i < 20; ++i) rhs *= p;
  return lhs > rhs;
}

}  // namespace

SpecialSumResult special_sum_u(const PrimeTable& table, std::size_t m) {
  if (m < 1 || m >= table.count()) throw CapacityError("special_sum_u: m outside table");
  uint64_t p_m = table.nth_prime(m);
  Interval thr = one_minus_half_recip(p_m);

  auto passes = [&](uint64_t u) { return table.recip_sum(m, u).lo > thr.hi; };

  uint64_t hi = table.count() - m;
  if (!passes(hi))
    throw CapacityError("special_sum_u: table too small to reach the threshold for m = " +
                        std::to_string(m));
  uint64_t lo = 1;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (passes(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  SpecialSumResult res;
  res.m = m;
  res.p_m = p_m;
  res.u = lo;
  res.ratio = std::log(static_cast<double>(lo)) / std::log(static_cast<double>(p_m));
  return res;
}

bool verify_lemma_logp(const PrimeTable& table, std::size_t m, uint64_t u) {
  if (u <= m) throw DomainError("lemma requires u > m");
  Interval lhs = ilog(ifrom_u64(table.nth_prime(m + u)));
  Interval lnu = ilog(ifrom_u64(u));
  Interval loglogu = ilog(lnu);
  Interval m_over_u = idiv(ifrom_u64(m), ifrom_u64(u));
  Interval rhs = iadd(lnu, imul(iadd(loglogu, m_over_u),
                                iadd(Interval::point(1.0),
                                     idiv(Interval::point(1.0), lnu))));
  rhs = iadd(rhs, idiv(ifrom_u64(m), imul(ifrom_u64(u), imul(lnu, lnu))));
  return certainly_less(lhs, rhs) == Cmp3::True;
}

bool verify_lemma_ratio(const PrimeTable& table, std::size_t m) {
  SpecialSumResult s = special_sum_u(table, m);
  uint64_t p_mu = table.nth_prime(m + s.u);
  if (p_mu <= 286) throw DomainError("lemma requires p_{m+u} > 286");
  Interval lhs = ilog(idiv(ilog(ifrom_u64(p_mu)), ilog(ifrom_u64(s.p_m))));
  Interval lmu = ilog(ifrom_u64(p_mu));
  Interval rhs = one_minus_half_recip(s.p_m);
  rhs = isub(rhs, Interval{step_down(0.00148), step_up(0.00148)});
  rhs = isub(rhs, idiv(Interval::point(0.5), imul(lmu, lmu)));
  return certainly_less(rhs, lhs) == Cmp3::True;
}

std::vector<SpecialSumResult> verify_u_threshold(const PrimeTable& table, std::size_t m_lo,
                                                 std::size_t m_hi, bool* all_pass) {
  std::vector<SpecialSumResult> out;
  bool pass = true;
  for (std::size_t m = m_lo; m <= m_hi; ++m) {
    SpecialSumResult r = special_sum_u(table, m);
    if (!exceeds_power_20_9(r.u, r.p_m)) pass = false;
    out.push_back(r);
  }
  if (all_pass != nullptr) *all_pass = pass;
  return out;
}

bool closure_check_1102() {
  Int lhs = 1, rhs = 1;
  for (int i = 0; i < 20; ++i) lhs *= 1102;
  for (int i = 0; i < 9; ++i) rhs *= 5761308;
  return lhs < rhs;
}

bool verify_sigma_upper(const PrimeTable& table, uint64_t limit) {
  if (limit > table.limit()) throw CapacityError("sigma sweep limit beyond table");
  Interval sigma = Interval::point(0.0);
  for (uint64_t p : table.primes()) {
    if (p >= limit) break;
    sigma = iadd(sigma, irecip_u64(p));
    if (p <= 7) continue;  // the claim's range is 7 < p_k
    Interval bound = iadd(Interval{step_down(0.41), step_up(0.41)},
                          ilog(ilog(ifrom_u64(p))));
    if (!(sigma.hi < bound.lo)) return false;
  }
  return true;
}

bool verify_pi_lower(const PrimeTable& table, uint64_t limit) {
  if (limit > table.limit()) throw CapacityError("pi sweep limit beyond table");
  Interval pi = Interval::point(1.0);
  for (uint64_t p : table.primes()) {
    if (p >= limit) break;
    pi = imul(pi, isub(Interval::point(1.0), irecip_u64(p)));
    Interval bound = idiv(Interval::point(1.0),
                          imul(Interval::point(3.0), ilog(ifrom_u64(p))));
    if (!(pi.lo > bound.hi)) return false;
  }
  return true;
}

bool verify_q_l_bound(const PrimeTable& table, const std::vector<std::size_t>& k_samples,
                      std::vector<QlSample>* details) {
  bool all = true;
  for (std::size_t k : k_samples) {
    if (k < 13360) throw DomainError("q_l bound samples need k >= ceil(e^{9.5})");
    TailSplit split = find_l_primorial(table, k);
    QlSample s;
    s.k = k;
    s.l = split.l;
    s.q_l = split.q_l;
    s.q_l_minus_1 = (split.l >= 2) ? table.nth_prime(split.l - 1) : 1;
    // q_{l-1} < k^{0.45}  <=>  q_{l-1}^20 < k^9, exactly.
    Int lhs = 1, rhs = 1;
    for (int i = 0; i < 20; ++i) lhs *= s.q_l_minus_1;
    for (int i = 0; i < 9; ++i) rhs *= k;
    s.pass = lhs < rhs;
    if (!s.pass) all = false;
    if (details != nullptr) details->push_back(s);
  }
  return all;
}

Interval crossover_value(const std::string& name, std::size_t k, const PrimeTable* table) {
  if (name == "kanold_2k") return Interval::point(static_cast<double>(k));
  if (name == "kanold_sqrt") return isqrt(ifrom_u64(k));
  if (name == "stevens_published") {
    Interval lnk = ilog(ifrom_u64(k));
    Interval expo = iadd(Interval::point(2.0),
                         imul(imul(Interval::point(2.0), interval_e()), lnk));
    return iadd(Interval::point(1.0), imul(expo, ilog2(ifrom_u64(k))));
  }
  if (name == "loglog_closed") {
    Interval expo = iadd(Interval::point(3.0),
                         imul(Interval::point(3.81), ilog(ilog(ifrom_u64(k)))));
    return imul(expo, ilog2(ifrom_u64(k)));
  }
  if (name == "jacobsthal_original") {
    // k 2^k < value < (k+1) 2^k
    double lo = iadd(ifrom_u64(k), ilog2(ifrom_u64(k))).lo;
    double hi = iadd(ifrom_u64(k), ilog2(ifrom_u64(k + 1))).hi;
    return {lo, hi};
  }
  if (name == "improvement") {
    if (table == nullptr) throw DomainError("improvement crossover needs a prime table");
    TailSplit split = find_l_primorial(*table, k);
    Interval term1 = imul(Interval::point(1.5), ipow(ifrom_u64(k), Interval::point(0.45)));
    Int poly_num = Int(4) * (k - split.l + 1) * split.q_l * split.q_l;
    Interval poly = idiv(ifrom_int(poly_num), ifrom_u64(split.q_l - 1));
    return iadd(term1, ilog2(poly));
  }
  if (name == "stevens_refined") {
    if (table == nullptr) throw DomainError("stevens_refined crossover needs a prime table");
    uint64_t pk = table->nth_prime(k);
    std::size_t s = stevens_s_choice(pk);
    Int c = 1, sb = 0;
    for (std::size_t i = 1; i <= std::min(s, k); ++i) {
      c = c * static_cast<unsigned long>(k - i + 1) / static_cast<unsigned long>(i);
      sb += c;
    }
    return iadd(ilog2(imul(Interval::point(4.0), ilog(ifrom_u64(pk)))), log2_int(sb));
  }
  throw DomainError("unknown crossover bound: " + name);
}

namespace {

// a < b in log2 with three ulps of slack on the adverse side.
bool dominates(const std::string& a, const std::string& b, std::size_t k,
               const PrimeTable* table) {
  Interval va = crossover_value(a, k, table);
  Interval vb = crossover_value(b, k, table);
  double a_hi = step_up(step_up(step_up(va.hi)));
  double b_lo = step_down(step_down(step_down(vb.lo)));
  return a_hi < b_lo;
}

}  // namespace

CrossoverResult crossover(const std::string& bound_a, const std::string& bound_b,
                          std::size_t k_lo, std::size_t k_hi, std::size_t step,
                          const PrimeTable* table) {
  if (step == 0 || k_lo > k_hi) throw DomainError("bad crossover range");
  CrossoverResult res;
  res.bound_a = bound_a;
  res.bound_b = bound_b;
  res.range_lo = k_lo;
  res.range_hi = k_hi;

  std::vector<std::size_t> grid;
  for (std::size_t k = k_lo; k <= k_hi; k += step) grid.push_back(k);
  if (grid.back() != k_hi) grid.push_back(k_hi);

  // Scan backwards for the first grid point after which dominance is stable
  // through the end of the range.
  std::size_t first_stable = grid.size();
  for (std::size_t i = grid.size(); i-- > 0;) {
    if (dominates(bound_a, bound_b, grid[i], table)) {
      first_stable = i;
    } else {
      break;
    }
  }
  if (first_stable < grid.size()) {
    res.found = true;
    res.k_star = grid[first_stable];
  }
  return res;
}

std::vector<TableRow> bound_table(const std::vector<Radical>& inputs,
                                  const std::vector<std::string>& which,
                                  uint64_t scan_budget) {
  std::vector<TableRow> rows;
  for (const Radical& rad : inputs) {
    std::vector<BoundReport> suite = bound_suite(rad, scan_budget);
    for (BoundReport& rep : suite) {
      if (!which.empty() &&
          std::find(which.begin(), which.end(), rep.name) == which.end())
        continue;
      rows.push_back({rad.to_string(), std::move(rep)});
    }
  }
  return rows;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string params_json_string(const std::map<std::string, std::string>& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j[k] = v;  // std::map iterates sorted
  return j.dump();
}

nlohmann::ordered_json report_to_json(const BoundReport& rep) {
  nlohmann::ordered_json j;
  j["name"] = rep.name;
  j["applicable"] = rep.applicable;
  j["reason"] = rep.reason;
  if (rep.value) {
    nlohmann::ordered_json v;
    if (rep.value->kind == BoundValue::Kind::Exact) {
      v["kind"] = "exact";
      v["value"] = rep.value->exact.str();
    } else {
      v["kind"] = "log2";
      v["log2"] = rep.value->log2;
    }
    j["value"] = v;
  } else {
    j["value"] = nullptr;
  }
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.params) p[k] = v;
  j["params"] = p;
  j["target"] = rep.target;
  return j;
}

}  // namespace

std::string report_to_json_string(const BoundReport& report) {
  return report_to_json(report).dump();
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "input,name,applicable,reason,value_kind,value,params_json\n";
  for (const TableRow& row : rows) {
    const BoundReport& r = row.report;
    std::string kind, value;
    if (r.value) {
      kind = (r.value->kind == BoundValue::Kind::Exact) ? "exact" : "log2";
      value = (r.value->kind == BoundValue::Kind::Exact) ? r.value->exact.str()
                                                         : fmt_double(r.value->log2);
    }
    out << csv_escape(row.input) << ',' << csv_escape(r.name) << ','
        << (r.applicable ? "true" : "false") << ',' << csv_escape(r.reason) << ',' << kind
        << ',' << value << ',' << csv_escape(params_json_string(r.params)) << '\n';
  }
  return out.str();
}

std::string table_to_json(const std::vector<TableRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const TableRow& row : rows) {
    nlohmann::ordered_json j = report_to_json(row.report);
    j["input"] = row.input;
    arr.push_back(j);
  }
  return arr.dump(2);
}

namespace {

std::vector<uint32_t> smallest_prime_factors(uint64_t limit) {
  std::vector<uint32_t> spf(limit + 1, 0);
  std::vector<uint32_t> primes;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<uint32_t>(i);
      primes.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : primes) {
      if (p > spf[i] || i * p > limit) break;
      spf[i * p] = p;
    }
  }
  return spf;
}

}  // namespace

SweepOutcome soundness_sweep(uint64_t limit) {
  SweepOutcome out;
  std::vector<uint32_t> spf = smallest_prime_factors(limit);
  std::vector<uint32_t> gmemo(limit + 1, 0);

  std::vector<uint64_t> primes;
  for (uint64_t n = 2; n <= limit; ++n) {
    primes.clear();
    uint64_t rest = n;
    bool squarefree = true;
    while (rest > 1) {
      uint32_t p = spf[rest];
      rest /= p;
      if (rest % p == 0) {
        squarefree = false;
        break;
      }
      primes.push_back(p);
    }
    if (!squarefree) continue;
    std::sort(primes.begin(), primes.end());
    ++out.squarefree_count;

    uint64_t L = scan_longest_run(primes, n);
    uint64_t g = L + 1;
    gmemo[n] = static_cast<uint32_t>(g);
    std::size_t k = primes.size();

    if (primes[0] > k && L != k) {
      out.q1k_law_ok = false;
      if (out.first_violation.empty())
        out.first_violation = "q1>k law at n=" + std::to_string(n);
    }

    Radical rad = Radical::from_sorted_primes_unchecked(primes);
    auto check = [&](const BoundReport& rep, uint64_t target) {
      if (!rep.applicable) return;
      ++out.bound_checks;
      if (!rep.value->geq_u64(target)) {
        ++out.violations;
        if (out.first_violation.empty())
          out.first_violation = rep.name + " at n=" + std::to_string(n) + " (" +
                                rep.value->to_string() + " < " + std::to_string(target) + ")";
      }
    };

    check(bound_jacobsthal_original(k), g);
    check(bound_jacobsthal_L(k), L);
    check(bound_kanold_2k(k), g);
    check(bound_westzynthius_sieve(rad), g);
    check(bound_kanold_p(rad), g);
    if (k >= 2) {
      check(bound_stevens_published(k), g);
      check(bound_variation(rad), g);
      check(bound_addendum(rad), g);
    }
    if (k >= 3) {
      check(bound_loglog_closed(k), g);
      check(bound_sigma_pi(rad), g);
      check(bound_sigma_pi_corollary(rad), g);
    }
    if (k >= 5) check(bound_stevens_refined(rad), g);

    // Observation at split_m = 1 from memoized subvalues: d = n/q1, f = q1.
    if (k >= 2) {
      uint64_t q1 = primes[0];
      uint64_t d = n / q1;
      uint64_t val = uint64_t(gmemo[d]) * q1 - q1 + gmemo[q1];
      ++out.bound_checks;
      if (val < g) {
        out.observation_ok = false;
        ++out.violations;
        if (out.first_violation.empty())
          out.first_violation = "observation at n=" + std::to_string(n);
      }
      // Spot-check the real operation against the memo formula.
      if (n % 10000 == 0) {
        BoundReport rep = bound_observation(rad, 1);
        if (!rep.value || rep.value->kind != BoundValue::Kind::Exact ||
            rep.value->exact != val) {
          out.observation_ok = false;
          if (out.first_violation.empty())
            out.first_violation = "observation op mismatch at n=" + std::to_string(n);
        }
      }
    }
  }
  return out;
}

std::vector<CheckResult> run_appendix_suite(const PrimeTable& table, bool full) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    out.push_back({name, pass, detail});
  };

  {
    Interval s = table.recip_sum(3, 26);
    add("recip_sum_p4_p29_below_0.9", s.hi < 0.9,
        "upper end " + fmt_double(s.hi));
  }
  {
    SpecialSumResult r = special_sum_u(table, 3);
    add("special_sum_m3_u_exceeds_pm_squared", r.u > 25, "u = " + std::to_string(r.u));
  }
  {
    std::size_t m_hi = full ? 148 : 60;
    bool pass = false;
    std::vector<SpecialSumResult> rs = verify_u_threshold(table, 20, m_hi, &pass);
    bool chain = true;
    for (const SpecialSumResult& r : rs) {
      if (!verify_lemma_logp(table, r.m, r.u)) chain = false;
    }
    add("u_threshold_m20_" + std::to_string(m_hi), pass,
        "u(m=20) = " + std::to_string(rs.front().u));
    add("lemma_logp_chain_m20_" + std::to_string(m_hi), chain, "");
  }
  add("closure_1102_lt_5761308^(9/20)", closure_check_1102(), "exact integer comparison");
  {
    uint64_t lim = std::min<uint64_t>(table.limit(), full ? 100'000'000ull : 10'000'000ull);
    add("sigma_upper_sweep_to_" + std::to_string(lim), verify_sigma_upper(table, lim), "");
    add("pi_lower_sweep_to_" + std::to_string(lim), verify_pi_lower(table, lim), "");
  }
  {
    std::size_t k_hi = std::min<std::size_t>(table.count(), 1'000'000);
    bool pass = true;
    for (std::size_t k = 6; k <= k_hi; ++k) {
      if (!table.check_rs_theorem6(k)) {
        pass = false;
        break;
      }
    }
    add("rs_theorem6_sweep_k6_" + std::to_string(k_hi), pass, "");
  }
  {
    bool pass = table.check_rs_theorem5(286.0);
    for (double x : {1000.0, 100000.0, 1000000.0}) {
      if (x <= static_cast<double>(table.limit())) pass = pass && table.check_rs_theorem5(x);
    }
    add("rs_theorem5_samples", pass, "x = 286 included");
    bool pass20 = true;
    for (double x : {2.0, 17.0, 286.0, 9999.0, 1e6}) {
      if (x <= static_cast<double>(table.limit())) pass20 = pass20 && table.check_rs_theorem20(x);
    }
    if (table.limit() <= 100'000'000ull)
      pass20 = pass20 && table.check_rs_theorem20(static_cast<double>(table.limit()));
    add("rs_theorem20_samples", pass20, "");
  }
  {
    // Combined RS 5+20 inequality: sum_{p<=p_m} 1/p >= loglog p_m + B - 1/(2 ln^2 1e8).
    Interval c = idiv(Interval::point(0.5),
                      imul(ilog(Interval::point(1e8)), ilog(Interval::point(1e8))));
    bool pass = true;
    for (std::size_t kk = 1; kk <= table.count(); ++kk) {
      Interval lhs = table.prefix_recip(kk);
      Interval rhs = isub(iadd(ilog(ilog(ifrom_u64(table.nth_prime(kk)))),
                               MertensConstants::B_enclosure()),
                          c);
      if (!(lhs.lo > rhs.hi)) {
        pass = false;
        break;
      }
    }
    add("combined_rs_sweep", pass, "");
  }
  {
    // Chebyshev-theta upper sweep backing the improvement's P_m < e^{1.02 p_m}.
    uint64_t lim = std::min<uint64_t>(table.limit(), 1'000'000ull);
    double theta_hi = 0.0;
    bool pass = true;
    for (uint64_t p : table.primes()) {
      if (p > lim) break;
      theta_hi = step_up(theta_hi + ilog(ifrom_u64(p)).hi);
      if (!(theta_hi < 1.02 * static_cast<double>(p))) {
        pass = false;
        break;
      }
    }
    add("theta_below_1.02p_sweep", pass, "");
  }
  {
    bool pass = verify_lemma_ratio(table, 62);
    add("lemma_ratio_m62", pass, "");
  }
  if (full) {
    // The closure argument needs the 5,761,308-term sum (5761308 ~ 1102^{20/9})
    // to sit strictly BELOW the threshold, so that any u reaching the
    // threshold at m = 148 exceeds p_m^{20/9} for every p_m up to 1102.
    Interval s = table.recip_sum(148, 5'761'308);
    Interval thr = one_minus_half_recip(857);
    add("sum_5761308_still_below_threshold", s.hi < thr.lo,
        "upper end " + fmt_double(s.hi) + " vs threshold " + fmt_double(thr.lo));
    SpecialSumResult r = special_sum_u(table, 148);
    add("special_sum_m148_u_exceeds_5761308", r.u > 5'761'308, "u = " + std::to_string(r.u));
    add("lemma_ratio_m148", verify_lemma_ratio(table, 148), "");
  }
  return out;
}

std::vector<CheckResult> run_crossover_suite(const PrimeTable& table) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    out.push_back({name, pass, detail});
  };
  auto dom = [&](const std::string& a, const std::string& b, std::size_t k) {
    Interval va = crossover_value(a, k, &table);
    Interval vb = crossover_value(b, k, &table);
    return step_up(step_up(step_up(va.hi))) < step_down(step_down(step_down(vb.lo)));
  };

  {
    CrossoverResult c = crossover("stevens_published", "kanold_2k", 2, 10000, 1, &table);
    bool pass = c.found && c.k_star <= 300;
    for (std::size_t k = 301; k <= 10000 && pass; ++k)
      if (!dom("stevens_published", "kanold_2k", k)) pass = false;
    add("stevens_below_2k_by_300", pass,
        "k_star = " + std::to_string(c.found ? c.k_star : 0));
  }
  {
    bool at5m = dom("stevens_published", "kanold_sqrt", 5'000'000);
    bool not1m = !dom("stevens_published", "kanold_sqrt", 1'000'000);
    bool stable = true;
    for (std::size_t k = 5'000'000; k <= 10'000'000; k += 10'000)
      if (!dom("stevens_published", "kanold_sqrt", k)) stable = false;
    add("stevens_below_kanold_sqrt_at_5e6", at5m && not1m && stable,
        std::string("holds at 5e6: ") + (at5m ? "yes" : "no") +
            ", fails at 1e6: " + (not1m ? "yes" : "no"));
  }
  {
    bool not1e4 = !dom("improvement", "kanold_sqrt", 10'000);
    bool at6e4 = dom("improvement", "kanold_sqrt", 60'000);
    bool at1e5 = dom("improvement", "kanold_sqrt", 100'000);
    bool at_e12 = dom("improvement", "kanold_sqrt", 162'754);
    add("improvement_below_kanold_sqrt_past_e11", not1e4 && at6e4 && at1e5 && at_e12,
        std::string("60000: ") + (at6e4 ? "yes" : "no"));
  }
  return out;
}

std::vector<CheckResult> run_soundness_suite(const PrimeTable&, uint64_t limit) {
  SweepOutcome o = soundness_sweep(limit);
  std::vector<CheckResult> out;
  out.push_back({"bound_soundness_to_" + std::to_string(limit), o.violations == 0,
                 std::to_string(o.bound_checks) + " checks over " +
                     std::to_string(o.squarefree_count) + " squarefree n" +
                     (o.first_violation.empty() ? "" : ("; first: " + o.first_violation))});
  out.push_back({"q1_gt_k_implies_L_eq_k", o.q1k_law_ok, ""});
  out.push_back({"observation_split1", o.observation_ok, ""});
  return out;
}

}  // namespace jac
