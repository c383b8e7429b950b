#ifndef JACOBSTHAL_ANALYSIS_HPP
#define JACOBSTHAL_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jacobsthal/bounds.hpp"
#include "jacobsthal/prime_table.hpp"
#include "jacobsthal/radical.hpp"

namespace jac {

// Minimal u with a certified sum_{j<=u} 1/p_{m+j} > 1 - 1/(2 p_m).
struct SpecialSumResult {
  std::size_t m;
  uint64_t p_m;
  uint64_t u;
  double ratio;  // log u / log p_m
};
SpecialSumResult special_sum_u(const PrimeTable& table, std::size_t m);

// log p_{m+u} < log u + (loglog u + m/u)(1 + 1/log u) + m/(u log^2 u),
// certified; requires u > m.
bool verify_lemma_logp(const PrimeTable& table, std::size_t m, uint64_t u);

// log(log p_{m+u} / log p_m) > 1 - 1/(2 p_m) - 0.00148 - 1/(2 log^2 p_{m+u})
// at u = special_sum_u(m).u; requires p_{m+u} > 286.
bool verify_lemma_ratio(const PrimeTable& table, std::size_t m);

// u > p_m^{20/9} for every m in [m_lo, m_hi], decided by the exact integer
// comparison u^9 > p_m^20.
std::vector<SpecialSumResult> verify_u_threshold(const PrimeTable& table, std::size_t m_lo,
                                                 std::size_t m_hi, bool* all_pass);

// 1102 < 5761308^{9/20}, exactly.
bool closure_check_1102();

// sigma^{-1}(P_k) < 0.41 + loglog p_k for 7 < p_k < limit, and
// pi^{-1}(P_k) > 1/(3 log p_k) for 1 < p_k < limit, with running certified
// accumulators.
bool verify_sigma_upper(const PrimeTable& table, uint64_t limit);
bool verify_pi_lower(const PrimeTable& table, uint64_t limit);

// find_l on P_k yields q_{l-1} < k^{0.45} (exact power comparison); q_l is
// reported alongside.  Samples need k >= ceil(e^{9.5}).
struct QlSample {
  std::size_t k;
  std::size_t l;
  uint64_t q_l_minus_1;
  uint64_t q_l;
  bool pass;
};
bool verify_q_l_bound(const PrimeTable& table, const std::vector<std::size_t>& k_samples,
                      std::vector<QlSample>* details = nullptr);

// First k in [k_lo, k_hi] (stepping by `step`) from which value_a < value_b
// holds through the end of the range, compared in log2 with a 3-ulp slack
// on the adverse side.
struct CrossoverResult {
  std::string bound_a, bound_b;
  std::size_t k_star = 0;
  std::size_t range_lo = 0, range_hi = 0;
  bool found = false;
};
CrossoverResult crossover(const std::string& bound_a, const std::string& bound_b,
                          std::size_t k_lo, std::size_t k_hi, std::size_t step,
                          const PrimeTable* table);

// log2-value of a named bound at k (on P_k where the bound needs a radical).
Interval crossover_value(const std::string& name, std::size_t k, const PrimeTable* table);

// One bound report per (input, bound); deterministic row order.
struct TableRow {
  std::string input;
  BoundReport report;
};
std::vector<TableRow> bound_table(const std::vector<Radical>& inputs,
                                  const std::vector<std::string>& which,
                                  uint64_t scan_budget = kDefaultScanBudget);

std::string table_to_csv(const std::vector<TableRow>& rows);
std::string table_to_json(const std::vector<TableRow>& rows);
std::string report_to_json_string(const BoundReport& report);

// Exhaustive soundness sweep over squarefree n <= limit: every applicable
// bound value >= g, q_1 > k implies L = k, and the observation inequality
// at split_m = 1 holds against memoized subvalues.
struct SweepOutcome {
  uint64_t squarefree_count = 0;
  uint64_t bound_checks = 0;
  uint64_t violations = 0;
  std::string first_violation;
  bool q1k_law_ok = true;
  bool observation_ok = true;
};
SweepOutcome soundness_sweep(uint64_t limit);

// Named pass/fail rollups behind the CLI verify subcommand.
struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};
std::vector<CheckResult> run_appendix_suite(const PrimeTable& table, bool full);
std::vector<CheckResult> run_crossover_suite(const PrimeTable& table);
std::vector<CheckResult> run_soundness_suite(const PrimeTable& table, uint64_t limit);

}  // namespace jac

#endif
