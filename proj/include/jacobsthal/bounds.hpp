#ifndef JACOBSTHAL_BOUNDS_HPP
#define JACOBSTHAL_BOUNDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacobsthal/numeric.hpp"
#include "jacobsthal/radical.hpp"
#include "jacobsthal/scan.hpp"

namespace jac {

// An upper-bound value, exact below 2^256 and in log2 form beyond.  The
// reported value never under-reports: real-valued bounds are rounded up to
// the next representable (integer ceiling when exact).
struct BoundValue {
  enum class Kind { Exact, Log2 };
  static constexpr unsigned kExactBitLimit = 256;

  Kind kind = Kind::Exact;
  Int exact;          // when kind == Exact
  double log2 = 0.0;  // when kind == Log2; an upper bound on log2(value)

  static BoundValue from_int(Int v);
  static BoundValue from_log2(double l2_upper);
  // Ceiling of a certified real given by an enclosure's upper end.
  static BoundValue from_upper(double upper);
  static BoundValue from_rat_ceil(const Rat& r);

  Interval log2_enclosure() const;
  bool geq_u64(uint64_t g) const;  // certified: value >= g
  std::string to_string() const;   // decimal, or "2^{...}"
};

// -1, 0, +1; mixed kinds compare through log2 enclosures, 0 when the
// enclosures overlap (callers tie-break deterministically).
int compare(const BoundValue& a, const BoundValue& b);

struct BoundReport {
  std::string name;
  bool applicable = false;
  std::string reason;  // failed precondition when not applicable
  std::optional<BoundValue> value;
  std::map<std::string, std::string> params;
  std::string target = "g";  // "g" or "L"
};

// k-only bounds ----------------------------------------------------------

// g(n) <= k 2^k + 2^k - k.
BoundReport bound_jacobsthal_original(std::size_t k);
// L(n) <= (k+1)(2^k - 1).
BoundReport bound_jacobsthal_L(std::size_t k);
// g(n) <= 2^k.
BoundReport bound_kanold_2k(std::size_t k);
// g(n) <= 2^sqrt(k); applicable from k > e^6 (claimed), e^50 in the original.
BoundReport bound_kanold_sqrt(std::size_t k);
// g(n) <= 2 k^{2 + 2e ln k} (both logs natural).
BoundReport bound_stevens_published(std::size_t k);
// g(n) < k^{3 + 3.81 loglog k} for k > 2.
BoundReport bound_loglog_closed(std::size_t k);

// radical bounds ---------------------------------------------------------

// g(n) <= 2^k / pi^{-1}.
BoundReport bound_westzynthius_sieve(const Radical& rad);
// g(n) <= ceil(k/r) for r + sigma^{-1} < 1; default r -> 1 - sigma^{-1}.
BoundReport bound_kanold_p(const Radical& rad, std::optional<double> r = std::nullopt);
// g(n) < 4 k q1^2/(q1-1) when sigma^{-1} < 1 + 1/(2 q1), k > 1.
BoundReport bound_variation(const Radical& rad);
// g(fd) <= g(d) f - f + g(f); d is the product of the primes above
// split_m, f the rest.  Subvalues come from g_exact within the scan budget,
// else recursively from best_bound (recorded in params).
BoundReport bound_observation(const Radical& rad, std::size_t split_m,
                              uint64_t scan_budget = kDefaultScanBudget);
// g(n) < 2^{3 k^{0.45} / 2} 4 (k-l+1) q_l^2 / (q_l - 1); certified claim
// needs k >= ceil(e^{9.5}), below that the value is advisory only.
BoundReport bound_improvement(const Radical& rad);
// g(n) <= 4 log q_k sum_{i<=s} C(k,i), s+1 even and >= 2e(loglog q_k + 1/2).
BoundReport bound_stevens_refined(const Radical& rad);
// g(n) < sum_{i<=s} C(k,i) / (pi^{-1} - sigma^{-1 (s+1)}/(s+1)!), s the
// smallest odd integer with s+1 >= K sigma^{-1}.
BoundReport bound_sigma_pi(const Radical& rad, double K = 4.0);
// The weaker closed corollary of the same theorem.
BoundReport bound_sigma_pi_corollary(const Radical& rad);
// g(n) <= (k-m+1)(2^m + pi^{-1}(d)) / (pi^{-1}(d)(1 - sigma^{-1}(n/d))),
// d the product of the m smallest primes; m searched when omitted.
BoundReport bound_addendum(const Radical& rad, std::optional<std::size_t> m = std::nullopt);

// The s selections used by the two truncation bounds: the smallest odd s
// with s+1 >= K sigma^{-1}, and with s+1 >= 2e(loglog q_k + 1/2).
std::size_t sigma_pi_s_choice(Interval sigma_enc, double K);
std::size_t stevens_s_choice(uint64_t q_k);

// Minimum applicable bound, including the exact value when the scan budget
// allows; deterministic tie-break by operation name.
BoundReport best_bound(const Radical& rad, uint64_t scan_budget = kDefaultScanBudget);

// Every bound above evaluated on one radical; precondition failures become
// applicable=false rows.  Observation uses split_m = 1 when k > 1.
std::vector<BoundReport> bound_suite(const Radical& rad,
                                     uint64_t scan_budget = kDefaultScanBudget);

// Names in the order bound_suite emits them.
const std::vector<std::string>& bound_suite_names();

std::string fmt_double(double d);  // deterministic "%.9g"

}  // namespace jac

#endif
