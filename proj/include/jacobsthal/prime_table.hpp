#ifndef JACOBSTHAL_PRIME_TABLE_HPP
#define JACOBSTHAL_PRIME_TABLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jacobsthal/interval.hpp"
#include "jacobsthal/numeric.hpp"

namespace jac {

// Literature constants at 20 significant digits; a one-ulp pad around the
// rounded double encloses the true value.
struct MertensConstants {
  static constexpr double B = 0.26149721284764278375;              // Meissel-Mertens
  static constexpr double gamma = 0.57721566490153286061;          // Euler-Mascheroni
  static constexpr double e_minus_gamma = 0.56145948356688516982;  // exp(-gamma)

  static Interval B_enclosure() { return {step_down(B), step_up(B)}; }
  static Interval gamma_enclosure() { return {step_down(gamma), step_up(gamma)}; }
  static Interval e_minus_gamma_enclosure() {
    return {step_down(e_minus_gamma), step_up(e_minus_gamma)};
  }
};

// One record per prime: a compensated running sum of reciprocals plus an
// accumulated worst-case rounding bound, so that the true rational value of
// sum_{j<=i} 1/p_j always lies in [sum - err, sum + err].
struct CompensatedSum {
  double sum;
  double err;
};

// All primes up to a limit, with certified prefix sums of reciprocals.
// Construction may run segments in parallel but the result is identical for
// every worker count; once built the table is immutable.
class PrimeTable {
 public:
  static constexpr uint64_t kMaxLimit = 200'000'000;

  explicit PrimeTable(uint64_t limit, unsigned threads = 0);

  // Loads from "<cache_dir>/jprimes_<limit>.bin" when valid, else sieves and
  // writes the cache.  Empty cache_dir means no caching.
  static PrimeTable load_or_build(uint64_t limit, const std::string& cache_dir,
                                  unsigned threads = 0);

  uint64_t limit() const { return limit_; }
  std::size_t count() const { return primes_.size(); }
  const std::vector<uint64_t>& primes() const { return primes_; }
  const std::vector<CompensatedSum>& recip_prefix() const { return recip_prefix_; }

  // 1-indexed: nth_prime(1) == 2.
  uint64_t nth_prime(std::size_t i) const;

  // pi(x) for x <= limit.
  std::size_t count_leq(uint64_t x) const;

  // Exact product of the first k primes.
  Int primorial(std::size_t k) const;

  // Enclosure of sum_{j<=c} 1/p_j.
  Interval prefix_recip(std::size_t c) const;

  // Enclosure of sum_{j=1..u} 1/p_{m+j}.
  Interval recip_sum(std::size_t m, std::size_t u) const;

  // log p_k < log k + log(log k + loglog k), certified; requires k > 5.
  bool check_rs_theorem6(std::size_t k) const;

  // |sum_{p<=x} 1/p - loglog x - B| <= 1/(2 log^2 x), the sum's enclosure
  // entirely inside the band; requires 286 <= x <= limit.
  bool check_rs_theorem5(double x) const;

  // sum_{p<=x} 1/p - loglog x - B > 0 from the enclosure's lower end;
  // requires 2 <= x <= min(10^8, limit).
  bool check_rs_theorem20(double x) const;

  // Binary cache format: magic "JPRIMES1", u64 limit, u64 count, u16 gaps
  // (first gap counted from zero), trailing FNV-1a 64 checksum of the
  // payload.  All little-endian.
  void save_cache(const std::string& path) const;
  static bool try_load_cache(const std::string& path, uint64_t limit,
                             std::vector<uint64_t>& primes_out);

  static std::string cache_file_name(uint64_t limit);

 private:
  PrimeTable() = default;

  void sieve(unsigned threads);
  void build_prefix();

  uint64_t limit_ = 0;
  std::vector<uint64_t> primes_;
  std::vector<CompensatedSum> recip_prefix_;
};

}  // namespace jac

#endif
