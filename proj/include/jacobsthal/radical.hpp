#ifndef JACOBSTHAL_RADICAL_HPP
#define JACOBSTHAL_RADICAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jacobsthal/interval.hpp"
#include "jacobsthal/numeric.hpp"

namespace jac {

class PrimeTable;

// A certified real: an enclosure that always holds, plus the exact rational
// when the computation kept one (k <= kExactFactorLimit prime factors).
struct CertifiedReal {
  Interval enc;
  std::optional<Rat> exact;
};

// A squarefree integer represented by its ascending distinct prime factors.
class Radical {
 public:
  static constexpr std::size_t kExactFactorLimit = 64;

  // Validates: nonempty, strictly increasing, every element prime.
  static Radical from_primes(std::vector<uint64_t> primes);

  // Trusted path for sieve output: ascending primes, no validation.
  static Radical from_sorted_primes_unchecked(std::vector<uint64_t> primes);

  // Accepts "2,3,5" (prime list), "P6" (primorial), or a squarefree integer
  // up to 10^12 to be trial-factored.  The table, when given, provides
  // primes for the P<k> form and speeds up trial division.
  static Radical parse(const std::string& spec, const PrimeTable* table = nullptr);

  static Radical first_k_primes(const PrimeTable& table, std::size_t k);

  const std::vector<uint64_t>& primes() const { return primes_; }
  std::size_t k() const { return primes_.size(); }
  uint64_t smallest() const { return primes_.front(); }
  uint64_t largest() const { return primes_.back(); }

  // Exact product of the factors; recomputed per call, so the object stays
  // immutable and freely shareable across threads.
  Int product() const;

  // Product if it fits in a uint64_t, else nullopt.
  std::optional<uint64_t> product_u64() const;

  std::string to_string() const;  // "2,3,5"
  std::string to_json() const;    // {"primes":[2,3,5],"k":3}

 private:
  std::vector<uint64_t> primes_;
};

// sigma^{-1}(n) = sum 1/q_i.
CertifiedReal sigma_inv(const Radical& rad);

// pi^{-1}(n) = prod (1 - 1/q_i) = phi(n)/n.
CertifiedReal pi_inv(const Radical& rad);

// T = (1/pi^{-1})^{1/sigma^{-1}} together with the two endpoints that
// sandwich it, (q_k/(q_k-1))^{q_k} below and (q_1/(q_1-1))^{q_1} above.
struct MediantResult {
  CertifiedReal T;
  Interval lower_endpoint;
  Interval upper_endpoint;
};
MediantResult mediant_T(const Radical& rad);

// Exact count of integers in [1, x] coprime to the radical, by
// inclusion-exclusion over subset products (pruned at products > x).
// Requires k <= 24.
Int totative_count(const Radical& rad, const Int& x);

// Smallest l with sum_{i=l..k} 1/q_i < 1 + 1/(2 q_l); l = k always works.
struct TailSplit {
  std::size_t l;   // 1-indexed
  uint64_t q_l;
};
TailSplit find_l(const Radical& rad);

// Same split for P_k, served from the table's certified prefix sums.
TailSplit find_l_primorial(const PrimeTable& table, std::size_t k);

}  // namespace jac

#endif
