#ifndef JACOBSTHAL_SCAN_HPP
#define JACOBSTHAL_SCAN_HPP

#include <cstdint>
#include <vector>

#include "jacobsthal/numeric.hpp"
#include "jacobsthal/radical.hpp"

namespace jac {

class PrimeTable;

// Exact quantities from one full period of residues.
//   g  = smallest m such that every m consecutive integers contain a totative
//   L  = g - 1, the longest run of nontotatives
//   a  = smallest positive a with gcd(n, a+i) > 1 for 0 < i < g
//   b  = number of maximal-length runs in (1, n+1)
// witness_start = a; (witness_start, witness_start + L] is all nontotative.
struct ScanResult {
  uint64_t n = 0;
  uint64_t g = 0;
  uint64_t L = 0;
  uint64_t a = 0;
  uint64_t b = 0;
  uint64_t witness_start = 0;
};

constexpr uint64_t kDefaultScanBudget = 10'000'000'000ull;

// Segmented bitset scan over [2, n]; 1 and n+1 are totatives, so every run
// is interior and no wraparound is needed.  Parallel across segments with a
// sequential stitch, bit-identical for every thread count.
ScanResult g_exact(const Radical& rad, uint64_t scan_budget = kDefaultScanBudget,
                   unsigned threads = 0);

// L only, via the same marking but a single pass; used by bulk sweeps.
uint64_t scan_longest_run(const std::vector<uint64_t>& primes, uint64_t n);

namespace detail {
// The scan with an explicit segment size (in bits); exists so tests can
// force runs across many segment boundaries.
ScanResult scan_with_segment_bits(const std::vector<uint64_t>& primes, uint64_t n,
                                  uint64_t segment_bits, unsigned threads);
}  // namespace detail

// Independent oracle: per-integer gcd over [1, n+1].  Requires n <= 10^7.
uint64_t g_naive(const Radical& rad);

// Same gcd scan for an arbitrary modulus (not necessarily squarefree).
uint64_t g_gcd_scan(uint64_t m);

// CRT witness: start b with b + perm[i] == 0 mod q_i, reduced to the least
// positive residue; (b, b + k] then contains no totative, so L(n) >= k.
struct Witness {
  Int start;
  uint64_t length = 0;
  std::vector<std::pair<uint64_t, uint64_t>> assignment;  // (q_i, perm[i])
};

Witness crt_witness(const Radical& rad, const std::vector<uint64_t>& perm);
bool verify_witness(const Radical& rad, const Witness& w);

// Westzynthius: 2 p_{k-1} <= g(P_k) for k >= 2.
uint64_t westzynthius_lower(const PrimeTable& table, std::size_t k);

// e^gamma (1-eps) p_k loglog p_k / logloglog p_k; a formula value only.
// Requires logloglog p_k > 0 and eps in (0, 1].
double asymptotic_lower_value(const PrimeTable& table, std::size_t k, double eps);

}  // namespace jac

#endif
