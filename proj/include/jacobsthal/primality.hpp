#ifndef JACOBSTHAL_PRIMALITY_HPP
#define JACOBSTHAL_PRIMALITY_HPP

#include <cstdint>

namespace jac {

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(uint64_t n);

// One nontrivial factor of composite n (Pollard rho with Brent cycling);
// returns 0 if the iteration budget is exhausted.
uint64_t pollard_rho(uint64_t n);

}  // namespace jac

#endif
