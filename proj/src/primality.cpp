#include "jacobsthal/primality.hpp"

#include <initializer_list>
#include <numeric>

namespace jac {

namespace {

using u128 = unsigned __int128;

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((u128)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool strong_probable_prime(uint64_t n, uint64_t a) {
  if (a % n == 0) return true;
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // This base set is deterministic for n < 3.3e24 (Sorenson & Webster).
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (!strong_probable_prime(n, a)) return false;
  }
  return true;
}

uint64_t pollard_rho(uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (uint64_t c = 1; c < 64; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t iterations = 0;
    const uint64_t budget = 1u << 22;
    auto step = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      if (++iterations > budget) break;
      x = step(x);
      y = step(step(y));
      uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
  return 0;
}

}  // namespace jac
