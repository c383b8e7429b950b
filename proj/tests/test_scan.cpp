#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "jacobsthal/errors.hpp"
#include "jacobsthal/prime_table.hpp"
#include "jacobsthal/radical.hpp"
#include "jacobsthal/scan.hpp"

using namespace jac;

namespace {

// Reference oracle: mark [2, n] by gcd, collect maximal runs directly.
struct RefScan {
  uint64_t g, L, a, b;
};
RefScan reference_scan(uint64_t n) {
  std::vector<std::pair<uint64_t, uint64_t>> runs;  // (start, len)
  uint64_t run_start = 0;
  for (uint64_t j = 2; j <= n + 1; ++j) {
    bool marked = j <= n && std::gcd(j, n) > 1;
    if (marked && run_start == 0) run_start = j;
    if (!marked && run_start != 0) {
      runs.push_back({run_start, j - run_start});
      run_start = 0;
    }
  }
  uint64_t L = 0;
  for (auto& [s, l] : runs) L = std::max(L, l);
  uint64_t first = 0, count = 0;
  for (auto& [s, l] : runs) {
    if (l == L) {
      ++count;
      if (first == 0) first = s;
    }
  }
  return {L + 1, L, first - 1, count};
}

std::vector<std::vector<uint64_t>> squarefree_radicals(uint64_t limit) {
  std::vector<uint32_t> spf(limit + 1, 0);
  std::vector<uint32_t> ps;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!spf[i]) {
      spf[i] = static_cast<uint32_t>(i);
      ps.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : ps) {
      if (p > spf[i] || i * p > limit) break;
      spf[i * p] = p;
    }
  }
  std::vector<std::vector<uint64_t>> out;
  for (uint64_t n = 2; n <= limit; ++n) {
    std::vector<uint64_t> primes;
    uint64_t r = n;
    bool sf = true;
    while (r > 1) {
      uint32_t p = spf[r];
      r /= p;
      if (r % p == 0) {
        sf = false;
        break;
      }
      primes.push_back(p);
    }
    if (!sf) continue;
    std::sort(primes.begin(), primes.end());
    out.push_back(std::move(primes));
  }
  return out;
}

}  // namespace

TEST_CASE("reference values for tiny radicals") {
  // frozen from the gcd oracle
  ScanResult r2 = g_exact(Radical::parse("2"));
  CHECK(r2.g == 2);
  CHECK(r2.L == 1);
  CHECK(r2.a == 1);
  CHECK(r2.b == 1);
  CHECK(r2.witness_start == 1);

  ScanResult r3 = g_exact(Radical::parse("3"));
  CHECK(r3.g == 2);
  CHECK(r3.a == 2);  // the isolated run {3}
  CHECK(r3.b == 1);

  ScanResult r6 = g_exact(Radical::parse("2,3"));
  CHECK(r6.g == 4);
  CHECK(r6.L == 3);
  CHECK(r6.a == 1);
  CHECK(r6.b == 1);

  ScanResult r15 = g_exact(Radical::parse("3,5"));
  CHECK(r15.g == 3);
  CHECK(r15.a == 4);  // runs {5,6} and {9,10}
  CHECK(r15.b == 2);

  ScanResult r30 = g_exact(Radical::parse("2,3,5"));
  CHECK(r30.g == 6);
  CHECK(r30.L == 5);
  CHECK(r30.a == 1);  // earliest maximal run is 2..6
  CHECK(r30.b == 2);  // mirrored by 24..28
}

TEST_CASE("scan matches the reference oracle in full") {
  for (uint64_t n : {2ull, 3ull, 6ull, 15ull, 30ull, 35ull, 105ull, 210ull, 330ull, 2310ull,
                     4199ull, 30030ull}) {
    Radical rad = Radical::parse(std::to_string(n));
    RefScan ref = reference_scan(n);
    ScanResult got = g_exact(rad);
    CHECK(got.g == ref.g);
    CHECK(got.L == ref.L);
    CHECK(got.a == ref.a);
    CHECK(got.b == ref.b);
  }
}

TEST_CASE("g_naive equals g_exact on every squarefree n up to 3000") {
  for (const auto& primes : squarefree_radicals(3000)) {
    Radical rad = Radical::from_sorted_primes_unchecked(primes);
    CHECK(g_exact(rad).g == g_naive(rad));
  }
}

TEST_CASE("primorial values match the independent gcd oracle") {
  // g(P_k) for k = 1..7, derived with a per-integer gcd scan
  const uint64_t expected[] = {2, 4, 6, 10, 14, 22, 26};
  PrimeTable table(100);
  for (std::size_t k = 1; k <= 7; ++k) {
    Radical rad = Radical::first_k_primes(table, k);
    ScanResult s = g_exact(rad);
    CHECK(s.g == expected[k - 1]);
    CHECK(s.g == g_naive(rad));
    CHECK(s.L + 1 == s.g);
    CHECK(s.g > k);
  }
}

TEST_CASE("a and b for the first primorials") {
  // frozen from the reference oracle
  PrimeTable table(100);
  struct Row {
    std::size_t k;
    uint64_t a, b;
  };
  for (Row row : std::vector<Row>{{5, 113, 2}, {6, 9439, 2}, {7, 217127, 2}}) {
    ScanResult s = g_exact(Radical::first_k_primes(table, row.k));
    CHECK(s.a == row.a);
    CHECK(s.b == row.b);
  }
}

TEST_CASE("scan invariants on squarefree n up to 20000") {
  for (const auto& primes : squarefree_radicals(20000)) {
    Radical rad = Radical::from_sorted_primes_unchecked(primes);
    ScanResult s = g_exact(rad);
    std::size_t k = rad.k();
    uint64_t n = s.n;
    CHECK(s.g == s.L + 1);
    CHECK(s.g > k);
    CHECK(s.b >= 1);
    if (k >= 2) CHECK(s.a < n / 2.0);
    if (k == 1) CHECK(s.a == n - 1);
    if (primes[0] > k) CHECK(s.L == k);
    // witness interval really is nontotative, with totatives at both ends
    for (uint64_t j = 1; j <= s.L; ++j) CHECK(std::gcd(s.witness_start + j, n) > 1);
    CHECK(std::gcd(s.witness_start, n) == 1);
    CHECK(std::gcd(s.witness_start + s.L + 1, n) == 1);
  }
}

TEST_CASE("segment stitching: tiny segments agree with the reference oracle") {
  // 64- and 96-bit segments force every run to cross many boundaries and
  // exercise the all-marked, head/tail carry, and exact-L folding paths.
  for (uint64_t n : {30ull, 64ull, 66ull, 210ull, 2310ull, 4622ull, 30030ull, 43890ull}) {
    Radical rad = Radical::parse(std::to_string(n));
    RefScan ref = reference_scan(n);
    for (uint64_t seg_bits : {64ull, 96ull, 1024ull}) {
      ScanResult got = detail::scan_with_segment_bits(rad.primes(), n, seg_bits, 1);
      CHECK(got.g == ref.g);
      CHECK(got.L == ref.L);
      CHECK(got.a == ref.a);
      CHECK(got.b == ref.b);
    }
  }
  // randomized squarefree inputs, fixed seed
  std::mt19937_64 rng(606);
  auto rads = squarefree_radicals(60000);
  for (int iter = 0; iter < 200; ++iter) {
    const auto& primes = rads[rng() % rads.size()];
    uint64_t n = 1;
    for (uint64_t q : primes) n *= q;
    if (n < 70) continue;
    RefScan ref = reference_scan(n);
    ScanResult got = detail::scan_with_segment_bits(primes, n, 64 + rng() % 512, 1);
    CHECK(got.g == ref.g);
    CHECK(got.L == ref.L);
    CHECK(got.a == ref.a);
    CHECK(got.b == ref.b);
  }
}

TEST_CASE("multi-segment scans at production size agree with the oracle") {
  // P_8 spans three 4 Mi-bit segments; the gcd reference is still feasible.
  Radical p8 = Radical::parse("P8");
  RefScan ref = reference_scan(9699690);
  ScanResult got = g_exact(p8);
  CHECK(got.g == ref.g);
  CHECK(got.L == ref.L);
  CHECK(got.a == ref.a);
  CHECK(got.b == ref.b);
  CHECK(got.g == 34);
}

TEST_CASE("radical invariance: non-squarefree moduli share g with their radical") {
  struct Pair {
    uint64_t m;
    const char* rad;
  };
  for (Pair p : std::vector<Pair>{{12, "2,3"}, {360, "2,3,5"}, {2250, "2,3,5"}, {49, "7"}}) {
    CHECK(g_gcd_scan(p.m) == g_exact(Radical::parse(p.rad)).g);
  }
}

TEST_CASE("capacity errors") {
  Radical big = Radical::parse("P15");
  CHECK_THROWS_AS(g_exact(big), CapacityError);   // P_15 ~ 6.1e17
  Radical p9 = Radical::parse("P9");
  CHECK_THROWS_AS(g_naive(p9), CapacityError);    // 2.2e8 > 1e7
  CHECK_THROWS_AS(g_exact(Radical::parse("P8"), 1000), CapacityError);  // budget
}

TEST_CASE("crt witnesses from the spec") {
  Witness w1 = crt_witness(Radical::parse("2,3"), {1, 2});
  CHECK(w1.start == 1);
  CHECK(verify_witness(Radical::parse("2,3"), w1));

  Witness w2 = crt_witness(Radical::parse("3,5"), {1, 2});
  CHECK(w2.start == 8);
  CHECK(verify_witness(Radical::parse("3,5"), w2));

  // q_1 > k: the witness length equals L(n) exactly
  Radical r35 = Radical::parse("5,7");
  Witness w3 = crt_witness(r35, {1, 2});
  CHECK(w3.length == 2);
  CHECK(verify_witness(r35, w3));
  CHECK(g_exact(r35).L == 2);
}

TEST_CASE("bad permutations are rejected") {
  Radical r = Radical::parse("2,3");
  CHECK_THROWS_AS(crt_witness(r, {1}), DomainError);
  CHECK_THROWS_AS(crt_witness(r, {1, 1}), DomainError);
  CHECK_THROWS_AS(crt_witness(r, {0, 1}), DomainError);
  CHECK_THROWS_AS(crt_witness(r, {2, 3}), DomainError);
}

TEST_CASE("k! permutations give k! distinct witnesses in (0, n) when q1 > k") {
  Radical rad = Radical::parse("5,7,11");
  Int n = rad.product();
  std::vector<uint64_t> perm = {1, 2, 3};
  std::set<Int> starts;
  do {
    Witness w = crt_witness(rad, perm);
    CHECK(verify_witness(rad, w));
    CHECK(w.start > 0);
    CHECK(w.start < n);
    // start itself is a totative here
    CHECK(boost::multiprecision::gcd(w.start, n) == 1);
    starts.insert(w.start);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(starts.size() == 6);
}

TEST_CASE("witness works with huge products") {
  PrimeTable table(10000);
  Radical rad = Radical::first_k_primes(table, 100);
  std::vector<uint64_t> perm;
  for (uint64_t i = 100; i >= 1; --i) perm.push_back(i);
  Witness w = crt_witness(rad, perm);
  CHECK(verify_witness(rad, w));
}

TEST_CASE("westzynthius lower bound") {
  PrimeTable table(1000);
  CHECK(westzynthius_lower(table, 2) == 4);
  CHECK(westzynthius_lower(table, 3) == 6);
  CHECK(westzynthius_lower(table, 5) == 14);
  CHECK_THROWS_AS(westzynthius_lower(table, 1), DomainError);
  // tight at k = 2 and 3, a true lower bound through k = 7
  const uint64_t g_primorial[] = {2, 4, 6, 10, 14, 22, 26};
  for (std::size_t k = 2; k <= 7; ++k)
    CHECK(westzynthius_lower(table, k) <= g_primorial[k - 1]);
}

TEST_CASE("asymptotic lower formula value") {
  PrimeTable table(1000);
  CHECK(asymptotic_lower_value(table, 7, 0.5) > 0.0);
  CHECK(asymptotic_lower_value(table, 7, 1.0) == 0.0);
  CHECK_THROWS_AS(asymptotic_lower_value(table, 5, 0.5), DomainError);
  // p_6 = 13 has logloglog below zero, so the formula's domain excludes it
  CHECK_THROWS_AS(asymptotic_lower_value(table, 6, 0.5), DomainError);
  CHECK_THROWS_AS(asymptotic_lower_value(table, 7, 0.0), DomainError);
  CHECK_THROWS_AS(asymptotic_lower_value(table, 7, 1.5), DomainError);
}

TEST_CASE("observation inequality holds on all coprime splits up to 3000") {
  auto rads = squarefree_radicals(3000);
  std::vector<uint32_t> g_of(3001, 0);
  for (const auto& primes : rads) {
    uint64_t n = 1;
    for (uint64_t q : primes) n *= q;
    g_of[n] = static_cast<uint32_t>(g_exact(Radical::from_sorted_primes_unchecked(primes)).g);
  }
  bool equality_seen = false;
  for (const auto& primes : rads) {
    std::size_t k = primes.size();
    if (k < 2) continue;
    uint64_t n = 1;
    for (uint64_t q : primes) n *= q;
    for (uint64_t mask = 1; mask + 1 < (uint64_t(1) << k); ++mask) {
      uint64_t f = 1;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (uint64_t(1) << i)) f *= primes[i];
      uint64_t d = n / f;
      uint64_t rhs = uint64_t(g_of[d]) * f - f + g_of[f];
      CHECK(g_of[n] <= rhs);
      if (g_of[n] == rhs) equality_seen = true;
    }
  }
  CHECK(equality_seen);
}
