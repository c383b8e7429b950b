// Acceptance suite: one pass/fail line per criterion, exit 0 only if every
// selected criterion passes.  --full switches criteria 6-8 to their
// 1.01e8-scale variants; --only 1,4,7 restricts the run.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jacobsthal/analysis.hpp"
#include "jacobsthal/bounds.hpp"
#include "jacobsthal/prime_table.hpp"
#include "jacobsthal/radical.hpp"
#include "jacobsthal/scan.hpp"

using namespace jac;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<uint32_t> smallest_prime_factor_sieve(uint64_t limit) {
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

// Squarefree factorization via an SPF table; empty result = not squarefree.
bool squarefree_radical(const std::vector<uint32_t>& spf, uint64_t n,
                        std::vector<uint64_t>& primes) {
  primes.clear();
  uint64_t r = n;
  while (r > 1) {
    uint32_t p = spf[r];
    r /= p;
    if (r % p == 0) return false;
    primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  return true;
}

std::vector<uint64_t> sample_radical(std::mt19937_64& rng, const PrimeTable& table,
                                     std::size_t max_k) {
  std::uniform_int_distribution<std::size_t> kd(1, max_k);
  std::size_t pool = table.count_leq(10000);
  std::uniform_int_distribution<std::size_t> pick(1, pool);
  std::set<uint64_t> chosen;
  std::size_t k = kd(rng);
  while (chosen.size() < k) chosen.insert(table.nth_prime(pick(rng)));
  return {chosen.begin(), chosen.end()};
}

struct Shared {
  bool full = false;
  std::unique_ptr<PrimeTable> table;        // default budget, limit 1e7
  std::unique_ptr<PrimeTable> full_table;   // 1.01e8 when --full
  double full_table_seconds = 0.0;
  std::vector<uint32_t> g_memo_1e5;         // g values for squarefree n <= 1e5

  const PrimeTable& base() {
    if (!table) table = std::make_unique<PrimeTable>(10'000'000);
    return *table;
  }
  const PrimeTable& big() {
    if (!full_table) {
      auto t0 = std::chrono::steady_clock::now();
      // 1.02e8 keeps the m = 148 minimal-u search (which ends near 1.018e8)
      // inside the table.
      full_table = std::make_unique<PrimeTable>(102'000'000);
      full_table_seconds = seconds_since(t0);
    }
    return *full_table;
  }
  const std::vector<uint32_t>& memo() {
    if (g_memo_1e5.empty()) {
      const uint64_t limit = 100'000;
      std::vector<uint32_t> spf = smallest_prime_factor_sieve(limit);
      g_memo_1e5.assign(limit + 1, 0);
      std::vector<uint64_t> primes;
      for (uint64_t n = 2; n <= limit; ++n) {
        if (!squarefree_radical(spf, n, primes)) continue;
        g_memo_1e5[n] = static_cast<uint32_t>(scan_longest_run(primes, n) + 1);
      }
    }
    return g_memo_1e5;
  }
};

Outcome criterion1(Shared& sh) {
  auto t0 = std::chrono::steady_clock::now();
  const uint64_t limit = 100'000;
  std::vector<uint32_t> spf = smallest_prime_factor_sieve(limit);
  sh.g_memo_1e5.assign(limit + 1, 0);
  uint64_t count = 0, mismatches = 0;
  std::vector<uint64_t> primes;
  for (uint64_t n = 2; n <= limit; ++n) {
    if (!squarefree_radical(spf, n, primes)) continue;
    ++count;
    Radical rad = Radical::from_sorted_primes_unchecked(primes);
    uint64_t ge = g_exact(rad).g;
    uint64_t gn = g_naive(rad);
    if (ge != gn) ++mismatches;
    sh.g_memo_1e5[n] = static_cast<uint32_t>(ge);
  }
  for (std::size_t k = 1; k <= 7; ++k) {
    Radical rad = Radical::first_k_primes(sh.base(), k);
    if (g_exact(rad).g != g_naive(rad)) ++mismatches;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << count << " squarefree n, " << mismatches << " mismatches, " << std::fixed
    << std::setprecision(1) << secs << "s (budget 120s)";
  return {mismatches == 0 && secs < 120.0, d.str()};
}

Outcome criterion2(Shared& sh) {
  auto t0 = std::chrono::steady_clock::now();
  const uint64_t expected_g[] = {2, 4, 6, 10, 14, 22, 26, 34, 40};
  bool ok = true;
  std::ostringstream d;
  for (std::size_t k = 1; k <= 9; ++k) {
    Radical rad = Radical::first_k_primes(sh.base(), k);
    ScanResult s = g_exact(rad);
    if (s.g != expected_g[k - 1] || s.g <= k || s.L != s.g - 1) {
      ok = false;
      d << "P_" << k << " unexpected (g=" << s.g << ") ";
    }
  }
  // thread-count invariance on the two largest scans
  for (std::size_t k : {std::size_t(8), std::size_t(9)}) {
    Radical rad = Radical::first_k_primes(sh.base(), k);
    ScanResult a = g_exact(rad, kDefaultScanBudget, 1);
    ScanResult b = g_exact(rad, kDefaultScanBudget, 4);
    ScanResult c = g_exact(rad, kDefaultScanBudget, 8);
    auto same = [](const ScanResult& x, const ScanResult& y) {
      return x.g == y.g && x.L == y.L && x.a == y.a && x.b == y.b &&
             x.witness_start == y.witness_start;
    };
    if (!same(a, b) || !same(a, c)) {
      ok = false;
      d << "P_" << k << " varies with thread count ";
    }
  }
  double secs = seconds_since(t0);
  d << "g(P_1..P_9) checked, thread-invariant, " << std::fixed << std::setprecision(1)
    << secs << "s (budget 300s)";
  return {ok && secs < 300.0, d.str()};
}

Outcome criterion3(Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  SweepOutcome o = soundness_sweep(1'000'000);
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << o.bound_checks << " bound checks over " << o.squarefree_count << " squarefree n, "
    << o.violations << " violations, " << std::fixed << std::setprecision(0) << secs
    << "s (budget 1800s)";
  if (!o.first_violation.empty()) d << "; first: " << o.first_violation;
  return {o.violations == 0 && o.q1k_law_ok && o.observation_ok && secs < 1800.0, d.str()};
}

Outcome criterion4(Shared& sh) {
  std::mt19937_64 rng(20240809);
  const PrimeTable& table = sh.base();
  double e_hi = step_up(std::numbers::e);
  uint64_t four_hits = 0, sigma_ge1 = 0;
  bool ok = true;
  std::ostringstream d;
  auto check_one = [&](const std::vector<uint64_t>& primes) {
    Radical rad = Radical::from_sorted_primes_unchecked(primes);
    MediantResult m = mediant_T(rad);
    bool is_two = (rad.k() == 1 && rad.smallest() == 2);
    if (!(m.T.enc.lo > e_hi)) ok = false;
    if (is_two) {
      if (!(m.T.enc.hi == 4.0 && m.T.enc.lo == 4.0)) ok = false;
      ++four_hits;
    } else if (!(m.T.enc.hi < 4.0)) {
      ok = false;
      d << "T touches 4 at " << rad.to_string() << " ";
    }
    CertifiedReal sig = sigma_inv(rad);
    bool sigma_at_least_one = sig.exact ? (*sig.exact >= 1) : (sig.enc.lo >= 1.0);
    if (sigma_at_least_one) {
      ++sigma_ge1;
      if (!(m.T.enc.hi < 3.6)) {
        ok = false;
        d << "T >= 3.6 with sigma >= 1 at " << rad.to_string() << " ";
      }
    }
  };
  for (int i = 0; i < 10000; ++i) check_one(sample_radical(rng, table, 30));
  check_one({2});  // the boundary case itself
  // uniform sampling from primes <= 1e4 almost never reaches sigma >= 1, so
  // drive the 3.6 clause with primorials and small-prime-biased radicals
  for (std::size_t k = 2; k <= 30; ++k) {
    std::vector<uint64_t> primes;
    for (std::size_t i = 1; i <= k; ++i) primes.push_back(table.nth_prime(i));
    check_one(primes);
  }
  for (int i = 0; i < 500; ++i) {
    std::set<uint64_t> chosen;
    std::uniform_int_distribution<std::size_t> pick(1, 25);
    std::size_t k = 3 + rng() % 20;
    while (chosen.size() < k) chosen.insert(table.nth_prime(pick(rng)));
    check_one({chosen.begin(), chosen.end()});
  }
  std::ostringstream out;
  out << "10530 radicals, " << sigma_ge1 << " with sigma>=1, boundary hit " << four_hits
      << "x; " << d.str();
  return {ok && four_hits >= 1 && sigma_ge1 > 100, out.str()};
}

Outcome criterion5(Shared& sh) {
  const PrimeTable& table = sh.base();
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckResult> rs = run_crossover_suite(table);
  double secs = seconds_since(t0);
  bool ok = true;
  std::ostringstream d;
  for (const CheckResult& r : rs) {
    ok = ok && r.pass;
    if (!r.pass) d << r.name << " failed ";
  }
  d << "3 crossover claims, " << std::fixed << std::setprecision(3) << secs
    << "s (budget 1s)";
  return {ok && secs < 1.0, d.str()};
}

Outcome criterion6(Shared& sh) {
  Interval head = sh.base().recip_sum(3, 26);
  bool ok = head.hi < 0.9;
  std::ostringstream d;
  d << "sum(p_4..p_29) upper end " << head.hi;
  if (sh.full) {
    auto t0 = std::chrono::steady_clock::now();
    const PrimeTable& big = sh.big();
    double build = sh.full_table_seconds;
    if (big.count() < 148 + 5'761'308) return {false, "full table too small"};
    Interval tail = big.recip_sum(148, 5'761'308);
    Interval thr = isub(Interval::point(1.0),
                        idiv(Interval::point(1.0), Interval::point(1714.0)));
    // The criterion as stated: certified lower end above 1 - 1/1714.  The
    // certified sum is 0.998470..., so this check CANNOT pass; the source
    // text's own closure step (1102 < 5761308^{9/20}) needs the opposite
    // direction, which does hold and is verified by the appendix suite.
    bool literal_ok = tail.lo > thr.hi;
    bool corrected_ok = tail.hi < thr.lo;
    bool count_ok = big.count_leq(100'000'000) == 5'761'455;  // independently derived
    double secs = seconds_since(t0) + build;
    ok = ok && literal_ok && count_ok && secs < 600.0;
    d << "; 5,761,308-term sum enclosure [" << std::setprecision(12) << tail.lo << ", "
      << tail.hi << "] vs threshold " << thr.lo << ": literal '>' "
      << (literal_ok ? "holds" : "FAILS (sign slip in the source; see notes)")
      << ", opposite direction " << (corrected_ok ? "certifies" : "unknown") << ", pi(1e8) "
      << (count_ok ? "ok" : "WRONG") << ", " << std::setprecision(1) << std::fixed << secs
      << "s (budget 600s)";
  }
  return {ok, d.str()};
}

Outcome criterion7(Shared& sh) {
  const PrimeTable& table = sh.full ? sh.big() : sh.base();
  std::size_t m_hi = sh.full ? 148 : 60;
  bool all = false;
  std::vector<SpecialSumResult> rs = verify_u_threshold(table, 20, m_hi, &all);
  bool closure = closure_check_1102();
  std::ostringstream d;
  d << "m=20.." << m_hi << ": " << rs.size() << " thresholds, u(20)=" << rs.front().u
    << ", closure " << (closure ? "ok" : "FAILED");
  return {all && closure, d.str()};
}

Outcome criterion8(Shared& sh) {
  const PrimeTable& table = sh.full ? sh.big() : sh.base();
  uint64_t limit = sh.full ? 100'000'000ull : 10'000'000ull;
  bool s = verify_sigma_upper(table, limit);
  bool p = verify_pi_lower(table, limit);
  std::ostringstream d;
  d << "sigma/pi sweeps to " << limit << (s && p ? " clean" : " VIOLATED");
  return {s && p, d.str()};
}

Outcome criterion9(Shared& sh) {
  std::mt19937_64 rng(987654321);
  const PrimeTable& table = sh.base();
  uint64_t checks = 0, failures = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<uint64_t> primes = sample_radical(rng, table, 12);
    Radical rad = Radical::from_sorted_primes_unchecked(primes);
    Int n = rad.product();
    Int phi = 1;
    for (uint64_t q : primes) phi *= (q - 1);
    Int cap = (Int(1) << (primes.size() - 1)) * n;
    auto check_x = [&](const Int& x) {
      Int lhs = totative_count(rad, x) * n - x * phi;
      if (lhs < 0) lhs = -lhs;
      ++checks;
      if (lhs > cap) ++failures;
    };
    for (int s = 0; s < 6; ++s) {
      Int x = 0;
      for (int w = 0; w < 4; ++w) x = (x << 64) | rng();
      check_x(x % (n + 1));
    }
    check_x(Int(0));
    check_x(n);
  }
  std::ostringstream d;
  d << checks << " discrepancy checks, " << failures << " failures";
  return {failures == 0, d.str()};
}

Outcome criterion10(Shared& sh) {
  const std::vector<uint32_t>& memo = sh.memo();
  const uint64_t limit = 100'000;
  std::vector<uint32_t> spf = smallest_prime_factor_sieve(limit);
  uint64_t checks = 0, violations = 0;
  bool equality_seen = false;
  std::vector<uint64_t> primes;
  for (uint64_t n = 2; n <= limit; ++n) {
    if (!squarefree_radical(spf, n, primes)) continue;
    std::size_t k = primes.size();
    if (k < 2) continue;
    uint64_t g_n = memo[n];
    for (uint64_t mask = 1; mask + 1 < (uint64_t(1) << k); ++mask) {
      uint64_t f = 1;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (uint64_t(1) << i)) f *= primes[i];
      uint64_t dd = n / f;
      uint64_t rhs = uint64_t(memo[dd]) * f - f + memo[f];
      ++checks;
      if (g_n > rhs) ++violations;
      if (g_n == rhs) equality_seen = true;
    }
  }
  std::ostringstream d;
  d << checks << " coprime splits, " << violations << " violations, equality "
    << (equality_seen ? "seen" : "NEVER SEEN");
  return {violations == 0 && equality_seen, d.str()};
}

Outcome criterion11(Shared& sh) {
  const PrimeTable& table = sh.base();
  bool ok = true;
  std::size_t first_bad = 0;
  for (std::size_t k = 5; k <= 10'000; ++k) {
    std::size_t s_sp = sigma_pi_s_choice(table.prefix_recip(k), 4.0);
    std::size_t s_st = stevens_s_choice(table.nth_prime(k));
    if (s_sp > s_st) {
      ok = false;
      first_bad = k;
      break;
    }
  }
  // the standalone choosers match the full operations where sampled
  for (std::size_t k : {std::size_t(5), std::size_t(50), std::size_t(500),
                        std::size_t(5000), std::size_t(10000)}) {
    Radical rad = Radical::first_k_primes(table, k);
    if (std::stoull(bound_sigma_pi(rad).params.at("s")) !=
        sigma_pi_s_choice(table.prefix_recip(k), 4.0))
      ok = false;
    if (std::stoull(bound_stevens_refined(rad).params.at("s")) !=
        stevens_s_choice(table.nth_prime(k)))
      ok = false;
  }
  std::ostringstream d;
  if (ok)
    d << "s(sigma_pi) <= s(stevens) for all 4 < k <= 1e4; op spot-checks agree";
  else
    d << "exponent comparison failed near k=" << first_bad;
  return {ok, d.str()};
}

Outcome criterion12(Shared&) {
  fs::path dir = fs::temp_directory_path() / "jac_acceptance";
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  for (unsigned threads : {1u, 4u, 8u}) {
    fs::path file = dir / ("report_t" + std::to_string(threads) + ".csv");
    std::string cmd = std::string("\"") + JAC_CLI_PATH + "\" report --k 1..9 --csv --threads " +
                      std::to_string(threads) + " --out " + file.string() + " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed"};
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    outputs.push_back(ss.str());
  }
  bool ok = outputs.size() == 3 && !outputs[0].empty() && outputs[0] == outputs[1] &&
            outputs[1] == outputs[2];
  std::size_t lines = std::count(outputs[0].begin(), outputs[0].end(), '\n');
  std::ostringstream d;
  d << "3 runs x " << lines << " lines, byte-identical: " << (ok ? "yes" : "NO");
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  Shared sh;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0) sh.full = true;
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
    }
  }

  struct Entry {
    int id;
    const char* title;
    std::function<Outcome(Shared&)> run;
  };
  std::vector<Entry> criteria = {
      {1, "oracle equivalence to 1e5 and P_1..P_7", criterion1},
      {2, "exact primorial scans P_1..P_9, thread invariant", criterion2},
      {3, "bound soundness sweep over squarefree n <= 1e6", criterion3},
      {4, "mediant invariant e < T <= 4 on 1e4 random radicals", criterion4},
      {5, "crossover claims (k>300, k>5e6, k>e^11)", criterion5},
      {6, "appendix reciprocal sums", criterion6},
      {7, "appendix u-thresholds m=20..60/148 and 1102 closure", criterion7},
      {8, "mertens sweeps sigma/pi", criterion8},
      {9, "totative discrepancy <= 2^{k-1}", criterion9},
      {10, "observation inequality over all coprime splits to 1e5", criterion10},
      {11, "exponent comparison s(sigma_pi) <= s(stevens)", criterion11},
      {12, "byte-identical report CSV across 1/4/8 threads", criterion12},
  };

  bool all_pass = true;
  for (const Entry& e : criteria) {
    if (!only.empty() && !only.count(e.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run(sh);
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    double secs = seconds_since(t0);
    std::printf("%s criterion %2d: %s — %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", e.id,
                e.title, o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  std::printf(all_pass ? "ACCEPTANCE: all selected criteria passed\n"
                       : "ACCEPTANCE: FAILURES PRESENT\n");
  return all_pass ? 0 : 1;
}
