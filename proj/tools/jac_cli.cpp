#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "jacobsthal/analysis.hpp"
#include "jacobsthal/bounds.hpp"
#include "jacobsthal/config.hpp"
#include "jacobsthal/errors.hpp"
#include "jacobsthal/prime_table.hpp"
#include "jacobsthal/radical.hpp"
#include "jacobsthal/scan.hpp"

namespace {

using jac::RunConfig;

struct Cli {
  RunConfig cfg;
  std::string command;

  // exact / bounds / witness
  std::string radical_spec;
  std::vector<std::string> which;
  std::string perm_spec;

  // verify
  std::string suite;
  uint64_t soundness_limit = 100'000;

  // report
  std::string k_range;
  std::string out_path;

  // cache
  std::string cache_action;
  std::string cache_path;
};

std::vector<uint64_t> parse_u64_list(const std::string& csv, const char* what) {
  std::vector<uint64_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoull(tok));
    } catch (...) {
      throw jac::ParseError(std::string("bad ") + what + " element: " + tok);
    }
  }
  if (out.empty()) throw jac::ParseError(std::string("empty ") + what);
  return out;
}

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& spec) {
  auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t k = std::stoull(spec);
      return {k, k};
    }
    std::size_t lo = std::stoull(spec.substr(0, dots));
    std::size_t hi = std::stoull(spec.substr(dots + 2));
    if (lo == 0 || hi < lo) throw jac::ParseError("empty k range: " + spec);
    return {lo, hi};
  } catch (const jac::ParseError&) {
    throw;
  } catch (...) {
    throw jac::ParseError("bad k range: " + spec);
  }
}

void emit(std::ostream& os, const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    os << text;
    return;
  }
  std::ofstream f(out_path, std::ios::trunc);
  if (!f) throw jac::ParseError("cannot write output file: " + out_path);
  f << text;
}

int cmd_exact(const Cli& cli) {
  jac::PrimeTable table = jac::PrimeTable::load_or_build(
      std::min<uint64_t>(cli.cfg.sieve_limit, jac::PrimeTable::kMaxLimit), cli.cfg.cache_dir,
      cli.cfg.threads);
  jac::Radical rad = jac::Radical::parse(cli.radical_spec, &table);
  jac::ScanResult r = jac::g_exact(rad, cli.cfg.scan_budget, cli.cfg.threads);
  if (cli.cfg.format == "json") {
    nlohmann::ordered_json j;
    j["radical"] = nlohmann::ordered_json::parse(rad.to_json());
    j["n"] = r.n;
    j["g"] = r.g;
    j["L"] = r.L;
    j["a"] = r.a;
    j["b"] = r.b;
    j["witness_start"] = r.witness_start;
    std::cout << j.dump(2) << "\n";
  } else if (cli.cfg.format == "csv") {
    std::cout << "radical,n,g,L,a,b,witness_start\n"
              << rad.to_string() << ',' << r.n << ',' << r.g << ',' << r.L << ',' << r.a << ','
              << r.b << ',' << r.witness_start << "\n";
  } else {
    std::cout << "radical   " << rad.to_string() << "\n"
              << "n         " << r.n << "\n"
              << "g(n)      " << r.g << "\n"
              << "L(n)      " << r.L << "\n"
              << "a(n)      " << r.a << "\n"
              << "b(n)      " << r.b << "\n"
              << "witness   (" << r.witness_start << ", " << (r.witness_start + r.L)
              << "] all nontotative\n";
  }
  return 0;
}

int cmd_bounds(const Cli& cli) {
  jac::PrimeTable table = jac::PrimeTable::load_or_build(
      std::min<uint64_t>(cli.cfg.sieve_limit, jac::PrimeTable::kMaxLimit), cli.cfg.cache_dir,
      cli.cfg.threads);
  jac::Radical rad = jac::Radical::parse(cli.radical_spec, &table);
  std::vector<jac::TableRow> rows = jac::bound_table({rad}, cli.which, cli.cfg.scan_budget);
  if (cli.cfg.format == "json") {
    std::cout << jac::table_to_json(rows) << "\n";
  } else if (cli.cfg.format == "csv") {
    std::cout << jac::table_to_csv(rows);
  } else {
    for (const jac::TableRow& row : rows) {
      const jac::BoundReport& r = row.report;
      std::cout << r.name;
      for (std::size_t i = r.name.size(); i < 22; ++i) std::cout << ' ';
      if (r.applicable) {
        std::cout << (r.target == "L" ? "L <= " : "g <= ") << r.value->to_string();
      } else {
        std::cout << "inapplicable: " << r.reason;
      }
      if (!r.params.empty()) {
        std::cout << "   [";
        bool first = true;
        for (const auto& [k, v] : r.params) {
          if (!first) std::cout << ", ";
          std::cout << k << "=" << v;
          first = false;
        }
        std::cout << "]";
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_witness(const Cli& cli) {
  jac::Radical rad = jac::Radical::parse(cli.radical_spec, nullptr);
  std::vector<uint64_t> perm;
  if (cli.perm_spec.empty()) {
    for (uint64_t i = 1; i <= rad.k(); ++i) perm.push_back(i);
  } else {
    perm = parse_u64_list(cli.perm_spec, "permutation");
  }
  jac::Witness w = jac::crt_witness(rad, perm);
  bool ok = jac::verify_witness(rad, w);
  if (cli.cfg.format == "json") {
    nlohmann::ordered_json j;
    j["radical"] = nlohmann::ordered_json::parse(rad.to_json());
    j["start"] = w.start.str();
    j["length"] = w.length;
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& [q, t] : w.assignment) a.push_back({{"prime", q}, {"residue_index", t}});
    j["assignment"] = a;
    j["gcd_verified"] = ok;
    std::cout << j.dump(2) << "\n";
  } else if (cli.cfg.format == "csv") {
    std::cout << "radical,start,length,gcd_verified\n"
              << rad.to_string() << ',' << w.start.str() << ',' << w.length << ','
              << (ok ? "true" : "false") << "\n";
  } else {
    std::cout << "start     " << w.start.str() << "\n"
              << "interval  (" << w.start.str() << ", " << jac::Int(w.start + w.length).str()
              << "] all nontotative\n"
              << "verified  " << (ok ? "yes (gcd checked)" : "NO") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_verify(const Cli& cli) {
  uint64_t sieve = cli.cfg.sieve_limit;
  if (cli.suite == "appendix") {
    // The m = 148 minimal-u search runs just past 1.017e8.
    uint64_t need = cli.cfg.full_appendix ? 102'000'000ull : 10'000'000ull;
    sieve = std::max(sieve, need);
  }
  if (cli.suite == "crossovers") sieve = std::max(sieve, uint64_t(10'000'000));
  jac::PrimeTable table = jac::PrimeTable::load_or_build(
      std::min<uint64_t>(sieve, jac::PrimeTable::kMaxLimit), cli.cfg.cache_dir, cli.cfg.threads);

  std::vector<jac::CheckResult> results;
  if (cli.suite == "appendix") {
    results = jac::run_appendix_suite(table, cli.cfg.full_appendix);
  } else if (cli.suite == "crossovers") {
    results = jac::run_crossover_suite(table);
  } else if (cli.suite == "soundness") {
    results = jac::run_soundness_suite(table, cli.soundness_limit);
  } else {
    throw jac::ParseError("unknown suite: " + cli.suite +
                          " (expected appendix, soundness, or crossovers)");
  }

  bool all = true;
  if (cli.cfg.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const jac::CheckResult& r : results) {
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      all = all && r.pass;
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const jac::CheckResult& r : results) {
      std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
      if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
      std::cout << "\n";
      all = all && r.pass;
    }
    std::cout << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
  }
  return all ? 0 : 1;
}

int cmd_report(const Cli& cli) {
  auto [klo, khi] = parse_k_range(cli.k_range);
  jac::PrimeTable table = jac::PrimeTable::load_or_build(
      std::min<uint64_t>(cli.cfg.sieve_limit, jac::PrimeTable::kMaxLimit), cli.cfg.cache_dir,
      cli.cfg.threads);
  if (khi > table.count()) throw jac::CapacityError("k range beyond prime table");
  std::vector<jac::Radical> inputs;
  for (std::size_t k = klo; k <= khi; ++k)
    inputs.push_back(jac::Radical::first_k_primes(table, k));
  std::vector<jac::TableRow> rows = jac::bound_table(inputs, cli.which, cli.cfg.scan_budget);
  if (cli.cfg.format == "json") {
    emit(std::cout, jac::table_to_json(rows) + "\n", cli.out_path);
  } else {
    // csv is the natural default for report; human falls back to csv too.
    emit(std::cout, jac::table_to_csv(rows), cli.out_path);
  }
  return 0;
}

int cmd_cache(const Cli& cli) {
  if (cli.cache_action == "build") {
    if (cli.cfg.cache_dir.empty())
      throw jac::ParseError("cache build needs --cache-dir (or JACOBSTHAL_CACHE_DIR)");
    jac::PrimeTable table = jac::PrimeTable::load_or_build(cli.cfg.sieve_limit,
                                                           cli.cfg.cache_dir, cli.cfg.threads);
    std::cout << "cached " << table.count() << " primes up to " << table.limit() << " in "
              << cli.cfg.cache_dir << "/" << jac::PrimeTable::cache_file_name(table.limit())
              << "\n";
    return 0;
  }
  if (cli.cache_action == "inspect") {
    std::ifstream in(cli.cache_path, std::ios::binary);
    if (!in) throw jac::ParseError("cannot read cache file: " + cli.cache_path);
    char magic[8];
    if (!in.read(magic, 8) || std::string(magic, 8) != "JPRIMES1") {
      std::cout << "invalid magic\n";
      return 1;
    }
    uint64_t limit = 0;
    unsigned char b8[8];
    in.read(reinterpret_cast<char*>(b8), 8);
    for (int i = 0; i < 8; ++i) limit |= uint64_t(b8[i]) << (8 * i);
    std::vector<uint64_t> primes;
    bool ok = jac::PrimeTable::try_load_cache(cli.cache_path, limit, primes);
    std::cout << "limit     " << limit << "\n"
              << "checksum  " << (ok ? "ok" : "MISMATCH") << "\n";
    if (ok)
      std::cout << "count     " << primes.size() << "\n"
                << "largest   " << (primes.empty() ? 0 : primes.back()) << "\n";
    return ok ? 0 : 1;
  }
  throw jac::ParseError("unknown cache action: " + cli.cache_action);
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{"Jacobsthal function toolkit: exact values, certified bounds, verifications"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  uint64_t flag_sieve = 0, flag_budget = 0;
  unsigned flag_threads = 0;
  std::string flag_cache, flag_format;
  bool flag_full = false;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--sieve-limit", flag_sieve, "prime table limit");
  app.add_option("--scan-budget", flag_budget, "largest n for exact scans");
  app.add_option("--threads", flag_threads, "worker threads (0 = all cores)");
  app.add_option("--cache-dir", flag_cache, "prime cache directory");
  app.add_option("--format", flag_format, "human | csv | json");
  app.add_flag("--full", flag_full, "run full-scale appendix verifications");

  CLI::App* c_exact = app.add_subcommand("exact", "exact g, L, a, b by a full-period scan");
  c_exact->add_option("radical", cli.radical_spec, "radical spec")->required();

  CLI::App* c_bounds = app.add_subcommand("bounds", "evaluate the bound suite");
  c_bounds->add_option("radical", cli.radical_spec, "radical spec")->required();
  c_bounds->add_option("--which", cli.which, "bound names to include")->delimiter(',');
  bool bounds_json = false, bounds_csv = false;
  c_bounds->add_flag("--json", bounds_json, "shorthand for --format json");
  c_bounds->add_flag("--csv", bounds_csv, "shorthand for --format csv");

  CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", cli.suite, "appendix | soundness | crossovers")->required();
  c_verify->add_option("--limit", cli.soundness_limit, "soundness sweep limit");

  CLI::App* c_witness = app.add_subcommand("witness", "CRT nontotative-run witness");
  c_witness->add_option("radical", cli.radical_spec, "radical spec")->required();
  c_witness->add_option("--perm", cli.perm_spec, "permutation of 1..k");

  CLI::App* c_report = app.add_subcommand("report", "bound table over primorials");
  c_report->add_option("--k", cli.k_range, "k range, e.g. 1..9")->required();
  c_report->add_option("--which", cli.which, "bound names to include")->delimiter(',');
  c_report->add_option("--out", cli.out_path, "write to file instead of stdout");
  bool report_json = false, report_csv = false;
  c_report->add_flag("--json", report_json, "shorthand for --format json");
  c_report->add_flag("--csv", report_csv, "shorthand for --format csv");

  CLI::App* c_cache = app.add_subcommand("cache", "build or inspect the prime cache");
  c_cache->add_option("action", cli.cache_action, "build | inspect")->required();
  c_cache->add_option("path", cli.cache_path, "cache file (inspect)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    // Precedence: defaults < config file < environment < flags.
    if (!config_path.empty()) cli.cfg = RunConfig::load_file(config_path);
    cli.cfg.apply_environment();
    if (app.count("--sieve-limit")) cli.cfg.sieve_limit = flag_sieve;
    if (app.count("--scan-budget")) cli.cfg.scan_budget = flag_budget;
    if (app.count("--threads")) cli.cfg.threads = flag_threads;
    if (app.count("--cache-dir")) cli.cfg.cache_dir = flag_cache;
    if (app.count("--format")) cli.cfg.format = flag_format;
    if (flag_full) cli.cfg.full_appendix = true;
    if (bounds_json || report_json) cli.cfg.format = "json";
    if (bounds_csv || report_csv) cli.cfg.format = "csv";
    cli.cfg.validate();

    if (c_exact->parsed()) return cmd_exact(cli);
    if (c_bounds->parsed()) return cmd_bounds(cli);
    if (c_verify->parsed()) return cmd_verify(cli);
    if (c_witness->parsed()) return cmd_witness(cli);
    if (c_report->parsed()) return cmd_report(cli);
    if (c_cache->parsed()) return cmd_cache(cli);
    return 2;
  } catch (const jac::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jac::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jac::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
