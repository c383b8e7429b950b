#ifndef JACOBSTHAL_CONFIG_HPP
#define JACOBSTHAL_CONFIG_HPP

#include <cstdint>
#include <string>

namespace jac {

// Runtime knobs shared by every subcommand.  Precedence when assembling:
// flags > environment (JACOBSTHAL_*) > config file > these defaults.
struct RunConfig {
  uint64_t sieve_limit = 10'000'000;
  uint64_t scan_budget = 10'000'000'000ull;
  unsigned threads = 0;  // 0 = all hardware threads
  std::string cache_dir;
  std::string format = "human";  // human | csv | json
  bool full_appendix = false;

  std::string to_json_string() const;
  static RunConfig from_json_string(const std::string& text);

  static RunConfig load_file(const std::string& path);
  void save_file(const std::string& path) const;

  // JACOBSTHAL_SIEVE_LIMIT, JACOBSTHAL_SCAN_BUDGET, JACOBSTHAL_THREADS,
  // JACOBSTHAL_CACHE_DIR, JACOBSTHAL_FORMAT, JACOBSTHAL_FULL
  void apply_environment();

  void validate() const;  // throws ParseError on bad fields
};

}  // namespace jac

#endif
