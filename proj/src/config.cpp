#include "jacobsthal/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jacobsthal/errors.hpp"

namespace jac {

std::string RunConfig::to_json_string() const {
  nlohmann::ordered_json j;
  j["sieve_limit"] = sieve_limit;
  j["scan_budget"] = scan_budget;
  j["threads"] = threads;
  j["cache_dir"] = cache_dir;
  j["format"] = format;
  j["full_appendix"] = full_appendix;
  return j.dump(2);
}

RunConfig RunConfig::from_json_string(const std::string& text) {
  RunConfig c;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad config JSON: ") + e.what());
  }
  if (j.contains("sieve_limit")) c.sieve_limit = j.at("sieve_limit").get<uint64_t>();
  if (j.contains("scan_budget")) c.scan_budget = j.at("scan_budget").get<uint64_t>();
  if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  if (j.contains("cache_dir")) c.cache_dir = j.at("cache_dir").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("full_appendix")) c.full_appendix = j.at("full_appendix").get<bool>();
  c.validate();
  return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

void RunConfig::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write config file: " + path);
  out << to_json_string() << "\n";
}

void RunConfig::apply_environment() {
  auto get = [](const char* name) -> const char* { return std::getenv(name); };
  if (const char* v = get("JACOBSTHAL_SIEVE_LIMIT")) sieve_limit = std::strtoull(v, nullptr, 10);
  if (const char* v = get("JACOBSTHAL_SCAN_BUDGET")) scan_budget = std::strtoull(v, nullptr, 10);
  if (const char* v = get("JACOBSTHAL_THREADS"))
    threads = static_cast<unsigned>(std::strtoul(v, nullptr, 10));
  if (const char* v = get("JACOBSTHAL_CACHE_DIR")) cache_dir = v;
  if (const char* v = get("JACOBSTHAL_FORMAT")) format = v;
  if (const char* v = get("JACOBSTHAL_FULL")) full_appendix = (std::string(v) == "1");
}

void RunConfig::validate() const {
  if (sieve_limit < 2) throw ParseError("sieve_limit must be at least 2");
  if (scan_budget < 2) throw ParseError("scan_budget must be at least 2");
  if (format != "human" && format != "csv" && format != "json")
    throw ParseError("format must be one of human, csv, json");
}

}  // namespace jac
