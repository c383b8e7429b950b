#include "jacobsthal/prime_table.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "jacobsthal/errors.hpp"
#include "jacobsthal/parallel.hpp"

namespace jac {

namespace {

// 2^21 bits of sieve per segment (256 KiB), odds only, so one segment spans
// 2^22 integers.
constexpr uint64_t kSegmentBits = uint64_t(1) << 21;
constexpr uint64_t kSegmentSpan = kSegmentBits * 2;

std::vector<uint32_t> small_odd_primes(uint64_t up_to) {
  std::vector<bool> comp(up_to + 1, false);
  std::vector<uint32_t> out;
  for (uint64_t i = 3; i <= up_to; i += 2) {
    if (comp[i]) continue;
    out.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= up_to; j += 2 * i) comp[j] = true;
  }
  return out;
}

uint64_t fnv1a64(const unsigned char* data, std::size_t len, uint64_t h = 0xcbf29ce484222325ull) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

// Error-free transformation: s + e == a + b exactly.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bp = s - a;
  e = (a - (s - bp)) + (b - bp);
}

}  // namespace

PrimeTable::PrimeTable(uint64_t limit, unsigned threads) {
  if (limit < 2 || limit > kMaxLimit)
    throw CapacityError("sieve limit must be in [2, 2e8], got " + std::to_string(limit));
  limit_ = limit;
  sieve(threads);
  build_prefix();
}

void PrimeTable::sieve(unsigned threads) {
  primes_.clear();
  primes_.push_back(2);
  if (limit_ < 3) return;

  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit_))) + 2;
  std::vector<uint32_t> base = small_odd_primes(root);

  uint64_t n_segments = (limit_ - 3) / kSegmentSpan + 1;
  std::vector<std::vector<uint64_t>> found(n_segments);

  parallel_for(n_segments, threads, [&](std::size_t seg) {
    uint64_t lo = 3 + seg * kSegmentSpan;  // odd
    uint64_t hi = std::min(lo + kSegmentSpan - 1, limit_);
    uint64_t bits = (hi - lo) / 2 + 1;
    std::vector<uint64_t> mark((bits + 63) / 64, 0);
    for (uint32_t p : base) {
      uint64_t p2 = uint64_t(p) * p;
      if (p2 > hi) break;
      uint64_t start = std::max<uint64_t>(p2, ((lo + p - 1) / p) * p);
      if ((start & 1) == 0) start += p;
      for (uint64_t m = start; m <= hi; m += 2 * uint64_t(p)) {
        uint64_t bit = (m - lo) / 2;
        mark[bit >> 6] |= uint64_t(1) << (bit & 63);
      }
    }
    std::vector<uint64_t>& out = found[seg];
    for (uint64_t b = 0; b < bits; ++b) {
      if (!(mark[b >> 6] & (uint64_t(1) << (b & 63)))) out.push_back(lo + 2 * b);
    }
  });

  std::size_t total = 1;
  for (const auto& v : found) total += v.size();
  primes_.reserve(total);
  for (const auto& v : found) primes_.insert(primes_.end(), v.begin(), v.end());
}

void PrimeTable::build_prefix() {
  recip_prefix_.clear();
  recip_prefix_.reserve(primes_.size());
  double s = 0.0, c = 0.0, err = 0.0;
  for (uint64_t p : primes_) {
    double t = 1.0 / static_cast<double>(p);
    err = step_up(err + half_ulp(t));  // reciprocal rounding
    double e;
    two_sum(s, t, s, e);
    c += e;  // compensation; its own rounding is bounded next
    if (c != 0.0) err = step_up(err + half_ulp(std::fabs(c)));
    double folded = s + c;
    recip_prefix_.push_back({folded, step_up(err + half_ulp(folded))});
  }
}

uint64_t PrimeTable::nth_prime(std::size_t i) const {
  if (i == 0 || i > primes_.size())
    throw CapacityError("prime index " + std::to_string(i) + " outside table of " +
                        std::to_string(primes_.size()) + " primes");
  return primes_[i - 1];
}

std::size_t PrimeTable::count_leq(uint64_t x) const {
  if (x > limit_)
    throw CapacityError("pi(x) queried beyond sieve limit");
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

Int PrimeTable::primorial(std::size_t k) const {
  if (k == 0) return Int(1);
  if (k > primes_.size())
    throw CapacityError("primorial index " + std::to_string(k) + " outside table");
  // Balanced product tree keeps the multiplications near-equal in size.
  std::vector<Int> layer;
  layer.reserve(k);
  for (std::size_t i = 0; i < k; ++i) layer.emplace_back(primes_[i]);
  while (layer.size() > 1) {
    std::vector<Int> next;
    next.reserve((layer.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(layer[i] * layer[i + 1]);
    if (layer.size() & 1) next.push_back(layer.back());
    layer.swap(next);
  }
  return layer.front();
}

Interval PrimeTable::prefix_recip(std::size_t c) const {
  if (c == 0) return Interval::point(0.0);
  if (c > primes_.size()) throw CapacityError("prefix index outside table");
  const CompensatedSum& r = recip_prefix_[c - 1];
  return {step_down(r.sum - r.err), step_up(r.sum + r.err)};
}

Interval PrimeTable::recip_sum(std::size_t m, std::size_t u) const {
  if (m + u > primes_.size())
    throw CapacityError("reciprocal sum needs prime index " + std::to_string(m + u) +
                        ", table has " + std::to_string(primes_.size()));
  return isub(prefix_recip(m + u), prefix_recip(m));
}

bool PrimeTable::check_rs_theorem6(std::size_t k) const {
  if (k <= 5) throw DomainError("RS theorem 6 requires k > 5");
  Interval lp = ilog(ifrom_u64(nth_prime(k)));
  Interval lk = ilog(ifrom_u64(k));
  Interval rhs = iadd(lk, ilog(iadd(lk, ilog(lk))));
  return certainly_less(lp, rhs) == Cmp3::True;
}

bool PrimeTable::check_rs_theorem5(double x) const {
  if (!(x >= 286.0) || x > static_cast<double>(limit_))
    throw DomainError("RS theorem 5 check requires 286 <= x <= sieve limit");
  Interval s = prefix_recip(count_leq(static_cast<uint64_t>(x)));
  Interval lx = ilog(Interval::point(x));
  Interval center = iadd(ilog(lx), MertensConstants::B_enclosure());
  Interval half = idiv(Interval::point(1.0), imul(Interval::point(2.0), imul(lx, lx)));
  Interval upper = iadd(center, half);
  Interval lower = isub(center, half);
  return s.hi <= upper.lo && s.lo >= lower.hi;
}

bool PrimeTable::check_rs_theorem20(double x) const {
  if (!(x >= 2.0) || x > static_cast<double>(limit_) || x > 1e8)
    throw DomainError("RS theorem 20 check requires 2 <= x <= min(1e8, sieve limit)");
  Interval s = prefix_recip(count_leq(static_cast<uint64_t>(x)));
  Interval lx = ilog(Interval::point(x));
  Interval center = iadd(ilog(lx), MertensConstants::B_enclosure());
  return s.lo > center.hi;
}

std::string PrimeTable::cache_file_name(uint64_t limit) {
  return "jprimes_" + std::to_string(limit) + ".bin";
}

void PrimeTable::save_cache(const std::string& path) const {
  std::vector<unsigned char> payload;
  payload.reserve(16 + 2 * primes_.size());
  auto put_u64 = [&](uint64_t v) {
    for (int i = 0; i < 8; ++i) payload.push_back(static_cast<unsigned char>(v >> (8 * i)));
  };
  put_u64(limit_);
  put_u64(primes_.size());
  uint64_t prev = 0;
  for (uint64_t p : primes_) {
    uint64_t gap = p - prev;
    payload.push_back(static_cast<unsigned char>(gap & 0xff));
    payload.push_back(static_cast<unsigned char>(gap >> 8));
    prev = p;
  }
  uint64_t sum = fnv1a64(payload.data(), payload.size());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CapacityError("cannot write prime cache: " + path);
  out.write("JPRIMES1", 8);
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  unsigned char tail[8];
  for (int i = 0; i < 8; ++i) tail[i] = static_cast<unsigned char>(sum >> (8 * i));
  out.write(reinterpret_cast<const char*>(tail), 8);
}

bool PrimeTable::try_load_cache(const std::string& path, uint64_t limit,
                                std::vector<uint64_t>& primes_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, "JPRIMES1", 8) != 0) return false;
  std::vector<unsigned char> payload((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
  if (payload.size() < 24) return false;
  std::size_t body = payload.size() - 8;
  uint64_t stored = 0;
  for (int i = 0; i < 8; ++i) stored |= uint64_t(payload[body + i]) << (8 * i);
  if (fnv1a64(payload.data(), body) != stored) return false;

  auto get_u64 = [&](std::size_t at) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(payload[at + i]) << (8 * i);
    return v;
  };
  uint64_t file_limit = get_u64(0);
  uint64_t count = get_u64(8);
  if (file_limit != limit) return false;
  if (body != 16 + 2 * count) return false;

  primes_out.clear();
  primes_out.reserve(count);
  uint64_t prev = 0;
  for (uint64_t i = 0; i < count; ++i) {
    uint64_t gap = payload[16 + 2 * i] | (uint64_t(payload[16 + 2 * i + 1]) << 8);
    prev += gap;
    primes_out.push_back(prev);
  }
  return true;
}

PrimeTable PrimeTable::load_or_build(uint64_t limit, const std::string& cache_dir,
                                     unsigned threads) {
  if (limit < 2 || limit > kMaxLimit)
    throw CapacityError("sieve limit must be in [2, 2e8], got " + std::to_string(limit));
  if (!cache_dir.empty()) {
    std::filesystem::path file = std::filesystem::path(cache_dir) / cache_file_name(limit);
    std::vector<uint64_t> primes;
    if (try_load_cache(file.string(), limit, primes)) {
      PrimeTable t;
      t.limit_ = limit;
      t.primes_ = std::move(primes);
      t.build_prefix();
      return t;
    }
  }
  PrimeTable t(limit, threads);
  if (!cache_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (!ec) {
      std::filesystem::path file = std::filesystem::path(cache_dir) / cache_file_name(limit);
      t.save_cache(file.string());
    }
  }
  return t;
}

}  // namespace jac
