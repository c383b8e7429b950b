#ifndef JACOBSTHAL_NUMERIC_HPP
#define JACOBSTHAL_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "jacobsthal/interval.hpp"

namespace jac {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact dyadic rational of a finite double (boost's conversion is exact).
inline Rat rat_from_double(double d) { return Rat(d); }

// Verified enclosure of an exact rational.  convert_to<double> has an
// unspecified rounding direction, so widen until the value is inside.
inline Interval to_interval(const Rat& r) {
  double d = r.convert_to<double>();
  double lo = d, hi = d;
  while (Rat(lo) > r) lo = step_down(lo);
  while (Rat(hi) < r) hi = step_up(hi);
  return {lo, hi};
}

inline Int floor_rat(const Rat& r) {
  Int q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int f = floor_rat(r);
  return (Rat(f) == r) ? f : f + 1;
}

// Enclosure of v as a double interval (v >= 0).
inline Interval ifrom_int(const Int& v) {
  if (v == 0) return Interval::point(0.0);
  if (v <= Int(uint64_t(1) << 53)) return Interval::point(v.convert_to<double>());
  unsigned bits = boost::multiprecision::msb(v);  // index of top bit
  unsigned shift = bits - 52;
  Int t = v >> shift;  // 53 significant bits
  double td = t.convert_to<double>();
  double scale = std::ldexp(1.0, static_cast<int>(shift));
  // v in [t, t+1) * 2^shift
  return {step_down(td * scale), step_up((td + 1.0) * scale)};
}

// Enclosure of log2(v) for v >= 1.
inline Interval log2_int(const Int& v) {
  if (v <= Int(uint64_t(1) << 53)) {
    return ilog2(Interval::point(v.convert_to<double>()));
  }
  unsigned bits = boost::multiprecision::msb(v);
  unsigned shift = bits - 52;
  Int t = v >> shift;
  double td = t.convert_to<double>();
  double lo = step_down(step_down2(std::log2(td)) + static_cast<double>(shift));
  double hi = step_up(step_up2(std::log2(td + 1.0)) + static_cast<double>(shift));
  return {lo, hi};
}

// -1, 0, +1 comparison of an exact rational against a double.
inline int cmp_rat_double(const Rat& r, double d) {
  Rat rd(d);
  if (r < rd) return -1;
  if (r > rd) return 1;
  return 0;
}

}  // namespace jac

#endif
