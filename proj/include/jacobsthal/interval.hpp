#ifndef JACOBSTHAL_INTERVAL_HPP
#define JACOBSTHAL_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace jac {

// Directed rounding by nextafter-stepping.  IEEE +,-,*,/ are correctly
// rounded, so one step past the computed value encloses the exact result.
// libm log/exp are only faithfully rounded; those get two steps.
inline double step_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
inline double step_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double step_up2(double x) { return step_up(step_up(x)); }
inline double step_down2(double x) { return step_down(step_down(x)); }

// Half an ulp of a positive value; exact (the gap is a power of two).
inline double half_ulp(double x) { return (step_up(x) - x) * 0.5; }

// Closed interval [lo, hi] guaranteed to contain one exact real value.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }

  static Interval point(double x) { return {x, x}; }
};

inline Interval iadd(Interval a, Interval b) {
  return {step_down(a.lo + b.lo), step_up(a.hi + b.hi)};
}

inline Interval isub(Interval a, Interval b) {
  return {step_down(a.lo - b.hi), step_up(a.hi - b.lo)};
}

inline Interval imul(Interval a, Interval b) {
  double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {step_down(std::min(std::min(p1, p2), std::min(p3, p4))),
          step_up(std::max(std::max(p1, p2), std::max(p3, p4)))};
}

// b must not straddle zero.
inline Interval idiv(Interval a, Interval b) {
  double q1 = a.lo / b.lo, q2 = a.lo / b.hi, q3 = a.hi / b.lo, q4 = a.hi / b.hi;
  return {step_down(std::min(std::min(q1, q2), std::min(q3, q4))),
          step_up(std::max(std::max(q1, q2), std::max(q3, q4)))};
}

inline Interval ineg(Interval a) { return {-a.hi, -a.lo}; }

// Conversion of u64 is exact up to 2^53; beyond that pad one ulp.
inline Interval ifrom_u64(uint64_t v) {
  double d = static_cast<double>(v);
  if (v <= (uint64_t(1) << 53)) return {d, d};
  return {step_down(d), step_up(d)};
}

// Enclosure of 1/q for a positive integer q.
inline Interval irecip_u64(uint64_t q) {
  Interval iq = ifrom_u64(q);
  double t = 1.0 / iq.hi;
  double s = 1.0 / iq.lo;
  return {step_down(t), step_up(s)};
}

// Monotone libm wrappers, two steps outward.  Arguments must be in domain.
inline Interval ilog(Interval a) {
  return {step_down2(std::log(a.lo)), step_up2(std::log(a.hi))};
}
inline Interval iexp(Interval a) {
  return {step_down2(std::exp(a.lo)), step_up2(std::exp(a.hi))};
}
inline Interval ilog2(Interval a) {
  return {step_down2(std::log2(a.lo)), step_up2(std::log2(a.hi))};
}
inline Interval isqrt(Interval a) {
  return {step_down(std::sqrt(a.lo)), step_up(std::sqrt(a.hi))};
}

// x^y for x.lo > 0.
inline Interval ipow(Interval x, Interval y) { return iexp(imul(ilog(x), y)); }

// Integer power by repeated interval squaring; valid for any sign of base.
inline Interval ipow_int(Interval x, uint64_t e) {
  Interval acc = Interval::point(1.0);
  Interval base = x;
  while (e > 0) {
    if (e & 1) acc = imul(acc, base);
    e >>= 1;
    if (e > 0) base = imul(base, base);
  }
  return acc;
}

// Certified three-valued comparison.
enum class Cmp3 { True, False, Unknown };

inline Cmp3 certainly_less(Interval a, Interval b) {
  if (a.hi < b.lo) return Cmp3::True;
  if (a.lo >= b.hi) return Cmp3::False;
  return Cmp3::Unknown;
}

inline Interval interval_e() {
  double e = std::numbers::e_v<double>;
  return {step_down(e), step_up(e)};
}

}  // namespace jac

#endif
