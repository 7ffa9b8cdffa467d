#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>

#include "seriesroot/errors.hpp"

namespace seriesroot {

using cplx = std::complex<double>;

// Complex scalar with a separate power-of-two exponent:
//
//   value = mantissa * 2^exponent,   |mantissa| in [1, 2)  (or exact zero).
//
// Plain doubles top out around 2^1024; iterating a degree-d polynomial makes
// coefficients grow like C^(d^i), so the exponent must be carried separately.
// A 64-bit exponent accommodates that growth far beyond any table size used here;
// overflow of the exponent itself raises saturation_error.
class ExtComplex {
 public:
  ExtComplex() = default;
  ExtComplex(double re) : man_(re, 0.0), exp_(0) { normalize(); }
  ExtComplex(const cplx& v) : man_(v), exp_(0) { normalize(); }

  static ExtComplex from_parts(const cplx& mantissa, std::int64_t e) {
    ExtComplex x;
    x.man_ = mantissa;
    x.exp_ = e;
    x.normalize();
    return x;
  }

  bool is_zero() const { return man_ == cplx(0.0, 0.0); }
  const cplx& mantissa() const { return man_; }
  std::int64_t exponent() const { return exp_; }

  // log2 of the magnitude; -inf for zero.  Total order for magnitude tests.
  double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(exp_) + std::log2(std::abs(man_));
  }

  double arg() const { return std::arg(man_); }

  // Collapses to a plain complex; overflows to inf / underflows to 0 silently.
  cplx to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    int e = static_cast<int>(std::clamp<std::int64_t>(exp_, -4000, 4000));
    return {std::ldexp(man_.real(), e), std::ldexp(man_.imag(), e)};
  }

  bool in_double_range() const { return is_zero() || (exp_ > -1000 && exp_ < 1000); }

  friend ExtComplex operator+(const ExtComplex& a, const ExtComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ExtComplex& big = (a.exp_ >= b.exp_) ? a : b;
    const ExtComplex& sml = (a.exp_ >= b.exp_) ? b : a;
    std::int64_t diff = big.exp_ - sml.exp_;  // >= 0
    // Past ~2000 bits the small operand cannot touch the mantissa.
    if (diff > 2000) return big;
    int d = -static_cast<int>(diff);
    cplx shifted(std::ldexp(sml.man_.real(), d), std::ldexp(sml.man_.imag(), d));
    return from_parts(big.man_ + shifted, big.exp_);
  }

  friend ExtComplex operator-(const ExtComplex& a) {
    ExtComplex x = a;
    x.man_ = -x.man_;
    return x;
  }

  friend ExtComplex operator-(const ExtComplex& a, const ExtComplex& b) { return a + (-b); }

  friend ExtComplex operator*(const ExtComplex& a, const ExtComplex& b) {
    if (a.is_zero() || b.is_zero()) return ExtComplex();
    return from_parts(a.man_ * b.man_, checked_add(a.exp_, b.exp_));
  }

  friend ExtComplex operator/(const ExtComplex& a, const ExtComplex& b) {
    if (b.is_zero()) throw numerical_error("ExtComplex: division by zero");
    if (a.is_zero()) return ExtComplex();
    return from_parts(a.man_ / b.man_, checked_add(a.exp_, -b.exp_));
  }

  ExtComplex& operator+=(const ExtComplex& o) { return *this = *this + o; }
  ExtComplex& operator-=(const ExtComplex& o) { return *this = *this - o; }
  ExtComplex& operator*=(const ExtComplex& o) { return *this = *this * o; }
  ExtComplex& operator/=(const ExtComplex& o) { return *this = *this / o; }

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
    return a.man_ == b.man_ && a.exp_ == b.exp_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtComplex& x) {
    return os << "(" << x.man_.real() << (x.man_.imag() < 0 ? "" : "+") << x.man_.imag()
              << "i)*2^" << x.exp_;
  }

 private:
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
      throw saturation_error("ExtComplex: exponent outside 64-bit range");
    return r;
  }

  // Restore |man_| in [1,2), folding the scale into exp_.
  void normalize() {
    if (man_ == cplx(0.0, 0.0)) {
      exp_ = 0;
      return;
    }
    double a = std::abs(man_);
    if (!std::isfinite(a)) throw numerical_error("ExtComplex: non-finite mantissa");
    int e = std::ilogb(a);
    if (e != 0) {
      man_ = cplx(std::ldexp(man_.real(), -e), std::ldexp(man_.imag(), -e));
      exp_ = checked_add(exp_, e);
    }
    // Hypot rounding can land exactly on a binade edge; one corrective step suffices.
    double a2 = std::abs(man_);
    if (a2 >= 2.0) {
      man_ = cplx(std::ldexp(man_.real(), -1), std::ldexp(man_.imag(), -1));
      exp_ = checked_add(exp_, 1);
    } else if (a2 < 1.0) {
      man_ = cplx(std::ldexp(man_.real(), 1), std::ldexp(man_.imag(), 1));
      exp_ = checked_add(exp_, -1);
    }
  }

  cplx man_{0.0, 0.0};
  std::int64_t exp_ = 0;
};

inline ExtComplex pow_n(ExtComplex base, std::uint64_t n) {
  ExtComplex r(1.0);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// |a| >= |b| without leaving the extended representation.
inline bool mag_ge(const ExtComplex& a, const ExtComplex& b) {
  return a.log2_abs() >= b.log2_abs();
}

}  // namespace seriesroot
