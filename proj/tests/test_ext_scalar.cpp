#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "seriesroot/errors.hpp"
#include "seriesroot/ext_scalar.hpp"

using namespace seriesroot;

TEST_CASE("construction normalizes the mantissa into [1,2)") {
  ExtComplex a(8.0);
  CHECK(a.mantissa() == cplx(1.0, 0.0));
  CHECK(a.exponent() == 3);

  ExtComplex b(cplx(0.0, -0.375));
  CHECK(b.exponent() == -2);
  CHECK(b.mantissa() == cplx(0.0, -1.5));

  ExtComplex z;
  CHECK(z.is_zero());
  CHECK(z.log2_abs() == -std::numeric_limits<double>::infinity());
}

TEST_CASE("round trip through to_complex inside double range") {
  ExtComplex a(cplx(3.25, -7.5));
  CHECK(a.to_complex() == cplx(3.25, -7.5));
  CHECK(a.in_double_range());
  CHECK(!ExtComplex::from_parts(cplx(1.0, 0.0), 5000).in_double_range());
}

TEST_CASE("addition aligns exponents exactly") {
  // 1.5*2^10 + 1.25*2^8 = 1536 + 320 = 1856
  ExtComplex a = ExtComplex::from_parts(cplx(1.5, 0.0), 10);
  ExtComplex b = ExtComplex::from_parts(cplx(1.25, 0.0), 8);
  CHECK((a + b).to_complex() == cplx(1856.0, 0.0));
  CHECK((a - a).is_zero());
}

TEST_CASE("far-separated addends leave the large one untouched") {
  ExtComplex big = ExtComplex::from_parts(cplx(1.0, 1.0), 3000);
  ExtComplex small = ExtComplex::from_parts(cplx(1.9, -0.3), -2500);
  ExtComplex s = big + small;
  CHECK(s.mantissa() == big.mantissa());
  CHECK(s.exponent() == big.exponent());
}

TEST_CASE("multiplication and division track exponents") {
  ExtComplex a = ExtComplex::from_parts(cplx(1.5, 0.0), 100);
  ExtComplex b = ExtComplex::from_parts(cplx(1.5, 0.0), -40);
  ExtComplex p = a * b;
  CHECK(p.to_complex() == cplx(std::ldexp(2.25, 60), 0.0));
  CHECK(p.log2_abs() == doctest::Approx(60 + 2 * std::log2(1.5)));
  ExtComplex q = a / b;
  CHECK(q.exponent() == 140);
  CHECK(q.mantissa() == cplx(1.0, 0.0));
  CHECK_THROWS_AS(a / ExtComplex(), numerical_error);
}

TEST_CASE("pow_n by repeated squaring") {
  CHECK(pow_n(ExtComplex(2.0), 10).to_complex() == cplx(1024.0, 0.0));
  ExtComplex big = pow_n(ExtComplex::from_parts(cplx(1.0, 0.0), 1), 62);
  CHECK(big.exponent() == 62);
  CHECK(pow_n(ExtComplex(3.0), 0).to_complex() == cplx(1.0, 0.0));
  CHECK(pow_n(ExtComplex(), 5).is_zero());
}

TEST_CASE("exponent overflow saturates loudly") {
  ExtComplex huge = ExtComplex::from_parts(cplx(1.0, 0.0),
                                           std::numeric_limits<std::int64_t>::max() / 2 + 1);
  CHECK_THROWS_AS(huge * huge, saturation_error);
}

TEST_CASE("magnitude and argument accessors") {
  ExtComplex i100 = ExtComplex::from_parts(cplx(0.0, 1.0), 100);
  CHECK(i100.log2_abs() == doctest::Approx(100.0));
  CHECK(i100.arg() == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("sums of random doubles match plain double arithmetic") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int t = 0; t < 1000; ++t) {
    cplx x(u(rng), u(rng)), y(u(rng), u(rng));
    CHECK((ExtComplex(x) + ExtComplex(y)).to_complex() == x + y);
    CHECK((ExtComplex(x) * ExtComplex(y)).to_complex() == x * y);
  }
}

TEST_CASE("iterated squaring reaches exponents far beyond double range") {
  // x_{k+1} = x_k^2 starting at 10: after 24 squarings the exponent is
  // 2^24 * log2(10) with no saturation and an exact exponent value.
  ExtComplex x(10.0);
  for (int k = 0; k < 24; ++k) x = x * x;
  double expect = std::exp2(24.0) * std::log2(10.0);
  CHECK(x.log2_abs() == doctest::Approx(expect).epsilon(1e-12));
}
