#include "doctest.h"

#include <cmath>

#include "seriesroot/series.hpp"

using namespace seriesroot;

TEST_CASE("weierstrass product for roots {2, 4}") {
  // (1 - T/2)(1 - T/4) = 1 - 0.75 T + 0.125 T^2
  SeriesTrunc P = weierstrass_truncated({{cplx(2.0, 0.0), 1}, {cplx(4.0, 0.0), 1}}, 4);
  CHECK(std::abs(P.coeffs[0] - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(P.coeffs[1] - cplx(-0.75, 0.0)) < 1e-15);
  CHECK(std::abs(P.coeffs[2] - cplx(0.125, 0.0)) < 1e-15);
  CHECK(std::abs(P.coeffs[3]) < 1e-15);
  CHECK(std::abs(P.eval(cplx(2.0, 0.0))) < 1e-15);
  CHECK(std::abs(P.eval(cplx(4.0, 0.0))) < 1e-15);
}

TEST_CASE("weierstrass multiplicity doubles the factor") {
  SeriesTrunc P = weierstrass_truncated({{cplx(2.0, 0.0), 2}}, 2);
  // (1 - T/2)^2 = 1 - T + 0.25 T^2
  CHECK(std::abs(P.coeffs[1] - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(P.coeffs[2] - cplx(0.25, 0.0)) < 1e-15);
  CHECK_THROWS_AS(weierstrass_truncated({{cplx(0.0, 0.0), 1}}, 2), precondition_error);
}

TEST_CASE("unit-circle square-root product starts T/2 + T^2/8") {
  SeriesTrunc P = circle_product_truncated({{cplx(1.0, 0.0), 1}}, 2);
  CHECK(std::abs(P.coeffs[0]) < 1e-15);
  CHECK(std::abs(P.coeffs[1] - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(P.coeffs[2] - cplx(0.125, 0.0)) < 1e-15);

  SeriesTrunc Q = circle_product_truncated({{cplx(1.0, 0.0), 2}}, 2);
  // (T/2 + T^2/8 + ...)^2 truncated: T^2/4
  CHECK(std::abs(Q.coeffs[0]) < 1e-15);
  CHECK(std::abs(Q.coeffs[1]) < 1e-15);
  CHECK(std::abs(Q.coeffs[2] - cplx(0.25, 0.0)) < 1e-15);

  CHECK_THROWS_AS(circle_product_truncated({{cplx(2.0, 0.0), 1}}, 2), precondition_error);
}

TEST_CASE("series_mul truncates and matches convolution") {
  SeriesTrunc a(2), b(2);
  a.coeffs = {cplx(1.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0)};
  b.coeffs = {cplx(1.0, 0.0), cplx(-1.0, 0.0), cplx(0.0, 0.0)};
  SeriesTrunc p = series_mul(a, b, 2);
  CHECK(p.coeffs[0] == cplx(1.0, 0.0));
  CHECK(p.coeffs[1] == cplx(0.0, 0.0));
  CHECK(p.coeffs[2] == cplx(-1.0, 0.0));
}

TEST_CASE("goodness check demands every minimal root with multiplicity") {
  FactoredPoly m;
  m.factors = {{cplx(2.0, 0.0), 1}, {cplx(4.0, 0.0), 1}};

  SeriesTrunc good = weierstrass_truncated({{cplx(2.0, 0.0), 1}, {cplx(4.0, 0.0), 1}}, 8);
  GoodnessReport g = goodness_check(good, m);
  CHECK(g.good);
  CHECK(g.worst_defect < 1e-12);

  SeriesTrunc partial = weierstrass_truncated({{cplx(2.0, 0.0), 1}}, 8);
  CHECK(!goodness_check(partial, m).good);

  FactoredPoly dbl;
  dbl.factors = {{cplx(2.0, 0.0), 2}};
  CHECK(!goodness_check(good, dbl).good);  // simple root where a double is needed
  SeriesTrunc squared = weierstrass_truncated({{cplx(2.0, 0.0), 2}}, 8);
  CHECK(goodness_check(squared, dbl).good);
}

TEST_CASE("applying an annihilating series drives the partial sums to zero") {
  PolyMap<cplx> F(1);
  Jet<cplx> f(1, 2);
  f.add_term({1}, cplx(2.0, 0.0));
  f.add_term({2}, cplx(1.0, 0.0));
  F.components.push_back(f);

  // (1 - T/2)(1 - T/4) annihilates the 2-jets: final partial-sum residual ~ 0.
  SeriesTrunc P = weierstrass_truncated({{cplx(2.0, 0.0), 1}, {cplx(4.0, 0.0), 1}}, 2);
  auto curve = apply_series(P, F, 2);
  REQUIRE(curve.size() == 3);
  CHECK(curve.back() < 1e-14);
  CHECK(curve.front() > 0.1);  // the partial sums start visibly nonzero
}

TEST_CASE("derivative and eval helpers") {
  SeriesTrunc P(3);
  P.coeffs = {cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(3.0, 0.0), cplx(4.0, 0.0)};
  SeriesTrunc d = P.derivative();
  CHECK(d.coeffs[0] == cplx(2.0, 0.0));
  CHECK(d.coeffs[1] == cplx(6.0, 0.0));
  CHECK(d.coeffs[2] == cplx(12.0, 0.0));
  CHECK(std::abs(P.eval(cplx(1.0, 0.0)) - cplx(10.0, 0.0)) < 1e-14);
}
