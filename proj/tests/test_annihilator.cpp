#include "doctest.h"

#include <cmath>

#include "seriesroot/annihilator.hpp"

using namespace seriesroot;

namespace {

PolyMap<cplx> map_2z_z2() {
  PolyMap<cplx> F(1);
  Jet<cplx> f(1, 2);
  f.add_term({1}, cplx(2.0, 0.0));
  f.add_term({2}, cplx(1.0, 0.0));
  F.components.push_back(f);
  return F;
}

PolyMap<cplx> triangular_2d(double a, double b) {
  // (a x + y^2, b y)
  PolyMap<cplx> F(2);
  Jet<cplx> fx(2, 2), fy(2, 2);
  fx.add_term({1, 0}, cplx(a, 0.0));
  fx.add_term({0, 2}, cplx(1.0, 0.0));
  fy.add_term({0, 1}, cplx(b, 0.0));
  F.components.push_back(fx);
  F.components.push_back(fy);
  return F;
}

double coeff_err(const DensePoly& p, const std::vector<double>& want) {
  if (p.coeffs.size() != want.size()) return 1e9;
  double e = 0.0;
  for (size_t i = 0; i < want.size(); ++i) e = std::max(e, std::abs(p.coeffs[i] - want[i]));
  return e;
}

}  // namespace

TEST_CASE("minimal vanishing polynomial of 2z+z^2 at degree 2 is (T-2)(T-4)") {
  AnnihilatorReport rep = minpoly_up_to_degree(map_2z_z2(), 2, 8);
  CHECK(coeff_err(rep.minimal, {8.0, -6.0, 1.0}) < 1e-10);
  CHECK(rep.residual < 1e-12);
  CHECK(rep.minimal.is_monic());
  // Strictly smaller than the degree-3 eigenvalue-product candidate.
  CHECK(rep.candidate.degree() == 3);
  CHECK(poly_divides(rep.minimal, rep.candidate.expand()));
  CHECK(rep.sequences_used == 2);
}

TEST_CASE("triangular map (2x+y^2, 3y) has minimal (T-2)(T-3)(T-9)") {
  AnnihilatorReport rep = minpoly_up_to_degree(triangular_2d(2.0, 3.0), 2, 16);
  CHECK(coeff_err(rep.minimal, {-54.0, 51.0, -14.0, 1.0}) < 1e-9);
  CHECK(rep.residual < 1e-10);
}

TEST_CASE("resonant map (4x+y^2, 2y) needs the double root (T-4)^2") {
  // The y^2 coefficient sequence is i*4^(i-1), so (T-4)^2 (T-2) is minimal.
  AnnihilatorReport rep = minpoly_up_to_degree(triangular_2d(4.0, 2.0), 2, 16);
  CHECK(coeff_err(rep.minimal, {-32.0, 32.0, -10.0, 1.0}) < 1e-8);
  CHECK(rep.residual < 1e-10);
  CHECK(verify_annihilates(rep.minimal, triangular_2d(4.0, 2.0), 2) < 1e-10);
}

TEST_CASE("verify_annihilates separates right from wrong polynomials") {
  PolyMap<cplx> F = map_2z_z2();
  DensePoly right;
  right.coeffs = {cplx(8.0, 0.0), cplx(-6.0, 0.0), cplx(1.0, 0.0)};
  CHECK(verify_annihilates(right, F, 2) < 1e-12);

  DensePoly wrong;
  wrong.coeffs = {cplx(1.0, 0.0), cplx(-3.0, 0.0), cplx(1.0, 0.0)};
  CHECK(verify_annihilates(wrong, F, 2) > 0.01);
}

TEST_CASE("minimal chain grows with the truncation degree") {
  PolyMap<cplx> F = map_2z_z2();
  AnnihilatorReport r1 = minpoly_up_to_degree(F, 1, 6);
  AnnihilatorReport r2 = minpoly_up_to_degree(F, 2, 8);
  AnnihilatorReport r3 = minpoly_up_to_degree(F, 3, 12);
  CHECK(r1.minimal.degree() == 1);  // only the sequence 2^i at degree 1
  CHECK(r2.minimal.degree() == 2);
  CHECK(r3.minimal.degree() == 3);  // roots 2, 4, 8
  CHECK(poly_divides(r1.minimal, r2.minimal));
  CHECK(poly_divides(r2.minimal, r3.minimal));
}

TEST_CASE("zero map is annihilated by T") {
  PolyMap<cplx> Z(1);
  Z.components.push_back(Jet<cplx>(1, 2));
  AnnihilatorReport rep = minpoly_up_to_degree(Z, 2, 4);
  REQUIRE(rep.minimal.degree() == 1);
  CHECK(rep.minimal.coeffs[0] == cplx(0.0, 0.0));
  CHECK(rep.minimal.coeffs[1] == cplx(1.0, 0.0));
}

TEST_CASE("too few iterates is rejected up front") {
  CHECK_THROWS_AS(minpoly_up_to_degree(map_2z_z2(), 2, 2), precondition_error);
}
