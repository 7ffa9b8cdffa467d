#include "doctest.h"

#include <cmath>

#include "seriesroot/ext_scalar.hpp"
#include "seriesroot/jet.hpp"

using namespace seriesroot;

namespace {

Jet<cplx> univar_jet(std::initializer_list<std::pair<int, cplx>> terms, int cap) {
  Jet<cplx> j(1, cap);
  for (const auto& [k, c] : terms) j.add_term({k}, c);
  return j;
}

PolyMap<cplx> map_2z_z2() {
  PolyMap<cplx> F(1);
  F.components.push_back(univar_jet({{1, {2.0, 0.0}}, {2, {1.0, 0.0}}}, 2));
  return F;
}

}  // namespace

TEST_CASE("jet_mul truncates above the cap") {
  // (2z + z^2)^2 = 4z^2 + 4z^3 + z^4
  Jet<cplx> f = univar_jet({{1, {2.0, 0.0}}, {2, {1.0, 0.0}}}, 4);
  Jet<cplx> sq = jet_mul(f, f, 4);
  CHECK(sq.coeff({2}) == cplx(4.0, 0.0));
  CHECK(sq.coeff({3}) == cplx(4.0, 0.0));
  CHECK(sq.coeff({4}) == cplx(1.0, 0.0));
  Jet<cplx> sq3 = jet_mul(f, f, 3);
  CHECK(sq3.coeff({4}) == cplx(0.0, 0.0));
  CHECK(sq3.degree() == 3);
}

TEST_CASE("duplicate terms sum and exact cancellations vanish") {
  Jet<cplx> j(2, 3);
  j.add_term({1, 1}, cplx(2.0, 0.0));
  j.add_term({1, 1}, cplx(-2.0, 0.0));
  CHECK(j.is_zero());
  j.add_term({2, 1}, cplx(1.0, 0.0));
  j.add_term({4, 0}, cplx(9.0, 0.0));  // beyond cap: dropped
  CHECK(j.degree() == 3);
  CHECK(j.coeff({4, 0}) == cplx(0.0, 0.0));
}

TEST_CASE("iterate jets of 2z+z^2 reproduce hand-computed 2-jets") {
  auto iters = iterate_jets(map_2z_z2(), 2, 3);
  REQUIRE(iters.size() == 4);
  // identity, f, f^2 = 4z+6z^2+..., f^3 = 8z+28z^2+...
  CHECK(iters[0].components[0].coeff({1}) == cplx(1.0, 0.0));
  CHECK(iters[1].components[0].coeff({2}) == cplx(1.0, 0.0));
  CHECK(iters[2].components[0].coeff({1}) == cplx(4.0, 0.0));
  CHECK(iters[2].components[0].coeff({2}) == cplx(6.0, 0.0));
  CHECK(iters[3].components[0].coeff({1}) == cplx(8.0, 0.0));
  CHECK(iters[3].components[0].coeff({2}) == cplx(28.0, 0.0));

  auto seq = coeff_sequence(iters, 1, {2});
  REQUIRE(seq.size() == 4);
  CHECK(seq[0] == cplx(0.0, 0.0));
  CHECK(seq[1] == cplx(1.0, 0.0));
  CHECK(seq[2] == cplx(6.0, 0.0));
  CHECK(seq[3] == cplx(28.0, 0.0));
}

TEST_CASE("two-variable iterate matches (2x+y^2, 3y)") {
  PolyMap<cplx> F(2);
  Jet<cplx> fx(2, 2), fy(2, 2);
  fx.add_term({1, 0}, cplx(2.0, 0.0));
  fx.add_term({0, 2}, cplx(1.0, 0.0));
  fy.add_term({0, 1}, cplx(3.0, 0.0));
  F.components.push_back(fx);
  F.components.push_back(fy);

  auto iters = iterate_jets(F, 2, 2);
  // F^2 = (4x + 11y^2, 9y)
  CHECK(iters[2].components[0].coeff({1, 0}) == cplx(4.0, 0.0));
  CHECK(iters[2].components[0].coeff({0, 2}) == cplx(11.0, 0.0));
  CHECK(iters[2].components[1].coeff({0, 1}) == cplx(9.0, 0.0));
}

TEST_CASE("composition with constant terms stays exact under truncation") {
  // outer z^2 (complete), inner 1 + z + z^3 truncated at 2: the 2-jet of the
  // true composition (1+z+z^3)^2 equals (1+z)^2 = 1 + 2z + z^2.
  PolyMap<cplx> inner(1);
  inner.components.push_back(univar_jet({{0, {1.0, 0.0}}, {1, {1.0, 0.0}}}, 2));
  Jet<cplx> outer = univar_jet({{2, {1.0, 0.0}}}, 2);
  Jet<cplx> comp = compose_component(outer, inner, 2);
  CHECK(comp.coeff({0}) == cplx(1.0, 0.0));
  CHECK(comp.coeff({1}) == cplx(2.0, 0.0));
  CHECK(comp.coeff({2}) == cplx(1.0, 0.0));
}

TEST_CASE("extended-scalar jets agree with plain jets in range") {
  PolyMap<ExtComplex> F(1);
  Jet<ExtComplex> f(1, 2);
  f.add_term({1}, ExtComplex(2.0));
  f.add_term({2}, ExtComplex(1.0));
  F.components.push_back(f);
  auto iters = iterate_jets(F, 2, 3);
  CHECK(iters[3].components[0].coeff({1}).to_complex() == cplx(8.0, 0.0));
  CHECK(iters[3].components[0].coeff({2}).to_complex() == cplx(28.0, 0.0));
}

TEST_CASE("map predicates") {
  PolyMap<cplx> F = map_2z_z2();
  CHECK(F.origin_preserving());
  CHECK(!F.is_linear());
  CHECK(!F.is_zero());
  CHECK(F.degree() == 2);

  PolyMap<cplx> L(1);
  L.components.push_back(univar_jet({{1, {0.5, 0.0}}}, 1));
  CHECK(L.is_linear());

  PolyMap<cplx> Z(1);
  Z.components.push_back(Jet<cplx>(1, 2));
  CHECK(Z.is_zero());
  CHECK(Z.is_linear());
}

TEST_CASE("arity mismatches throw") {
  PolyMap<cplx> F = map_2z_z2();
  Jet<cplx> wrong(2, 2);
  CHECK_THROWS_AS(jet_mul(F.components[0], wrong, 2), precondition_error);
  PolyMap<cplx> broken(2);
  broken.components.push_back(Jet<cplx>(2, 2));
  CHECK_THROWS_AS(iterate_jets(broken, 2, 1), precondition_error);
}
