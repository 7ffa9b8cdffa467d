#pragma once

#include <vector>

#include "seriesroot/annihilator.hpp"
#include "seriesroot/dense_poly.hpp"

namespace seriesroot {

// Power series truncated at order M: sum_{i<=M} coeffs[i] T^i.
struct SeriesTrunc {
  int order = 0;
  std::vector<cplx> coeffs;  // size order+1

  SeriesTrunc() = default;
  explicit SeriesTrunc(int M) : order(M), coeffs(M + 1, cplx(0.0, 0.0)) {}

  double max_abs_coeff() const;
  cplx eval(const cplx& z) const;
  SeriesTrunc derivative() const;
  DensePoly as_poly() const { return DensePoly(coeffs); }
};

SeriesTrunc series_mul(const SeriesTrunc& a, const SeriesTrunc& b, int M);

// Truncation of prod (1 - T/mu)^mult over the given roots: an entire function
// vanishing at every mu, normalized to 1 at the origin.
SeriesTrunc weierstrass_truncated(const std::vector<RootCluster>& roots, int M);

// Truncation of prod (1 - (1 - T/mu_j)^(1/2))^(n_j) for unit-modulus mu_j,
// expanding the square root by its binomial series (principal branch).  A
// formal-coefficient construction; no convergence claim is attached.
SeriesTrunc circle_product_truncated(const std::vector<RootCluster>& roots, int M);

struct GoodnessReport {
  bool good = true;
  // Worst |P^(j)(mu)| over required roots/derivative orders, relative to ||P||.
  double worst_defect = 0.0;
};

// "Good" check: P and its first (mult-1) derivatives vanish at every root of
// the factored polynomial, within good_tol * ||P||.
GoodnessReport goodness_check(const SeriesTrunc& P, const FactoredPoly& m,
                              double good_tol = 1e-8);

// Partial-sum residual curve of sum_i P_i [F^i]_d: entry j is the normalized
// max coefficient of sum_{i<=j} P_i [F^i]_d.
std::vector<double> apply_series(const SeriesTrunc& P, const PolyMap<cplx>& F, int d);

}  // namespace seriesroot
