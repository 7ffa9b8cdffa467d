#pragma once

#include <complex>
#include <vector>

#include "seriesroot/errors.hpp"
#include "seriesroot/ext_scalar.hpp"

namespace seriesroot {

// Univariate polynomial, coefficients ascending: p(T) = sum coeffs[i] T^i.
struct DensePoly {
  std::vector<cplx> coeffs;

  DensePoly() = default;
  explicit DensePoly(std::vector<cplx> c) : coeffs(std::move(c)) { strip(); }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  double max_abs_coeff() const;
  bool is_monic(double tol = 1e-12) const;

  cplx eval(const cplx& z) const;
  DensePoly derivative() const;
  DensePoly monic() const;

  // Drops a negligible leading tail (relative threshold).
  void strip(double rel_tol = 0.0);
};

DensePoly poly_add(const DensePoly& a, const DensePoly& b);
DensePoly poly_mul(const DensePoly& a, const DensePoly& b);
DensePoly poly_scale(const DensePoly& a, const cplx& s);

// Root with multiplicity, as produced by clustering.
struct RootCluster {
  cplx value;
  int multiplicity = 1;
};

// Product of (T - root)^multiplicity, optionally times a scalar front factor.
struct FactoredPoly {
  cplx front = cplx(1.0, 0.0);
  std::vector<RootCluster> factors;

  int degree() const {
    int d = 0;
    for (const auto& f : factors) d += f.multiplicity;
    return d;
  }
  DensePoly expand() const;
};

// Remainder-based divisibility test: divides(p, q) checks p | q, i.e. the
// remainder of q by p is below div_tol relative to q's coefficient scale.
// The division carries a running error bound seeded with the representation
// uncertainty of the inputs, so the verdict is "below tolerance as far as
// working precision can tell"; for well-conditioned inputs the bound is a
// few ulp and this is the plain norm-ratio check.
bool poly_divides(const DensePoly& p, const DensePoly& q, double div_tol = 1e-7);

// Euclidean division q = p*quot + rem; p must have a well-scaled leading
// coefficient (monic inputs recommended).
void poly_divmod(const DensePoly& q, const DensePoly& p, DensePoly& quot, DensePoly& rem);

}  // namespace seriesroot
