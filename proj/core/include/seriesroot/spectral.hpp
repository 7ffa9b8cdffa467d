#pragma once

#include <string>
#include <vector>

#include "seriesroot/dense_poly.hpp"
#include "seriesroot/jet.hpp"
#include "seriesroot/roots.hpp"

namespace seriesroot {

// Dense n x n complex matrix, row-major; n stays tiny (<= 8).
struct LinearPart {
  int n = 0;
  std::vector<cplx> a;  // a[i*n + j]

  LinearPart() = default;
  explicit LinearPart(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, cplx(0.0, 0.0)) {}
  cplx& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

struct Spectrum {
  std::vector<cplx> eigenvalues;  // with algebraic multiplicity, deterministic order
  DensePoly char_poly;            // monic characteristic polynomial
};

// First-order coefficients of an origin-preserving polynomial map.
LinearPart linear_part(const PolyMap<cplx>& F);

// Eigenvalues via the exact characteristic polynomial (Faddeev-LeVerrier
// recursion) followed by simultaneous root finding.  n <= 8.
Spectrum eigenvalues(const LinearPart& J, const RootOptions& opt = {});

// The product over all exponent vectors v with |v| <= d of (T - lambda^v),
// lambda^v = prod lambda_k^(v_k); v = 0 contributes the root 1.  Near-equal
// values merge into multiple roots (relative tolerance), keeping the
// larger-modulus member as representative.
FactoredPoly build_char_jet_poly(const Spectrum& spec, int d, double cluster_tol = 1e-8);

enum class VerdictTag {
  IsRootExpanding,
  IsRootUnitModulus,
  IsRootLinear,
  NotRootZeroLinearPart,
  GenericallyNotContracting,
  GenericallyNotMixed,
  Indeterminate,
};

struct Verdict {
  VerdictTag tag = VerdictTag::Indeterminate;
  std::string detail;
};

const char* verdict_name(VerdictTag tag);

// Seven-way eigenvalue-regime classification.  Total on its inputs: every
// (spectrum, nonlinearity flag, zero flag, tol) combination lands on exactly
// one tag.  Boundary moduli resolve by the closed bands
//   contracting: |l| < 1 - tol;  unit: ||l|-1| <= tol;  expanding: |l| > 1 + tol.
Verdict classify_regime(const Spectrum& spec, bool F_is_nonlinear, bool F_is_zero,
                        double tol = 1e-9);

// Affine map x -> M x + b.
struct AffineMap {
  LinearPart M;
  std::vector<cplx> b;
};

struct ExpandingDecomposition {
  AffineMap A;          // A(x) = s J^(-1) (x - F(0))
  AffineMap A_inverse;  // A^(-1)(y) = F(0) + (1/s) J y
  PolyMap<cplx> G;      // G = A o F: fixes the origin, linear part s*Id
  double s = 2.0;
};

// Conjugation onto an origin-fixed map with expanding diagonal linear part.
// Requires the linear part of F invertible and s > 1.
ExpandingDecomposition decompose_expanding(const PolyMap<cplx>& F, double s = 2.0);

// Apply an affine map to a polynomial map's output: (M o F)(x) + b.
PolyMap<cplx> affine_after(const AffineMap& A, const PolyMap<cplx>& F);

}  // namespace seriesroot
