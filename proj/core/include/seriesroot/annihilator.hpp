#pragma once

#include <vector>

#include "seriesroot/dense_poly.hpp"
#include "seriesroot/jet.hpp"
#include "seriesroot/spectral.hpp"

namespace seriesroot {

struct AnnihilatorReport {
  DensePoly minimal;        // monic minimal vanishing polynomial at this truncation
  FactoredPoly candidate;   // eigenvalue-product polynomial for the same degree
  FactoredPoly minimal_factors;  // the retained root clusters with multiplicities
  double residual = 0.0;    // annihilation defect of `minimal`, normalized
  double rank_tol = 1e-9;
  double scaling = 1.0;     // spectral prescale rho
  int sequences_used = 0;
  int iterates_used = 0;
};

// Minimal monic P with sum_i P_i [F^i]_d = 0, from N+1 iterate jets of an
// origin-preserving map.  The minimal polynomial is located inside the
// eigenvalue-product candidate: coefficient sequences (prescaled by
// rho = max(1, max |lambda^v|)) are hit with first-order difference operators
// (E - mu), largest modulus first, and each root cluster keeps the smallest
// multiplicity whose defect stays below rank_tol with every other cluster at
// full multiplicity.  Throws numerical_error if even the full candidate fails
// the residual gate.
AnnihilatorReport minpoly_up_to_degree(const PolyMap<cplx>& F, int d, int N,
                                       double rank_tol = 1e-9);

// Normalized residual of sum_i P_i [F^i]_d: max resulting coefficient divided
// by the largest coefficient magnitude among the summed terms.
double verify_annihilates(const DensePoly& P, const PolyMap<cplx>& F, int d);
double verify_annihilates(const DensePoly& P, const std::vector<PolyMap<cplx>>& iterates,
                          int d);

}  // namespace seriesroot
