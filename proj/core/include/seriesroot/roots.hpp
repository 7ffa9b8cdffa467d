#pragma once

#include <vector>

#include "seriesroot/dense_poly.hpp"

namespace seriesroot {

struct RootOptions {
  int max_iters = 200;
  // Post-solve residual gate: |p(r)| < residual_tol * ||p|| * (1+|r|)^deg.
  double residual_tol = 1e-10;
  // Relative distance merged into one multiple root.
  double cluster_tol = 1e-6;
};

// All complex roots of p (degree >= 1), found simultaneously by the
// Aberth-Ehrlich iteration, then clustered into multiple roots.  Deterministic:
// fixed initial configuration, no randomness.  Throws numerical_error if the
// iteration stalls or a residual fails the gate.
std::vector<cplx> poly_roots_raw(const DensePoly& p, const RootOptions& opt = {});

// Clustered form with multiplicities; clusters ordered by (Re, Im) of the
// representative (the cluster mean).
std::vector<RootCluster> poly_roots(const DensePoly& p, const RootOptions& opt = {});

}  // namespace seriesroot
