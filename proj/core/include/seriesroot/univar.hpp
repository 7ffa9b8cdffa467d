#pragma once

#include <map>
#include <optional>
#include <vector>

#include "seriesroot/dense_poly.hpp"
#include "seriesroot/ext_scalar.hpp"
#include "seriesroot/roots.hpp"

namespace seriesroot {

enum class MultiplierClass { Attracting, Neutral, Repelling };

struct FixedPoint {
  cplx location;
  cplx multiplier;       // f'(location)
  int multiplicity = 1;  // as a root of f(z) - z
  MultiplierClass cls = MultiplierClass::Neutral;
};

// Fixed points of a polynomial f of degree >= 2, with multiplicities from
// root clustering and multiplier classification at tolerance class_tol.
std::vector<FixedPoint> fixed_points(const DensePoly& f, const RootOptions& opt = {},
                                     double class_tol = 1e-9);

struct ResidueSum {
  cplx value;    // sum of 1/(f'(r_j) - 1) over all fixed points
  double scale;  // sum of |1/(f'(r_j) - 1)|, the natural comparison scale
};

// Rational-residue identity data.  Requires every fixed point simple
// (multiplier != 1); otherwise a multiplicity-aware version would be needed
// and a precondition_error is raised.
ResidueSum residue_sum(const std::vector<FixedPoint>& fps, double simple_tol = 1e-8);

// g(z) = f(z + w) - w: conjugation by the translation taking w to 0.
DensePoly conjugate_to_origin(const DensePoly& f, const cplx& w);

// The non-attracting fixed point used as expansion center: largest multiplier
// modulus, ties broken by lexicographic (Re, Im) of the location.
FixedPoint select_nonattracting(const std::vector<FixedPoint>& fps, double tol = 1e-9);

struct MonicNormalization {
  cplx gamma;   // rescale factor, leading-coefficient^(1/(d-1)), principal branch
  DensePoly g;  // g(z) = gamma * f(z / gamma), monic
};

MonicNormalization monic_normalize(const DensePoly& f);

// Table of degree-<=J jets of the iterates of g = f - c in extended-exponent
// arithmetic: entry(j, i) = coefficient of z^j in g^i.  Column 0 is the
// identity.  Magnitudes grow like |c|^(d^i); ExtComplex carries them.
struct CoeffTable {
  DensePoly f;  // monic source polynomial
  cplx c;
  int J = 0;
  int I = 0;
  std::vector<std::vector<ExtComplex>> cols;  // cols[i][j], i<=I, j<=J

  const ExtComplex& entry(int j, int i) const { return cols[i][j]; }
};

CoeffTable shifted_iterate_table(const DensePoly& f_monic, const cplx& c, int J, int I);

// Diagnostics for the growth regime underlying the sparse solver: argument
// drift of each row against the constant row, log2 dominance margins between
// consecutive rows, the per-step growth factor of |b_1/b_0| (approaches the
// degree d), and the bounded error terms of the leading-order recursions.
// NaN marks undefined entries (zero coefficients, e.g. rows above the degree
// of a linear map).
struct GrowthDiagnostics {
  int J = 0, I = 0;
  // arg_drift[j][i] = Arg(entry(j,i)/entry(0,i)), j >= 1.
  std::vector<std::vector<double>> arg_drift;
  // dominance_log2[j][i] = log2 |entry(j,i)| - log2 |entry(j-1,i)|, j >= 1.
  std::vector<std::vector<double>> dominance_log2;
  // growth_factor[i] = |b_1^(i+1)/b_0^(i+1)| / |b_1^i/b_0^i|.
  std::vector<double> growth_factor;
  // |E_i| with b_0^(i+1) = (b_0^i)^d + E_i (b_0^i)^(d-1).
  std::vector<double> err_const;
  // |Etilde_i| with b_1^(i+1) = d (b_0^i)^(d-2) (b_0^i + Etilde_i) b_1^i.
  std::vector<double> err_linear;
};

GrowthDiagnostics growth_diagnostics(const CoeffTable& T);

struct ConstantChoice {
  cplx c;
  double estimate = 0.0;                         // terminal |Arg(b_1^i/b_0^i)|
  std::vector<std::pair<double, double>> scan;   // (theta, estimate) per trial
};

// Scans `trials` arguments on the circle |c| = R and keeps the c whose short
// iterate table has the smallest terminal argument drift.
ConstantChoice choose_constant(const DensePoly& f_monic, double R, int trials = 64,
                               int short_I = 10);

struct StageRecord {
  int target_row = 0;                 // index into the row list
  bool skipped = false;               // carry-over sum already below tolerance
  std::vector<int> indices;           // fresh columns consumed by this stage
  double carry_log2 = 0.0;            // log2 |C| entering the stage
  double smallness_margin = 0.0;      // max |v_l b_q^{n_l}| / (2^-stage * sigma_q)
  double condition = 0.0;             // condition estimate of the stage system
};

struct OrthogonalSolution {
  std::map<int, ExtComplex> coeffs;   // i -> a_i, support only
  std::vector<StageRecord> stages;
  std::vector<double> row_residuals;  // per row, normalized by largest term
  bool completed = false;
  bool table_exhausted = false;
  bool dominance_warning = false;
};

// Staged sparse annihilation of finitely many coefficient rows given in
// increasing order of eventual dominance.  Rows use columns i >= 1; column 0
// never enters the support.  Stage 0 zeroes the first row from two columns;
// stage k cancels the carried sum C on row k with k+1 fresh columns while
// keeping every earlier row's sum untouched, scanning column offsets until
// the new terms are small against each earlier row's running scale.
OrthogonalSolution orthogonal_solve_rows(const std::vector<std::vector<ExtComplex>>& rows,
                                         double stage_tol = 1e-9);

// Convenience wrapper over a coefficient table: targets rows 1..J.
OrthogonalSolution orthogonal_solve(const CoeffTable& T, int J, double stage_tol = 1e-9);

struct SeriesCoefficient {
  int index = 0;        // i
  double log2_mag = 0;  // log2 |a_i|
  double arg = 0;       // Arg(a_i)
};

struct SolveReport {
  cplx gamma;
  cplx c;
  DensePoly monic_f;
  ConstantChoice constant;
  GrowthDiagnostics diagnostics;
  OrthogonalSolution solution;           // rows 0..J all targeted
  std::vector<SeriesCoefficient> coefficients;
};

// End-to-end construction: monic-normalize f, choose the shift constant on
// |c| = R, build the J x I iterate table, and solve for series coefficients
// annihilating every coefficient row 0..J of the shifted iterates.
SolveReport solve_about_c(const DensePoly& f, int J, int I, double R,
                          double stage_tol = 1e-9);

}  // namespace seriesroot
