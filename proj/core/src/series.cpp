#include "seriesroot/series.hpp"

#include <algorithm>
#include <cmath>

namespace seriesroot {

double SeriesTrunc::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

cplx SeriesTrunc::eval(const cplx& z) const {
  cplx r(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
  return r;
}

SeriesTrunc SeriesTrunc::derivative() const {
  SeriesTrunc d(std::max(0, order - 1));
  for (int i = 1; i <= order; ++i) d.coeffs[i - 1] = coeffs[i] * static_cast<double>(i);
  return d;
}

SeriesTrunc series_mul(const SeriesTrunc& a, const SeriesTrunc& b, int M) {
  SeriesTrunc r(M);
  for (int i = 0; i <= std::min(a.order, M); ++i) {
    if (a.coeffs[i] == cplx(0.0, 0.0)) continue;
    for (int j = 0; j <= std::min(b.order, M - i); ++j)
      r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

SeriesTrunc weierstrass_truncated(const std::vector<RootCluster>& roots, int M) {
  SeriesTrunc P(M);
  P.coeffs[0] = cplx(1.0, 0.0);
  for (const auto& rc : roots) {
    if (rc.value == cplx(0.0, 0.0))
      throw precondition_error("weierstrass_truncated: roots must be nonzero");
    SeriesTrunc lin(std::min(1, M));
    lin.coeffs[0] = cplx(1.0, 0.0);
    if (M >= 1) lin.coeffs[1] = -cplx(1.0, 0.0) / rc.value;
    for (int k = 0; k < rc.multiplicity; ++k) P = series_mul(P, lin, M);
  }
  return P;
}

SeriesTrunc circle_product_truncated(const std::vector<RootCluster>& roots, int M) {
  SeriesTrunc P(M);
  P.coeffs[0] = cplx(1.0, 0.0);
  for (const auto& rc : roots) {
    double mod = std::abs(rc.value);
    if (std::abs(mod - 1.0) > 1e-9)
      throw precondition_error("circle_product_truncated: roots must have unit modulus");
    // sqrt(1 - T/mu) by the binomial series: a_0 = 1,
    // a_{k+1} = a_k * (1/2 - k)/(k+1) * (-1/mu).
    SeriesTrunc sq(M);
    cplx a(1.0, 0.0);
    sq.coeffs[0] = a;
    for (int k = 0; k < M; ++k) {
      a *= cplx((0.5 - k) / (k + 1.0), 0.0) * (-cplx(1.0, 0.0) / rc.value);
      sq.coeffs[k + 1] = a;
    }
    // factor = 1 - sqrt(1 - T/mu), starting at order 1.
    SeriesTrunc factor(M);
    for (int k = 0; k <= M; ++k) factor.coeffs[k] = -sq.coeffs[k];
    factor.coeffs[0] += cplx(1.0, 0.0);
    for (int k = 0; k < rc.multiplicity; ++k) P = series_mul(P, factor, M);
  }
  return P;
}

GoodnessReport goodness_check(const SeriesTrunc& P, const FactoredPoly& m, double good_tol) {
  GoodnessReport rep;
  double norm = P.max_abs_coeff();
  if (norm == 0.0) norm = 1.0;
  int max_mult = 1;
  for (const auto& f : m.factors) max_mult = std::max(max_mult, f.multiplicity);
  std::vector<SeriesTrunc> derivs;
  derivs.push_back(P);
  for (int j = 1; j < max_mult; ++j) derivs.push_back(derivs.back().derivative());
  for (const auto& f : m.factors)
    for (int j = 0; j < f.multiplicity; ++j) {
      double defect = std::abs(derivs[j].eval(f.value)) / norm;
      rep.worst_defect = std::max(rep.worst_defect, defect);
      if (defect >= good_tol) rep.good = false;
    }
  return rep;
}

std::vector<double> apply_series(const SeriesTrunc& P, const PolyMap<cplx>& F, int d) {
  auto iters = iterate_jets(F, d, P.order);
  int n = F.n_vars;
  PolyMap<cplx> acc(n);
  for (int k = 0; k < n; ++k) acc.components.emplace_back(n, d);
  double largest = 0.0;
  std::vector<double> curve;
  curve.reserve(P.order + 1);
  for (int i = 0; i <= P.order; ++i) {
    for (int k = 0; k < n; ++k) {
      Jet<cplx> term = jet_scale(iters[i].components[k], P.coeffs[i]);
      double lg = term.max_coeff_log2();
      if (std::isfinite(lg)) largest = std::max(largest, std::exp2(lg));
      acc.components[k] = jet_add(acc.components[k], term, d);
    }
    double cur = 0.0;
    for (int k = 0; k < n; ++k) {
      double lg = acc.components[k].max_coeff_log2();
      if (std::isfinite(lg)) cur = std::max(cur, std::exp2(lg));
    }
    curve.push_back(largest == 0.0 ? 0.0 : cur / largest);
  }
  return curve;
}

}  // namespace seriesroot
