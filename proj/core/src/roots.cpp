#include "seriesroot/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace seriesroot {

namespace {

// p(z) and p'(z) in one Horner pass.
void eval_with_deriv(const std::vector<cplx>& c, const cplx& z, cplx& p, cplx& dp) {
  p = cplx(0.0, 0.0);
  dp = cplx(0.0, 0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

}  // namespace

std::vector<cplx> poly_roots_raw(const DensePoly& p_in, const RootOptions& opt) {
  DensePoly p = p_in;
  p.strip(1e-14);
  if (p.degree() < 1) throw precondition_error("poly_roots: degree must be >= 1");

  // Exact zero roots come off first (trailing coefficients below the noise
  // floor); Aberth converges only linearly on multiple roots at the origin.
  std::vector<cplx> roots;
  double scale = p.max_abs_coeff();
  while (p.degree() >= 1 && std::abs(p.coeffs.front()) <= 1e-14 * scale) {
    roots.emplace_back(0.0, 0.0);
    p.coeffs.erase(p.coeffs.begin());
  }
  int m = p.degree();
  if (m == 0) return roots;

  std::vector<cplx> c = p.monic().coeffs;

  // Cauchy-style radius bound and a slightly irrational starting spread.
  double bound = 0.0;
  for (int i = 0; i < m; ++i) bound = std::max(bound, std::abs(c[i]));
  double radius = 1.0 + bound;
  std::vector<cplx> z(m);
  for (int k = 0; k < m; ++k) {
    double th = 2.0 * std::numbers::pi * k / m + 0.4;
    z[k] = std::polar(0.5 * radius + 0.1, th);
  }

  bool converged = false;
  for (int iter = 0; iter < opt.max_iters && !converged; ++iter) {
    converged = true;
    for (int k = 0; k < m; ++k) {
      cplx pv, dv;
      eval_with_deriv(c, z[k], pv, dv);
      if (pv == cplx(0.0, 0.0)) continue;
      cplx newton = (dv == cplx(0.0, 0.0)) ? cplx(0.0, 0.0) : pv / dv;
      cplx sum(0.0, 0.0);
      for (int j = 0; j < m; ++j)
        if (j != k) {
          cplx d = z[k] - z[j];
          if (d == cplx(0.0, 0.0)) d = cplx(1e-30, 0.0);
          sum += cplx(1.0, 0.0) / d;
        }
      cplx denom = cplx(1.0, 0.0) - newton * sum;
      cplx corr = (denom == cplx(0.0, 0.0)) ? newton : newton / denom;
      z[k] -= corr;
      if (std::abs(corr) > 1e-14 * (1.0 + std::abs(z[k]))) converged = false;
    }
  }
  // Multiple roots never reach tiny corrections; the residual gate below is
  // the arbiter, not the convergence flag.
  double norm = 0.0;
  for (const auto& ci : c) norm = std::max(norm, std::abs(ci));
  for (int k = 0; k < m; ++k) {
    cplx pv, dv;
    eval_with_deriv(c, z[k], pv, dv);
    double gate = opt.residual_tol * norm * std::pow(1.0 + std::abs(z[k]), m);
    if (!(std::abs(pv) < gate))
      throw numerical_error("poly_roots: residual gate failed after Aberth iteration");
    roots.push_back(z[k]);
  }
  return roots;
}

std::vector<RootCluster> poly_roots(const DensePoly& p, const RootOptions& opt) {
  std::vector<cplx> raw = poly_roots_raw(p, opt);
  int m = static_cast<int>(raw.size());
  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double sep = std::abs(raw[i] - raw[j]);
      double ref = std::max(1.0, std::max(std::abs(raw[i]), std::abs(raw[j])));
      if (sep <= opt.cluster_tol * ref) parent[find(i)] = find(j);
    }
  std::vector<RootCluster> out;
  for (int i = 0; i < m; ++i) {
    if (find(i) != i) continue;
    cplx mean(0.0, 0.0);
    int count = 0;
    for (int j = 0; j < m; ++j)
      if (find(j) == i) {
        mean += raw[j];
        ++count;
      }
    out.push_back({mean / static_cast<double>(count), count});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace seriesroot
