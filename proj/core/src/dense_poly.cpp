#include "seriesroot/dense_poly.hpp"

#include <algorithm>
#include <cmath>

namespace seriesroot {

double DensePoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

bool DensePoly::is_monic(double tol) const {
  return !coeffs.empty() && std::abs(coeffs.back() - cplx(1.0, 0.0)) <= tol;
}

cplx DensePoly::eval(const cplx& z) const {
  cplx r(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
  return r;
}

DensePoly DensePoly::derivative() const {
  DensePoly d;
  for (int i = 1; i < static_cast<int>(coeffs.size()); ++i)
    d.coeffs.push_back(coeffs[i] * cplx(static_cast<double>(i), 0.0));
  d.strip();
  return d;
}

DensePoly DensePoly::monic() const {
  if (coeffs.empty()) throw precondition_error("monic: zero polynomial");
  DensePoly m = *this;
  cplx lead = m.coeffs.back();
  for (auto& c : m.coeffs) c /= lead;
  return m;
}

void DensePoly::strip(double rel_tol) {
  double scale = max_abs_coeff();
  double floor = scale * rel_tol;
  while (!coeffs.empty() && std::abs(coeffs.back()) <= floor) coeffs.pop_back();
}

DensePoly poly_add(const DensePoly& a, const DensePoly& b) {
  DensePoly r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), cplx(0.0, 0.0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  r.strip();
  return r;
}

DensePoly poly_mul(const DensePoly& a, const DensePoly& b) {
  if (a.is_zero() || b.is_zero()) return DensePoly();
  DensePoly r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, cplx(0.0, 0.0));
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  r.strip();
  return r;
}

DensePoly poly_scale(const DensePoly& a, const cplx& s) {
  DensePoly r = a;
  for (auto& c : r.coeffs) c *= s;
  r.strip();
  return r;
}

DensePoly FactoredPoly::expand() const {
  DensePoly p;
  p.coeffs = {front};
  for (const auto& f : factors)
    for (int m = 0; m < f.multiplicity; ++m) {
      DensePoly lin;
      lin.coeffs = {-f.value, cplx(1.0, 0.0)};
      p = poly_mul(p, lin);
    }
  return p;
}

void poly_divmod(const DensePoly& q, const DensePoly& p, DensePoly& quot, DensePoly& rem) {
  if (p.is_zero()) throw precondition_error("poly_divmod: division by zero polynomial");
  rem = q;
  quot = DensePoly();
  int dp = p.degree();
  if (q.degree() < dp) return;
  quot.coeffs.assign(q.degree() - dp + 1, cplx(0.0, 0.0));
  std::vector<cplx> work = q.coeffs;
  cplx lead = p.coeffs.back();
  for (int k = q.degree() - dp; k >= 0; --k) {
    cplx f = work[k + dp] / lead;
    quot.coeffs[k] = f;
    for (int i = 0; i <= dp; ++i) work[k + i] -= f * p.coeffs[i];
  }
  rem.coeffs.assign(work.begin(), work.begin() + dp);
  rem.strip();
  quot.strip();
}

bool poly_divides(const DensePoly& p, const DensePoly& q, double div_tol) {
  if (p.is_zero()) return q.is_zero();
  if (q.is_zero()) return true;
  if (p.degree() > q.degree()) return false;
  // Synthetic division with a first-order running error bound.  The bound is
  // seeded with the representation uncertainty of the inputs (coefficients are
  // rounded values of the intended polynomials) and tracks how the division
  // recursion amplifies it, so the verdict is "the remainder is below
  // tolerance as far as working precision can tell".  For well-conditioned
  // inputs the band is a few ulp and the check is the plain norm ratio.
  const double u = 0x1p-52;
  int dp = p.degree(), dq = q.degree();
  std::vector<cplx> work = q.coeffs;
  std::vector<double> err(dq + 1);
  for (int i = 0; i <= dq; ++i) err[i] = u * std::abs(q.coeffs[i]);
  cplx lead = p.coeffs.back();
  double alead = std::abs(lead);
  for (int k = dq - dp; k >= 0; --k) {
    cplx f = work[k + dp] / lead;
    double af = std::abs(f);
    double ef = err[k + dp] / alead + u * af;
    for (int i = 0; i < dp; ++i) {
      double api = std::abs(p.coeffs[i]);
      work[k + i] -= f * p.coeffs[i];
      err[k + i] += ef * api + 4.0 * u * (af * api + std::abs(work[k + i]));
    }
  }
  double rem = 0.0, band = 0.0;
  for (int i = 0; i < dp; ++i) {
    rem = std::max(rem, std::abs(work[i]));
    band = std::max(band, err[i]);
  }
  return rem <= div_tol * std::max(1.0, q.max_abs_coeff()) + band;
}

}  // namespace seriesroot
