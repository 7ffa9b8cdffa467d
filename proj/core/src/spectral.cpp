#include "seriesroot/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace seriesroot {

LinearPart linear_part(const PolyMap<cplx>& F) {
  if (!F.origin_preserving())
    throw precondition_error("linear_part: map must fix the origin");
  int n = F.n_vars;
  LinearPart J(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExponentVec v(n, 0);
      v[j] = 1;
      J.at(i, j) = F.components[i].coeff(v);
    }
  return J;
}

Spectrum eigenvalues(const LinearPart& J, const RootOptions& opt) {
  int n = J.n;
  if (n < 1 || n > 8) throw precondition_error("eigenvalues: arity must be in [1,8]");

  // Faddeev-LeVerrier: M_1 = A, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I.
  // Yields det(T I - A) = T^n + c_1 T^(n-1) + ... + c_n.
  using Mat = Eigen::MatrixXcd;
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = J.at(i, j);
  std::vector<cplx> c(n + 1);
  c[0] = cplx(1.0, 0.0);
  Mat M = Mat::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    M = A * M;
    cplx ck = -M.trace() / cplx(static_cast<double>(k), 0.0);
    c[k] = ck;
    M += ck * Mat::Identity(n, n);
  }

  Spectrum spec;
  spec.char_poly.coeffs.resize(n + 1);
  for (int k = 0; k <= n; ++k) spec.char_poly.coeffs[n - k] = c[k];

  std::vector<cplx> roots = poly_roots_raw(spec.char_poly, opt);
  std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  spec.eigenvalues = std::move(roots);
  return spec;
}

namespace {

void enumerate_exponents(int n, int d, ExponentVec& cur, int pos, int remaining,
                         std::vector<ExponentVec>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate_exponents(n, d, cur, pos + 1, remaining - e, out);
  }
  cur[pos] = 0;
}

}  // namespace

FactoredPoly build_char_jet_poly(const Spectrum& spec, int d, double cluster_tol) {
  if (d < 0) throw precondition_error("build_char_jet_poly: degree must be >= 0");
  int n = static_cast<int>(spec.eigenvalues.size());
  std::vector<ExponentVec> vs;
  ExponentVec cur(n, 0);
  enumerate_exponents(n, d, cur, 0, d, vs);

  std::vector<cplx> values;
  values.reserve(vs.size());
  for (const auto& v : vs) {
    cplx p(1.0, 0.0);
    for (int k = 0; k < n; ++k)
      for (int e = 0; e < v[k]; ++e) p *= spec.eigenvalues[k];
    values.push_back(p);
  }

  // Merge near-coincident products; representative = larger modulus member.
  int m = static_cast<int>(values.size());
  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double ref = std::max({1e-300, std::abs(values[i]), std::abs(values[j])});
      if (std::abs(values[i] - values[j]) <= cluster_tol * ref) parent[find(i)] = find(j);
    }
  FactoredPoly chi;
  for (int i = 0; i < m; ++i) {
    if (find(i) != i) continue;
    cplx rep = values[i];
    int count = 0;
    for (int j = 0; j < m; ++j)
      if (find(j) == i) {
        ++count;
        if (std::abs(values[j]) > std::abs(rep)) rep = values[j];
      }
    chi.factors.push_back({rep, count});
  }
  std::sort(chi.factors.begin(), chi.factors.end(),
            [](const RootCluster& a, const RootCluster& b) {
              if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });
  return chi;
}

const char* verdict_name(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::IsRootExpanding: return "IsRoot-Expanding";
    case VerdictTag::IsRootUnitModulus: return "IsRoot-UnitModulus";
    case VerdictTag::IsRootLinear: return "IsRoot-Linear";
    case VerdictTag::NotRootZeroLinearPart: return "NotRoot-ZeroLinearPart";
    case VerdictTag::GenericallyNotContracting: return "GenericallyNot-Contracting";
    case VerdictTag::GenericallyNotMixed: return "GenericallyNot-Mixed";
    case VerdictTag::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

Verdict classify_regime(const Spectrum& spec, bool F_is_nonlinear, bool F_is_zero,
                        double tol) {
  Verdict v;
  if (F_is_zero) {
    // The zero map is annihilated by T alone; treat with the linear case.
    v.tag = VerdictTag::IsRootLinear;
    v.detail = "zero map: annihilated by the series T";
    return v;
  }
  if (!F_is_nonlinear) {
    v.tag = VerdictTag::IsRootLinear;
    v.detail = "linear map: annihilated by its own characteristic polynomial";
    return v;
  }

  bool all_zero = true;
  int n_contracting = 0, n_unit = 0, n_expanding = 0, n_bad = 0;
  for (const auto& lam : spec.eigenvalues) {
    double m = std::abs(lam);
    if (!std::isfinite(m)) {
      ++n_bad;
      continue;
    }
    if (m > tol) all_zero = false;
    if (m < 1.0 - tol)
      ++n_contracting;
    else if (m <= 1.0 + tol)
      ++n_unit;
    else
      ++n_expanding;
  }

  if (n_bad > 0 || spec.eigenvalues.empty()) {
    v.tag = VerdictTag::Indeterminate;
    v.detail = "spectrum unavailable or non-finite";
    return v;
  }
  if (all_zero) {
    v.tag = VerdictTag::NotRootZeroLinearPart;
    v.detail = "nonlinear with nilpotent linear part: only the zero series annihilates";
    return v;
  }
  int total = static_cast<int>(spec.eigenvalues.size());
  if (n_expanding == total) {
    v.tag = VerdictTag::IsRootExpanding;
    v.detail = "all eigenvalue moduli exceed 1: entire-series root via infinite product";
    return v;
  }
  if (n_unit == total) {
    v.tag = VerdictTag::IsRootUnitModulus;
    v.detail = "all eigenvalue moduli equal 1 within tolerance: formal-series root";
    return v;
  }
  if (n_contracting > 0) {
    v.tag = VerdictTag::GenericallyNotContracting;
    v.detail = "some eigenvalue modulus below 1: generic maps admit no nonzero series";
    return v;
  }
  if (n_unit > 0 && n_expanding > 0) {
    v.tag = VerdictTag::GenericallyNotMixed;
    v.detail = "unit-modulus and expanding eigenvalues mix: generic maps admit no nonzero series";
    return v;
  }
  v.tag = VerdictTag::Indeterminate;
  v.detail = "moduli straddle a tolerance boundary";
  return v;
}

PolyMap<cplx> affine_after(const AffineMap& A, const PolyMap<cplx>& F) {
  int n = F.n_vars;
  if (A.M.n != n) throw precondition_error("affine_after: arity mismatch");
  int cap = 0;
  for (const auto& comp : F.components) cap = std::max(cap, comp.cap);
  PolyMap<cplx> G(n);
  for (int i = 0; i < n; ++i) {
    Jet<cplx> gi(n, cap);
    for (int j = 0; j < n; ++j) {
      if (A.M.at(i, j) == cplx(0.0, 0.0)) continue;
      gi = jet_add(gi, jet_scale(F.components[j], A.M.at(i, j)), cap);
    }
    gi.add_term(ExponentVec(n, 0), A.b[i]);
    G.components.push_back(gi);
  }
  return G;
}

ExpandingDecomposition decompose_expanding(const PolyMap<cplx>& F, double s) {
  if (!(s > 1.0)) throw precondition_error("decompose_expanding: scale must exceed 1");
  int n = F.n_vars;
  if (static_cast<int>(F.components.size()) != n)
    throw precondition_error("decompose_expanding: component count != arity");

  // Linear part at the origin (constant terms allowed, so read degree-1
  // coefficients directly rather than through linear_part's origin check).
  using Mat = Eigen::MatrixXcd;
  Mat J(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExponentVec v(n, 0);
      v[j] = 1;
      J(i, j) = F.components[i].coeff(v);
    }
  Eigen::FullPivLU<Mat> lu(J);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw precondition_error("decompose_expanding: no expanding decomposition at origin "
                             "(linear part singular)");
  Mat Jinv = lu.inverse();

  ExponentVec zero(n, 0);
  Eigen::VectorXcd F0(n);
  for (int i = 0; i < n; ++i) F0(i) = F.components[i].coeff(zero);

  ExpandingDecomposition dec;
  dec.s = s;
  dec.A.M = LinearPart(n);
  dec.A_inverse.M = LinearPart(n);
  dec.A.b.resize(n);
  dec.A_inverse.b.resize(n);
  Eigen::VectorXcd Ab = -s * (Jinv * F0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      dec.A.M.at(i, j) = s * Jinv(i, j);
      dec.A_inverse.M.at(i, j) = J(i, j) / s;
    }
    dec.A.b[i] = Ab(i);
    dec.A_inverse.b[i] = F0(i);
  }
  dec.G = affine_after(dec.A, F);
  // A(F(0)) vanishes identically; drop the floating residue so G fixes the
  // origin exactly and downstream origin-preserving checks accept it.
  for (auto& comp : dec.G.components) comp.terms.erase(zero);
  return dec;
}

}  // namespace seriesroot
