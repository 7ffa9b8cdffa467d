#include "seriesroot/annihilator.hpp"

#include <algorithm>
#include <cmath>

namespace seriesroot {

namespace {

struct ScaledSequences {
  std::vector<std::vector<cplx>> seqs;  // prescaled, each normalized to unit max
};

// Coefficient sequences of all monomials up to degree d, divided by rho^i and
// then normalized per sequence.  Identically-negligible sequences are dropped.
ScaledSequences collect_sequences(const std::vector<PolyMap<cplx>>& iters, int n, int d,
                                  double rho) {
  std::vector<ExponentVec> vs;
  {
    ExponentVec cur(n, 0);
    auto go = [&](auto&& self, int pos, int rem) -> void {
      if (pos == n) {
        vs.push_back(cur);
        return;
      }
      for (int e = 0; e <= rem; ++e) {
        cur[pos] = e;
        self(self, pos + 1, rem - e);
      }
      cur[pos] = 0;
    };
    go(go, 0, d);
  }

  ScaledSequences out;
  int N = static_cast<int>(iters.size()) - 1;
  for (int k = 1; k <= n; ++k)
    for (const auto& v : vs) {
      std::vector<cplx> s(N + 1);
      double rho_i = 1.0;
      double maxabs = 0.0;
      for (int i = 0; i <= N; ++i) {
        s[i] = iters[i].components[k - 1].coeff(v) / rho_i;
        maxabs = std::max(maxabs, std::abs(s[i]));
        rho_i *= rho;
      }
      if (maxabs < 1e-250) continue;
      for (auto& x : s) x /= maxabs;
      out.seqs.push_back(std::move(s));
    }
  return out;
}

// Annihilation defect of the polynomial with the given (prescaled) roots,
// applied to every sequence as a cascade of first-order difference operators
// s_i <- s_{i+1} - mu s_i, largest modulus first.  This keeps the graded
// eliminations relatively accurate at any candidate degree; forming the
// expanded coefficients instead would bury the small-root structure in noise.
// The defect is the final maximum magnitude over the running scale of each
// sequence (its own max and every intermediate max).
double operator_residual(const ScaledSequences& sc, std::vector<cplx> roots) {
  std::sort(roots.begin(), roots.end(),
            [](const cplx& a, const cplx& b) { return std::abs(a) > std::abs(b); });
  double worst = 0.0;
  for (const auto& s : sc.seqs) {
    std::vector<cplx> t = s;
    double scale = 0.0;
    for (const cplx& x : t) scale = std::max(scale, std::abs(x));
    for (const cplx& mu : roots) {
      for (size_t i = 0; i + 1 < t.size(); ++i) t[i] = t[i + 1] - mu * t[i];
      t.pop_back();
      for (const cplx& x : t) scale = std::max(scale, std::abs(x));
    }
    double final_max = 0.0;
    for (const cplx& x : t) final_max = std::max(final_max, std::abs(x));
    if (scale > 0.0) worst = std::max(worst, final_max / scale);
  }
  return worst;
}

// Decision form of the cascade test.  The unit-normalized inputs carry
// absolute noise around eps_seq (long iteration chains), and each difference
// operator can grow it by 1+|mu|, so anything at or below
// eps_seq * prod(1+|mu|) is indistinguishable from an exact annihilation.
bool cascade_annihilates(const ScaledSequences& sc, std::vector<cplx> roots,
                         double rank_tol) {
  constexpr double eps_seq = 1e-12;
  std::sort(roots.begin(), roots.end(),
            [](const cplx& a, const cplx& b) { return std::abs(a) > std::abs(b); });
  double amp = 1.0;
  for (const cplx& mu : roots) amp *= 1.0 + std::abs(mu);
  double floor_abs = eps_seq * amp;
  for (const auto& s : sc.seqs) {
    std::vector<cplx> t = s;
    double scale = 0.0;
    for (const cplx& x : t) scale = std::max(scale, std::abs(x));
    for (const cplx& mu : roots) {
      for (size_t i = 0; i + 1 < t.size(); ++i) t[i] = t[i + 1] - mu * t[i];
      t.pop_back();
      for (const cplx& x : t) scale = std::max(scale, std::abs(x));
    }
    double final_max = 0.0;
    for (const cplx& x : t) final_max = std::max(final_max, std::abs(x));
    if (final_max > rank_tol * scale + floor_abs) return false;
  }
  return true;
}

}  // namespace

AnnihilatorReport minpoly_up_to_degree(const PolyMap<cplx>& F, int d, int N,
                                       double rank_tol) {
  if (d < 0) throw precondition_error("minpoly: degree must be >= 0");
  Spectrum spec = eigenvalues(linear_part(F));
  FactoredPoly chi = build_char_jet_poly(spec, d);
  int max_deg = chi.degree();

  AnnihilatorReport rep;
  rep.candidate = chi;
  rep.rank_tol = rank_tol;
  rep.iterates_used = N;

  if (F.is_zero()) {  // every coefficient sequence is 0, 0, ...: T annihilates
    rep.minimal.coeffs = {cplx(0.0, 0.0), cplx(1.0, 0.0)};
    rep.minimal_factors.factors.push_back({cplx(0.0, 0.0), 1});
    rep.residual = 0.0;
    rep.scaling = 1.0;
    rep.sequences_used = 0;
    return rep;
  }

  if (N < max_deg + 2)
    throw precondition_error("minpoly: need at least 2 + eigenvalue-product degree iterates");

  double rho = 1.0;
  for (const auto& f : chi.factors) rho = std::max(rho, std::abs(f.value));

  auto iters = iterate_jets(F, d, N);
  ScaledSequences sc = collect_sequences(iters, F.n_vars, d, rho);

  rep.scaling = rho;
  rep.sequences_used = static_cast<int>(sc.seqs.size());

  if (sc.seqs.empty()) {  // numerically indistinguishable from the zero map
    rep.minimal.coeffs = {cplx(0.0, 0.0), cplx(1.0, 0.0)};
    rep.minimal_factors.factors.push_back({cplx(0.0, 0.0), 1});
    rep.residual = 0.0;
    return rep;
  }

  // Per-cluster minimal multiplicity: with every other cluster at full
  // multiplicity (so their modes cannot contaminate the test), a cluster's
  // minimal multiplicity is the smallest k whose combined operator cascade
  // still annihilates the family.
  int nc = static_cast<int>(chi.factors.size());
  auto roots_with = [&](int c, int mult_c) {
    std::vector<cplx> roots;
    for (int j = 0; j < nc; ++j) {
      int m = (j == c) ? mult_c : chi.factors[j].multiplicity;
      for (int t = 0; t < m; ++t) roots.push_back(chi.factors[j].value / rho);
    }
    return roots;
  };
  std::vector<int> keep(nc);
  for (int c = 0; c < nc; ++c) {
    keep[c] = chi.factors[c].multiplicity;
    for (int k = 0; k < chi.factors[c].multiplicity; ++k)
      if (cascade_annihilates(sc, roots_with(c, k), rank_tol)) {
        keep[c] = k;
        break;
      }
  }

  FactoredPoly kept;
  std::vector<cplx> kept_scaled;
  for (int c = 0; c < nc; ++c)
    if (keep[c] > 0) {
      kept.factors.push_back({chi.factors[c].value, keep[c]});
      for (int t = 0; t < keep[c]; ++t) kept_scaled.push_back(chi.factors[c].value / rho);
    }
  double res = operator_residual(sc, kept_scaled);
  if (!cascade_annihilates(sc, kept_scaled, rank_tol)) {
    // Independent per-cluster reductions interacted badly: fall back to the
    // full candidate, which annihilates whenever the truncation theory holds.
    std::vector<cplx> full;
    for (int c = 0; c < nc; ++c)
      for (int t = 0; t < chi.factors[c].multiplicity; ++t)
        full.push_back(chi.factors[c].value / rho);
    kept = chi;
    res = operator_residual(sc, full);
    if (!cascade_annihilates(sc, full, rank_tol))
      throw numerical_error("minpoly: no annihilating polynomial up to the "
                            "eigenvalue-product degree met the residual gate");
  }
  if (kept.factors.empty())  // nonzero map annihilated by the empty product
    throw numerical_error("minpoly: nonzero sequences reported an empty minimal polynomial");
  rep.minimal = kept.expand();
  rep.minimal_factors = kept;
  rep.residual = res;
  return rep;
}

double verify_annihilates(const DensePoly& P, const std::vector<PolyMap<cplx>>& iterates,
                          int d) {
  if (P.is_zero()) return 0.0;
  if (static_cast<int>(iterates.size()) <= P.degree())
    throw precondition_error("verify_annihilates: not enough iterates for this polynomial");
  int n = iterates.front().n_vars;
  PolyMap<cplx> acc(n);
  for (int k = 0; k < n; ++k) acc.components.emplace_back(n, d);
  double largest = 0.0;
  for (int i = 0; i <= P.degree(); ++i) {
    const cplx& pi = P.coeffs[i];
    if (pi == cplx(0.0, 0.0)) continue;
    for (int k = 0; k < n; ++k) {
      Jet<cplx> term = jet_scale(iterates[i].components[k], pi);
      double lg = term.max_coeff_log2();
      if (std::isfinite(lg)) largest = std::max(largest, std::exp2(lg));
      acc.components[k] = jet_add(acc.components[k], term, d);
    }
  }
  double final_max = 0.0;
  for (int k = 0; k < n; ++k) {
    double lg = acc.components[k].max_coeff_log2();
    if (std::isfinite(lg)) final_max = std::max(final_max, std::exp2(lg));
  }
  if (largest == 0.0) return 0.0;
  return final_max / largest;
}

double verify_annihilates(const DensePoly& P, const PolyMap<cplx>& F, int d) {
  auto iters = iterate_jets(F, d, std::max(0, P.degree()));
  return verify_annihilates(P, iters, d);
}

}  // namespace seriesroot
