#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "seriesroot/errors.hpp"
#include "seriesroot/ext_scalar.hpp"

namespace seriesroot {

// Monomial exponents (v_1, ..., v_n); compared lexicographically by std::map.
using ExponentVec = std::vector<int>;

inline int total_degree(const ExponentVec& v) {
  return std::accumulate(v.begin(), v.end(), 0);
}

// Coefficient policies.  Plain complex coefficients drop terms below an absolute
// floor to keep maps sparse; extended scalars are never pruned (their whole
// point is preserving extreme magnitudes).
template <class S>
struct scalar_policy;

template <>
struct scalar_policy<cplx> {
  static bool negligible(const cplx& c) { return std::abs(c) < 1e-300; }
  static cplx from_cplx(const cplx& c) { return c; }
  static double log2_abs(const cplx& c) { return std::log2(std::abs(c)); }
};

template <>
struct scalar_policy<ExtComplex> {
  static bool negligible(const ExtComplex& c) { return c.is_zero(); }
  static ExtComplex from_cplx(const cplx& c) { return ExtComplex(c); }
  static double log2_abs(const ExtComplex& c) { return c.log2_abs(); }
};

// Polynomial in n variables truncated above total degree `cap` (a d-jet).
template <class S>
struct Jet {
  int n_vars = 0;
  int cap = 0;
  std::map<ExponentVec, S> terms;

  Jet() = default;
  Jet(int n, int cap_) : n_vars(n), cap(cap_) {}

  const S& coeff(const ExponentVec& v) const {
    static const S zero{};
    auto it = terms.find(v);
    return it == terms.end() ? zero : it->second;
  }

  void add_term(const ExponentVec& v, const S& c) {
    if (static_cast<int>(v.size()) != n_vars)
      throw precondition_error("Jet: exponent arity mismatch");
    if (total_degree(v) > cap) return;
    auto [it, inserted] = terms.emplace(v, c);
    if (!inserted) it->second = it->second + c;
    if (scalar_policy<S>::negligible(it->second)) terms.erase(it);
  }

  Jet truncated(int new_cap) const {
    Jet r(n_vars, new_cap);
    for (const auto& [v, c] : terms)
      if (total_degree(v) <= new_cap) r.terms.emplace(v, c);
    return r;
  }

  // Max total degree actually present.
  int degree() const {
    int d = 0;
    for (const auto& [v, c] : terms) d = std::max(d, total_degree(v));
    return d;
  }

  bool is_zero() const { return terms.empty(); }

  double max_coeff_log2() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [v, c] : terms) m = std::max(m, scalar_policy<S>::log2_abs(c));
    return m;
  }
};

// Summation order is fixed (lexicographic in the left factor's exponents,
// then the right's) so repeated runs produce identical bits.
template <class S>
Jet<S> jet_mul(const Jet<S>& a, const Jet<S>& b, int cap) {
  if (a.n_vars != b.n_vars) throw precondition_error("jet_mul: arity mismatch");
  Jet<S> r(a.n_vars, cap);
  ExponentVec v(a.n_vars);
  for (const auto& [u, cu] : a.terms) {
    int du = total_degree(u);
    if (du > cap) continue;
    for (const auto& [w, cw] : b.terms) {
      if (du + total_degree(w) > cap) continue;
      for (int k = 0; k < a.n_vars; ++k) v[k] = u[k] + w[k];
      r.add_term(v, cu * cw);
    }
  }
  return r;
}

template <class S>
Jet<S> jet_add(const Jet<S>& a, const Jet<S>& b, int cap) {
  Jet<S> r(a.n_vars, cap);
  for (const auto& [v, c] : a.terms) r.add_term(v, c);
  for (const auto& [v, c] : b.terms) r.add_term(v, c);
  return r;
}

template <class S>
Jet<S> jet_scale(const Jet<S>& a, const S& s) {
  Jet<S> r(a.n_vars, a.cap);
  for (const auto& [v, c] : a.terms) r.add_term(v, c * s);
  return r;
}

// Polynomial self-map of C^n: one complete polynomial (or jet) per component.
template <class S>
struct PolyMap {
  int n_vars = 0;
  std::vector<Jet<S>> components;

  PolyMap() = default;
  explicit PolyMap(int n) : n_vars(n) {}

  bool origin_preserving() const {
    ExponentVec zero(n_vars, 0);
    for (const auto& comp : components)
      if (!scalar_policy<S>::negligible(comp.coeff(zero))) return false;
    return true;
  }

  bool is_linear() const {
    for (const auto& comp : components)
      for (const auto& [v, c] : comp.terms)
        if (total_degree(v) > 1) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& comp : components)
      if (!comp.is_zero()) return false;
    return true;
  }

  int degree() const {
    int d = 0;
    for (const auto& comp : components) d = std::max(d, comp.degree());
    return d;
  }

  PolyMap truncated(int cap) const {
    PolyMap r(n_vars);
    for (const auto& comp : components) r.components.push_back(comp.truncated(cap));
    return r;
  }
};

template <class S>
PolyMap<S> identity_map(int n, int cap) {
  PolyMap<S> id(n);
  for (int k = 0; k < n; ++k) {
    Jet<S> comp(n, cap);
    if (cap >= 1) {
      ExponentVec v(n, 0);
      v[k] = 1;
      comp.add_term(v, S(scalar_policy<S>::from_cplx(cplx(1.0, 0.0))));
    }
    id.components.push_back(comp);
  }
  return id;
}

// Truncated composition outer(inner).  `outer` must be complete (untruncated):
// every term of degree <= cap in the result then depends only on inner
// coefficients of degree <= cap, because monomial degrees only add.  Inner
// components may carry constant terms.
template <class S>
Jet<S> compose_component(const Jet<S>& outer, const PolyMap<S>& inner, int cap) {
  if (outer.n_vars != inner.n_vars)
    throw precondition_error("jet_compose: arity mismatch");
  int n = outer.n_vars;
  // Powers of each inner component, truncated at cap.
  std::vector<int> max_pow(n, 0);
  for (const auto& [v, c] : outer.terms)
    for (int k = 0; k < n; ++k) max_pow[k] = std::max(max_pow[k], v[k]);
  std::vector<std::vector<Jet<S>>> pw(n);
  for (int k = 0; k < n; ++k) {
    pw[k].reserve(max_pow[k] + 1);
    Jet<S> one(n, cap);
    one.add_term(ExponentVec(n, 0), S(scalar_policy<S>::from_cplx(cplx(1.0, 0.0))));
    pw[k].push_back(one);
    for (int p = 1; p <= max_pow[k]; ++p)
      pw[k].push_back(jet_mul(pw[k][p - 1], inner.components[k], cap));
  }
  Jet<S> r(n, cap);
  for (const auto& [v, c] : outer.terms) {
    Jet<S> prod(n, cap);
    prod.add_term(ExponentVec(n, 0), c);
    for (int k = 0; k < n; ++k)
      if (v[k] > 0) prod = jet_mul(prod, pw[k][v[k]], cap);
    r = jet_add(r, prod, cap);
  }
  return r;
}

template <class S>
PolyMap<S> jet_compose(const PolyMap<S>& outer, const PolyMap<S>& inner, int cap) {
  PolyMap<S> r(outer.n_vars);
  for (const auto& comp : outer.components)
    r.components.push_back(compose_component(comp, inner, cap));
  return r;
}

// Jets of the compositional iterates F^0=id, F^1, ..., F^N at truncation cap.
// [F^(i+1)]_cap = [F o [F^i]_cap]_cap with the complete F as outer factor,
// which equals the cap-jet of the true iterate (see compose note above).
template <class S>
std::vector<PolyMap<S>> iterate_jets(const PolyMap<S>& F, int cap, int N) {
  if (static_cast<int>(F.components.size()) != F.n_vars)
    throw precondition_error("iterate_jets: component count != arity");
  std::vector<PolyMap<S>> out;
  out.reserve(N + 1);
  out.push_back(identity_map<S>(F.n_vars, cap));
  for (int i = 1; i <= N; ++i) out.push_back(jet_compose(F, out.back(), cap));
  return out;
}

// Coefficient of monomial v in component k (1-based) across all iterates.
template <class S>
std::vector<S> coeff_sequence(const std::vector<PolyMap<S>>& iters, int k,
                              const ExponentVec& v) {
  if (iters.empty()) return {};
  if (k < 1 || k > iters.front().n_vars)
    throw precondition_error("coeff_sequence: component index out of range");
  std::vector<S> seq;
  seq.reserve(iters.size());
  for (const auto& it : iters) seq.push_back(it.components[k - 1].coeff(v));
  return seq;
}

}  // namespace seriesroot
