#include "seriesroot/univar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "seriesroot/jet.hpp"

namespace seriesroot {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

std::vector<FixedPoint> fixed_points(const DensePoly& f, const RootOptions& opt,
                                     double class_tol) {
  if (f.degree() < 2)
    throw precondition_error("fixed_points: degree must be >= 2 (affine dynamics are trivial)");
  DensePoly p = f;  // p = f(z) - z
  if (p.coeffs.size() < 2) p.coeffs.resize(2, cplx(0.0, 0.0));
  p.coeffs[1] -= cplx(1.0, 0.0);
  DensePoly df = f.derivative();
  std::vector<FixedPoint> out;
  for (const auto& rc : poly_roots(p, opt)) {
    FixedPoint fp;
    fp.location = rc.value;
    fp.multiplier = df.eval(rc.value);
    fp.multiplicity = rc.multiplicity;
    double m = std::abs(fp.multiplier);
    if (m < 1.0 - class_tol)
      fp.cls = MultiplierClass::Attracting;
    else if (m <= 1.0 + class_tol)
      fp.cls = MultiplierClass::Neutral;
    else
      fp.cls = MultiplierClass::Repelling;
    out.push_back(fp);
  }
  return out;
}

ResidueSum residue_sum(const std::vector<FixedPoint>& fps, double simple_tol) {
  ResidueSum rs{cplx(0.0, 0.0), 0.0};
  for (const auto& fp : fps) {
    cplx denom = fp.multiplier - cplx(1.0, 0.0);
    if (fp.multiplicity > 1 || std::abs(denom) <= simple_tol)
      throw precondition_error("residue_sum: fixed point with multiplier 1 (not simple); "
                               "the identity needs a multiplicity-aware form");
    cplx term = cplx(1.0, 0.0) / denom;
    rs.value += term;
    rs.scale += std::abs(term);
  }
  return rs;
}

DensePoly conjugate_to_origin(const DensePoly& f, const cplx& w) {
  if (f.is_zero()) return f;
  int d = f.degree();
  std::vector<cplx> a = f.coeffs;  // becomes f(z+w) by the in-place Taylor shift
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) a[j] += w * a[j + 1];
  a[0] -= w;
  DensePoly g;
  g.coeffs = std::move(a);
  g.strip();
  return g;
}

FixedPoint select_nonattracting(const std::vector<FixedPoint>& fps, double tol) {
  const FixedPoint* best = nullptr;
  for (const auto& fp : fps) {
    if (std::abs(fp.multiplier) < 1.0 - tol) continue;
    if (!best) {
      best = &fp;
      continue;
    }
    double mb = std::abs(best->multiplier), mf = std::abs(fp.multiplier);
    if (mf > mb * (1.0 + 1e-12)) {
      best = &fp;
    } else if (mf >= mb * (1.0 - 1e-12)) {
      // tie: lexicographically smallest location
      auto key = [](const FixedPoint& x) {
        return std::make_pair(x.location.real(), x.location.imag());
      };
      if (key(fp) < key(*best)) best = &fp;
    }
  }
  if (!best)
    throw numerical_error("select_nonattracting: no fixed point with multiplier modulus >= 1 "
                          "(contradicts the degree >= 2 residue argument)");
  return *best;
}

MonicNormalization monic_normalize(const DensePoly& f) {
  int d = f.degree();
  if (d < 2) throw precondition_error("monic_normalize: degree must be >= 2");
  MonicNormalization mn;
  mn.gamma = std::pow(f.coeffs.back(), 1.0 / (d - 1));
  mn.g.coeffs.resize(d + 1);
  // g(z) = gamma f(z/gamma): coefficient k picks up gamma^(1-k).
  cplx gk = mn.gamma;
  for (int k = 0; k <= d; ++k) {
    mn.g.coeffs[k] = f.coeffs[k] * gk;
    gk /= mn.gamma;
  }
  mn.g.coeffs[d] = cplx(1.0, 0.0);  // exact by construction
  mn.g.strip();
  return mn;
}

CoeffTable shifted_iterate_table(const DensePoly& f_monic, const cplx& c, int J, int I) {
  int d = f_monic.degree();
  if (d < 2) throw precondition_error("shifted_iterate_table: degree must be >= 2");
  if (!f_monic.is_monic())
    throw precondition_error("shifted_iterate_table: polynomial must be monic");
  if (J < 0 || I < 1) throw precondition_error("shifted_iterate_table: need J >= 0, I >= 1");

  PolyMap<ExtComplex> g(1);
  Jet<ExtComplex> comp(1, std::max(d, J));
  for (int k = 0; k <= d; ++k) {
    cplx ck = f_monic.coeffs[k];
    if (k == 0) ck -= c;
    if (ck != cplx(0.0, 0.0)) comp.add_term({k}, ExtComplex(ck));
  }
  g.components.push_back(comp);

  auto iters = iterate_jets(g, J, I);
  CoeffTable T;
  T.f = f_monic;
  T.c = c;
  T.J = J;
  T.I = I;
  T.cols.resize(I + 1);
  for (int i = 0; i <= I; ++i) {
    T.cols[i].resize(J + 1);
    for (int j = 0; j <= J; ++j) T.cols[i][j] = iters[i].components[0].coeff({j});
  }
  return T;
}

GrowthDiagnostics growth_diagnostics(const CoeffTable& T) {
  GrowthDiagnostics D;
  D.J = T.J;
  D.I = T.I;
  int d = T.f.degree();
  D.arg_drift.assign(T.J + 1, std::vector<double>(T.I + 1, kNaN));
  D.dominance_log2.assign(T.J + 1, std::vector<double>(T.I + 1, kNaN));
  D.growth_factor.assign(T.I + 1, kNaN);
  D.err_const.assign(T.I + 1, kNaN);
  D.err_linear.assign(T.I + 1, kNaN);

  auto lg = [](const ExtComplex& x) { return x.log2_abs(); };

  for (int i = 1; i <= T.I; ++i) {
    const ExtComplex& b0 = T.entry(0, i);
    for (int j = 1; j <= T.J; ++j) {
      const ExtComplex& bj = T.entry(j, i);
      if (!b0.is_zero() && !bj.is_zero()) D.arg_drift[j][i] = (bj / b0).arg();
      const ExtComplex& bp = T.entry(j - 1, i);
      if (!bj.is_zero() && !bp.is_zero()) D.dominance_log2[j][i] = lg(bj) - lg(bp);
    }
  }
  // Escape-model defects.  Naively, E_i = (b_0^(i+1) - (b_0^i)^d) / (b_0^i)^(d-1)
  // subtracts two values agreeing to far more than 53 bits once the orbit
  // escapes, so we substitute b_0^(i+1) = g(b_0^i), b_1^(i+1) = g'(b_0^i) b_1^i
  // (g = shifted monic map incl. the -c constant) and keep only the surviving
  // lower-order terms:
  //   E_i  = sum_{k<d}      g_k (b_0^i)^(k-d+1),
  //   Et_i = sum_{1<=k<d} (k/d) g_k (b_0^i)^(k-d+1).
  std::vector<cplx> gk = T.f.coeffs;
  gk[0] -= T.c;
  for (int i = 1; i < T.I; ++i) {
    const ExtComplex &b0 = T.entry(0, i), &b1 = T.entry(1, i);
    const ExtComplex &c0 = T.entry(0, i + 1), &c1 = T.entry(1, i + 1);
    if (!b0.is_zero() && !b1.is_zero() && !c0.is_zero() && !c1.is_zero())
      D.growth_factor[i] = std::exp2((lg(c1) - lg(c0)) - (lg(b1) - lg(b0)));
    if (!b0.is_zero()) {
      ExtComplex inv = ExtComplex(1.0) / b0;
      ExtComplex E, Et;
      for (int k = 0; k < d; ++k) {
        if (gk[k] == cplx(0.0, 0.0)) continue;
        ExtComplex w = ExtComplex(gk[k]) * pow_n(inv, d - 1 - k);
        E += w;
        if (k >= 1) Et += ExtComplex(static_cast<double>(k) / d) * w;
      }
      D.err_const[i] = std::exp2(E.log2_abs());
      D.err_linear[i] = std::exp2(Et.log2_abs());
    }
  }
  return D;
}

ConstantChoice choose_constant(const DensePoly& f_monic, double R, int trials, int short_I) {
  if (trials < 1) throw precondition_error("choose_constant: need at least one trial");
  if (!(R > 0.0)) throw precondition_error("choose_constant: radius must be positive");
  ConstantChoice best;
  best.estimate = kInf;
  for (int t = 0; t < trials; ++t) {
    double theta = 2.0 * std::numbers::pi * t / trials;
    cplx c = std::polar(R, theta);
    double est = kInf;
    try {
      CoeffTable T = shifted_iterate_table(f_monic, c, 1, short_I);
      for (int i = short_I; i >= 1; --i) {
        const ExtComplex &b0 = T.entry(0, i), &b1 = T.entry(1, i);
        if (!b0.is_zero() && !b1.is_zero()) {
          est = std::abs((b1 / b0).arg());
          break;
        }
      }
    } catch (const numerical_error&) {
      // saturated or degenerate trial: skip
    }
    best.scan.emplace_back(theta, est);
    if (est < best.estimate) {
      best.estimate = est;
      best.c = c;
    }
  }
  if (!std::isfinite(best.estimate))
    throw numerical_error("choose_constant: every trial failed to produce a usable table");
  return best;
}

namespace {

// Normalized residual of row q under the current support: |sum| / max-term.
double normalized_row_residual(const std::vector<ExtComplex>& row,
                               const std::map<int, ExtComplex>& a) {
  ExtComplex sum;
  double scale = -kInf;
  for (const auto& [i, ai] : a) {
    ExtComplex term = ai * row[i];
    scale = std::max(scale, term.log2_abs());
    sum += term;
  }
  if (sum.is_zero()) return 0.0;
  if (!std::isfinite(scale)) return 1.0;
  return std::exp2(sum.log2_abs() - scale);
}

}  // namespace

OrthogonalSolution orthogonal_solve_rows(const std::vector<std::vector<ExtComplex>>& rows,
                                         double stage_tol) {
  int m = static_cast<int>(rows.size());
  if (m == 0) throw precondition_error("orthogonal_solve: no rows");
  int I = static_cast<int>(rows.front().size()) - 1;
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != I + 1)
      throw precondition_error("orthogonal_solve: ragged row lengths");
  if (I < 2) throw precondition_error("orthogonal_solve: need at least columns 1 and 2");
  if (!(stage_tol > 0.0 && stage_tol < 1.0))
    throw precondition_error("orthogonal_solve: stage tolerance must lie in (0,1)");

  OrthogonalSolution sol;

  // Advisory only: consecutive rows should end up ordered by magnitude.
  for (int r = 1; r < m; ++r) {
    double hi = rows[r][I].log2_abs(), lo = rows[r - 1][I].log2_abs();
    if (std::isfinite(lo) && hi < lo) sol.dominance_warning = true;
  }

  std::map<int, ExtComplex>& a = sol.coeffs;
  int support_max = 0;

  auto row_nonzero = [&](int q) {
    for (int i = 1; i <= I; ++i)
      if (!rows[q][i].is_zero()) return true;
    return false;
  };
  auto row_sum = [&](int q) {
    ExtComplex s;
    for (const auto& [i, ai] : a) s += ai * rows[q][i];
    return s;
  };
  auto row_scale_log2 = [&](int q) {
    double s = -kInf;
    for (const auto& [i, ai] : a) s = std::max(s, (ai * rows[q][i]).log2_abs());
    return s;
  };

  int r = 0;
  for (; r < m; ++r) {
    StageRecord rec;
    rec.target_row = r;

    if (a.empty()) {
      if (!row_nonzero(r)) {
        rec.skipped = true;
        sol.stages.push_back(rec);
        continue;
      }
      // Base step: zero this row from its first two usable columns.
      int i1 = -1, i2 = -1;
      for (int i = 1; i <= I; ++i)
        if (!rows[r][i].is_zero()) {
          if (i1 < 0)
            i1 = i;
          else {
            i2 = i;
            break;
          }
        }
      if (i2 < 0)
        throw numerical_error("orthogonal_solve: base row has a single usable column");
      a[i1] = -(rows[r][i2] / rows[r][i1]);
      a[i2] = ExtComplex(1.0);
      support_max = i2;
      rec.indices = {i1, i2};
      sol.stages.push_back(rec);
      continue;
    }

    ExtComplex C = row_sum(r);
    double sigma_r = row_scale_log2(r);
    rec.carry_log2 = C.log2_abs();
    if (C.is_zero() ||
        (std::isfinite(sigma_r) && C.log2_abs() <= sigma_r + std::log2(stage_tol))) {
      rec.skipped = true;
      sol.stages.push_back(rec);
      continue;
    }

    // All earlier nontrivial rows must stay cancelled by the fresh terms.
    std::vector<int> prev;
    for (int q = 0; q < r; ++q)
      if (row_nonzero(q)) prev.push_back(q);
    int k = static_cast<int>(prev.size());
    int nsel = k + 1;
    double small_shift = -static_cast<double>(r);  // log2 of the 2^(-stage) factor

    std::vector<double> sigma(prev.size());
    for (size_t e = 0; e < prev.size(); ++e) sigma[e] = row_scale_log2(prev[e]);

    bool accepted = false;
    int lo = support_max + 1;

    // Columns the later nontrivial rows will still need, assuming none of
    // them gets to skip: the stage for row q consumes one more fresh column
    // than there are nonzero rows before it.
    int future_need = 0;
    {
      int nz_before = k + 1;
      for (int q = r + 1; q < m; ++q) {
        if (!row_nonzero(q)) continue;
        future_need += nz_before + 1;
        ++nz_before;
      }
    }

    auto scan = [&](int end, double relax) -> bool {
      if (end > I || end < lo + nsel - 1) return false;
      int g_max = (nsel > 1) ? std::max(1, (end - lo) / (nsel - 1)) : 1;
      for (int g = 1; g <= g_max; ++g)
      for (int t = lo; t + (nsel - 1) * g <= end; ++t) {
        std::vector<int> idx(nsel);
        for (int l = 0; l < nsel; ++l) idx[l] = t + l * g;
        bool usable = true;
        for (int l = 0; l < nsel && usable; ++l)
          if (rows[r][idx[l]].is_zero()) usable = false;
        if (!usable) continue;

        // Unknown substitution w_l = -C u_l, v_l = w_l / b_r^{n_l} turns the
        // stage system into a C-free, magnitude-equilibrated double solve:
        //   sum_l u_l (b_q^{n_l} / b_r^{n_l}) = 0   for earlier rows q,
        //   sum_l u_l                          = 1.
        Eigen::MatrixXcd Msys = Eigen::MatrixXcd::Zero(nsel, nsel);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nsel);
        for (int e = 0; e < k; ++e) {
          std::vector<ExtComplex> rho(nsel);
          double row_max = -kInf;
          for (int l = 0; l < nsel; ++l) {
            rho[l] = rows[prev[e]][idx[l]] / rows[r][idx[l]];
            row_max = std::max(row_max, rho[l].log2_abs());
          }
          if (!std::isfinite(row_max)) continue;  // zero constraint row; gate rejects
          for (int l = 0; l < nsel; ++l) {
            if (rho[l].is_zero()) continue;
            Msys(e, l) = std::polar(std::exp2(rho[l].log2_abs() - row_max), rho[l].arg());
          }
        }
        for (int l = 0; l < nsel; ++l) Msys(k, l) = cplx(1.0, 0.0);
        rhs(k) = cplx(1.0, 0.0);

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Msys,
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
        double smax = svd.singularValues()(0);
        double smin = svd.singularValues()(nsel - 1);
        if (!(smin > 0.0) || smax / smin > 1.0 / stage_tol) continue;
        Eigen::VectorXcd u = svd.solve(rhs);

        std::vector<ExtComplex> v(nsel);
        for (int l = 0; l < nsel; ++l)
          v[l] = (-C) * ExtComplex(u(l)) / rows[r][idx[l]];

        // Smallness: fresh terms must sit 2^(-stage) below each earlier row's
        // established scale, up to the current relaxation factor (rows with no
        // established scale rely on the exact cancellation constraint instead).
        double margin = 0.0;
        bool small_ok = true;
        for (int e = 0; e < k && small_ok; ++e) {
          if (!std::isfinite(sigma[e])) continue;
          for (int l = 0; l < nsel; ++l) {
            double term = (v[l] * rows[prev[e]][idx[l]]).log2_abs();
            double ratio = std::exp2(term - (sigma[e] + small_shift));
            margin = std::max(margin, ratio);
            if (ratio > relax) {
              small_ok = false;
              break;
            }
          }
        }
        if (!small_ok) continue;

        // Trial-commit and check the target row actually cancelled.
        ExtComplex new_sum = C;
        double new_scale = sigma_r;
        for (int l = 0; l < nsel; ++l) {
          ExtComplex term = v[l] * rows[r][idx[l]];
          new_scale = std::max(new_scale, term.log2_abs());
          new_sum += term;
        }
        double res = new_sum.is_zero() ? 0.0 : std::exp2(new_sum.log2_abs() - new_scale);
        if (res > stage_tol) continue;

        for (int l = 0; l < nsel; ++l) a[idx[l]] = v[l];
        support_max = idx.back();
        rec.indices = idx;
        rec.smallness_margin = margin;
        rec.condition = smax / smin;
        return true;
      }
      return false;
    };

    // Prefer columns leaving room for the later stages, and only then spill
    // into the reserved tail; within each span, retry with a geometrically
    // relaxed smallness bound before giving up, since the commit residual
    // check above remains the actual arbiter of a usable stage.
    for (int pass = 0; pass < 2 && !accepted; ++pass) {
      if (pass == 0 && future_need == 0) continue;
      int end = (pass == 0) ? I - future_need : I;
      for (double relax = 1.0; relax <= 4096.0 && !accepted; relax *= 4.0)
        accepted = scan(end, relax);
    }
    if (!accepted) {
      sol.table_exhausted = true;
      sol.stages.push_back(rec);
      break;
    }
    sol.stages.push_back(rec);
  }

  sol.completed = (r == m);
  if (a.empty()) a[1] = ExtComplex(1.0);  // every row was zero: any column works

  sol.row_residuals.resize(m);
  for (int q = 0; q < m; ++q) sol.row_residuals[q] = normalized_row_residual(rows[q], a);
  return sol;
}

OrthogonalSolution orthogonal_solve(const CoeffTable& T, int J, double stage_tol) {
  if (J < 1 || J > T.J) throw precondition_error("orthogonal_solve: row range outside table");
  std::vector<std::vector<ExtComplex>> rows(J);
  for (int j = 1; j <= J; ++j) {
    rows[j - 1].resize(T.I + 1);
    for (int i = 0; i <= T.I; ++i) rows[j - 1][i] = T.entry(j, i);
  }
  return orthogonal_solve_rows(rows, stage_tol);
}

SolveReport solve_about_c(const DensePoly& f, int J, int I, double R, double stage_tol) {
  if (f.degree() < 2) throw precondition_error("solve_about_c: degree must be >= 2");
  if (J < 1) throw precondition_error("solve_about_c: need J >= 1");
  if (I < 4) throw precondition_error("solve_about_c: need I >= 4");
  if (f.coeffs.size() < 2 || f.coeffs[1] == cplx(0.0, 0.0))
    throw precondition_error("solve_about_c: f'(0) = 0; recenter on a fixed point with "
                             "nonzero multiplier first");

  SolveReport rep;
  MonicNormalization mn = monic_normalize(f);
  rep.gamma = mn.gamma;
  rep.monic_f = mn.g;
  rep.constant = choose_constant(mn.g, R);
  rep.c = rep.constant.c;

  CoeffTable T = shifted_iterate_table(mn.g, rep.c, J, I);
  rep.diagnostics = growth_diagnostics(T);

  // The constant row rides along as the least dominant target, so the
  // resulting coefficients annihilate every coefficient row of the iterates.
  std::vector<std::vector<ExtComplex>> rows(J + 1);
  for (int j = 0; j <= J; ++j) {
    rows[j].resize(I + 1);
    for (int i = 0; i <= I; ++i) rows[j][i] = T.entry(j, i);
  }
  rep.solution = orthogonal_solve_rows(rows, stage_tol);
  for (const auto& [i, ai] : rep.solution.coeffs)
    if (!ai.is_zero()) rep.coefficients.push_back({i, ai.log2_abs(), ai.arg()});
  return rep;
}

}  // namespace seriesroot
