#include "seriesroot/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "seriesroot/annihilator.hpp"
#include "seriesroot/errors.hpp"
#include "seriesroot/series.hpp"
#include "seriesroot/spectral.hpp"
#include "seriesroot/univar.hpp"

namespace seriesroot::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw numerical_error("sha256: digest failure");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0x0f]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw precondition_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw precondition_error("input is not valid JSON");
  return j;
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw precondition_error(std::string("expected a number for ") + what);
  double v = j.get<double>();
  if (!std::isfinite(v)) throw precondition_error(std::string("non-finite value for ") + what);
  return v;
}

cplx parse_cplx(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw precondition_error(std::string("expected [re, im] for ") + what);
  return {finite_number(j[0], what), finite_number(j[1], what)};
}

json jcplx(const cplx& z) { return json::array({z.real(), z.imag()}); }

json jpoly(const DensePoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs) a.push_back(jcplx(c));
  return a;
}

json jcomponents(const PolyMap<cplx>& F) {
  json comps = json::array();
  for (const auto& comp : F.components) {
    json terms = json::array();
    for (const auto& [v, c] : comp.terms) terms.push_back(json::array({json(v), jcplx(c)}));
    comps.push_back(terms);
  }
  return comps;
}

json jaffine(const AffineMap& A) {
  json rows = json::array();
  for (int i = 0; i < A.M.n; ++i) {
    json row = json::array();
    for (int j = 0; j < A.M.n; ++j) row.push_back(jcplx(A.M.at(i, j)));
    rows.push_back(row);
  }
  json b = json::array();
  for (const auto& c : A.b) b.push_back(jcplx(c));
  return json{{"matrix", rows}, {"offset", b}};
}

const char* class_name(MultiplierClass c) {
  switch (c) {
    case MultiplierClass::Attracting: return "attracting";
    case MultiplierClass::Neutral: return "neutral";
    case MultiplierClass::Repelling: return "repelling";
  }
  throw precondition_error("unreachable multiplier class");
}

PolyMap<cplx> parse_map_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("components"))
    throw precondition_error("map document needs \"n\" and \"components\"");
  if (!j["n"].is_number_integer()) throw precondition_error("\"n\" must be an integer");
  int n = j["n"].get<int>();
  if (n < 1 || n > 8) throw precondition_error("arity n must lie in 1..8");
  const json& comps = j["components"];
  if (!comps.is_array() || static_cast<int>(comps.size()) != n)
    throw precondition_error("\"components\" must list exactly n components");

  auto term_exps = [&](const json& t) {
    if (!t.is_array() || t.size() != 2)
      throw precondition_error("each term must be [exponents, [re, im]]");
    const json& e = t[0];
    if (!e.is_array() || static_cast<int>(e.size()) != n)
      throw precondition_error("exponent vector must have n entries");
    ExponentVec v(n);
    for (int k = 0; k < n; ++k) {
      if (!e[k].is_number_integer() || e[k].get<int>() < 0)
        throw precondition_error("exponents must be nonnegative integers");
      v[k] = e[k].get<int>();
    }
    return v;
  };

  std::vector<std::vector<std::pair<ExponentVec, cplx>>> parsed(n);
  int cap = 0;
  for (int ci = 0; ci < n; ++ci) {
    const json& comp = comps[ci];
    if (!comp.is_array()) throw precondition_error("each component must be a list of terms");
    for (const json& t : comp) {
      ExponentVec v = term_exps(t);
      cap = std::max(cap, total_degree(v));
      parsed[ci].emplace_back(std::move(v), parse_cplx(t[1], "coefficient"));
    }
  }
  PolyMap<cplx> F(n);
  for (int ci = 0; ci < n; ++ci) {
    Jet<cplx> jet(n, cap);
    for (const auto& [v, c] : parsed[ci]) jet.add_term(v, c);
    F.components.push_back(jet);
  }
  return F;
}

DensePoly parse_poly_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs"))
    throw precondition_error("polynomial document needs \"coeffs\"");
  const json& cs = j["coeffs"];
  if (!cs.is_array() || cs.empty())
    throw precondition_error("\"coeffs\" must be a nonempty list of [re, im] pairs");
  DensePoly p;
  for (const json& c : cs) p.coeffs.push_back(parse_cplx(c, "coefficient"));
  p.strip();
  return p;
}

DensePoly parse_univariate_json(const json& j) {
  if (j.is_object() && j.contains("coeffs")) return parse_poly_json(j);
  if (j.is_object() && j.contains("components")) {
    PolyMap<cplx> F = parse_map_json(j);
    if (F.n_vars != 1)
      throw precondition_error("this command needs a one-variable input (n = 1)");
    DensePoly p;
    p.coeffs.assign(F.components[0].degree() + 1, cplx(0.0, 0.0));
    for (const auto& [v, c] : F.components[0].terms) p.coeffs[v[0]] = c;
    p.strip();
    return p;
  }
  throw precondition_error("unrecognized input schema: expected \"coeffs\" or \"components\"");
}

json envelope(const std::string& command, const std::string& input_text, json result,
              json tolerances) {
  return json{
      {"command", command},
      {"input_sha256", sha256_hex(input_text)},
      {"result", std::move(result)},
      {"tolerances", std::move(tolerances)},
      {"version", "0.1.0"},
  };
}

struct Args {
  std::string input;
  std::string poly_path;
  int degree = 2;
  int iters = 0;
  int count = 8;
  int rows = 3;
  int cols = 24;
  double radius = 1e3;
  double tol = 1e-9;
  double verify_tol = 1e-8;
  double rank_tol = 1e-9;
  double cluster_tol = 1e-8;
  double stage_tol = 1e-9;
  double scale = 2.0;
  bool to_fixed_point = false;
  std::vector<double> shift;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-truncation root certificates for polynomial endomorphisms"};
  app.require_subcommand(1);
  Args a;

  auto* classify = app.add_subcommand("classify", "Eigenvalue-regime verdict for a map");
  classify->add_option("input", a.input, "map JSON file")->required();
  classify->add_option("--tol", a.tol, "modulus band half-width");

  auto* charpoly = app.add_subcommand(
      "charpoly", "Eigenvalue-product polynomial annihilating every d-jet sequence");
  charpoly->add_option("input", a.input, "map JSON file")->required();
  charpoly->add_option("--degree", a.degree, "jet truncation degree")->required();
  charpoly->add_option("--cluster-tol", a.cluster_tol, "relative root merge tolerance");

  auto* minpoly = app.add_subcommand("minpoly", "Minimal vanishing polynomial of the d-jets");
  minpoly->add_option("input", a.input, "map JSON file")->required();
  minpoly->add_option("--degree", a.degree, "jet truncation degree")->required();
  minpoly->add_option("--iters", a.iters, "iterate count (default: twice the candidate degree plus two)");
  minpoly->add_option("--rank-tol", a.rank_tol, "relative rank / residual tolerance");

  auto* iterate = app.add_subcommand("iterate", "Truncated iterates of a map");
  iterate->add_option("input", a.input, "map JSON file")->required();
  iterate->add_option("--degree", a.degree, "jet truncation degree")->required();
  iterate->add_option("--count", a.count, "number of iterates");

  auto* verify = app.add_subcommand("verify", "Check a polynomial annihilates the d-jets");
  verify->add_option("input", a.input, "map JSON file")->required();
  verify->add_option("--poly", a.poly_path, "polynomial JSON file")->required();
  verify->add_option("--degree", a.degree, "jet truncation degree")->required();
  verify->add_option("--tol", a.verify_tol, "residual acceptance bound");

  auto* fixpoints = app.add_subcommand("fixpoints", "Fixed points, multipliers, residue sum");
  fixpoints->add_option("input", a.input, "polynomial (or n=1 map) JSON file")->required();
  fixpoints->add_option("--tol", a.tol, "multiplier class band half-width");
  fixpoints->add_option("--cluster-tol", a.cluster_tol, "root cluster tolerance");

  auto* conjugate = app.add_subcommand("conjugate", "Shift a fixed point to the origin");
  conjugate->add_option("input", a.input, "polynomial (or n=1 map) JSON file")->required();
  conjugate->add_flag("--to-fixed-point", a.to_fixed_point,
                      "shift the largest-multiplier nonattracting fixed point");
  conjugate->add_option("--shift", a.shift, "explicit shift, two numbers re im")->expected(2);

  auto* decompose = app.add_subcommand(
      "decompose", "Affine conjugation onto an origin-fixed map with expanding linear part");
  decompose->add_option("input", a.input, "map JSON file")->required();
  decompose->add_option("--scale", a.scale, "target linear-part scale (must exceed 1)");

  auto* solve1d = app.add_subcommand(
      "solve1d", "Series coefficients annihilating shifted iterate rows of a one-variable map");
  solve1d->add_option("input", a.input, "polynomial (or n=1 map) JSON file")->required();
  solve1d->add_option("--rows", a.rows, "highest coefficient row J");
  solve1d->add_option("--cols", a.cols, "highest iterate index I");
  solve1d->add_option("--radius", a.radius, "shift-constant search radius");
  solve1d->add_option("--stage-tol", a.stage_tol, "stage residual / condition tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    std::string text = read_file(a.input);
    json doc = parse_json_text(text);
    json result, tolerances;
    std::string command;

    if (app.got_subcommand(classify)) {
      command = "classify";
      PolyMap<cplx> F = parse_map_json(doc);
      Spectrum spec = eigenvalues(linear_part(F));
      Verdict v = classify_regime(spec, !F.is_linear(), F.is_zero(), a.tol);
      json eig = json::array();
      for (const auto& l : spec.eigenvalues) eig.push_back(jcplx(l));
      result = {{"verdict", verdict_name(v.tag)},
                {"detail", v.detail},
                {"eigenvalues", eig},
                {"char_poly", jpoly(spec.char_poly)}};
      tolerances = {{"tol", a.tol}};
    } else if (app.got_subcommand(charpoly)) {
      command = "charpoly";
      PolyMap<cplx> F = parse_map_json(doc);
      Spectrum spec = eigenvalues(linear_part(F));
      FactoredPoly X = build_char_jet_poly(spec, a.degree, a.cluster_tol);
      json factors = json::array();
      for (const auto& rc : X.factors)
        factors.push_back({{"value", jcplx(rc.value)}, {"multiplicity", rc.multiplicity}});
      result = {{"degree", X.degree()}, {"factors", factors}, {"coeffs", jpoly(X.expand())}};
      tolerances = {{"cluster_tol", a.cluster_tol}};
    } else if (app.got_subcommand(minpoly)) {
      command = "minpoly";
      PolyMap<cplx> F = parse_map_json(doc);
      int N = a.iters;
      if (N <= 0) {
        Spectrum spec = eigenvalues(linear_part(F));
        N = 2 * build_char_jet_poly(spec, a.degree).degree() + 2;
      }
      AnnihilatorReport rep = minpoly_up_to_degree(F, a.degree, N, a.rank_tol);
      result = {{"minimal", jpoly(rep.minimal)},
                {"residual", rep.residual},
                {"candidate_degree", rep.candidate.degree()},
                {"divides_candidate", poly_divides(rep.minimal, rep.candidate.expand())},
                {"scaling", rep.scaling},
                {"sequences_used", rep.sequences_used},
                {"iterates_used", rep.iterates_used}};
      tolerances = {{"rank_tol", a.rank_tol}, {"divides_tol", 1e-7}};
    } else if (app.got_subcommand(iterate)) {
      command = "iterate";
      PolyMap<cplx> F = parse_map_json(doc);
      if (a.count < 0) throw precondition_error("--count must be nonnegative");
      auto iters = iterate_jets(F, a.degree, a.count);
      json its = json::array();
      for (const auto& it : iters) its.push_back(jcomponents(it));
      result = {{"count", a.count}, {"degree", a.degree}, {"iterates", its}};
      tolerances = json::object();
    } else if (app.got_subcommand(verify)) {
      command = "verify";
      PolyMap<cplx> F = parse_map_json(doc);
      std::string ptext = read_file(a.poly_path);
      DensePoly P = parse_poly_json(parse_json_text(ptext));
      double res = verify_annihilates(P, F, a.degree);
      result = {{"residual", res},
                {"annihilates", res < a.verify_tol},
                {"poly_sha256", sha256_hex(ptext)}};
      tolerances = {{"tol", a.verify_tol}};
    } else if (app.got_subcommand(fixpoints)) {
      command = "fixpoints";
      DensePoly f = parse_univariate_json(doc);
      RootOptions opt;
      opt.cluster_tol = a.cluster_tol;
      auto fps = fixed_points(f, opt, a.tol);
      json pts = json::array();
      for (const auto& fp : fps)
        pts.push_back({{"location", jcplx(fp.location)},
                       {"multiplier", jcplx(fp.multiplier)},
                       {"multiplicity", fp.multiplicity},
                       {"class", class_name(fp.cls)}});
      json residue;
      try {
        ResidueSum rs = residue_sum(fps);
        residue = {{"value", jcplx(rs.value)},
                   {"scale", rs.scale},
                   {"normalized", std::abs(rs.value) / std::max(1.0, rs.scale)}};
      } catch (const precondition_error& e) {
        residue = {{"error", e.what()}};
      }
      result = {{"fixed_points", pts}, {"residue_sum", residue}};
      tolerances = {{"class_tol", a.tol}, {"cluster_tol", a.cluster_tol}, {"simple_tol", 1e-8}};
    } else if (app.got_subcommand(conjugate)) {
      command = "conjugate";
      DensePoly f = parse_univariate_json(doc);
      cplx w;
      json chosen;
      if (a.to_fixed_point) {
        RootOptions opt;
        opt.cluster_tol = a.cluster_tol;
        FixedPoint fp = select_nonattracting(fixed_points(f, opt));
        w = fp.location;
        chosen = {{"multiplier", jcplx(fp.multiplier)}, {"class", class_name(fp.cls)}};
      } else if (a.shift.size() == 2) {
        w = {a.shift[0], a.shift[1]};
      } else {
        throw precondition_error("conjugate: pass --to-fixed-point or --shift re im");
      }
      DensePoly g = conjugate_to_origin(f, w);
      result = {{"w", jcplx(w)}, {"conjugated", jpoly(g)}};
      if (!chosen.is_null()) result["fixed_point"] = chosen;
      tolerances = {{"cluster_tol", a.cluster_tol}};
    } else if (app.got_subcommand(decompose)) {
      command = "decompose";
      PolyMap<cplx> F = parse_map_json(doc);
      ExpandingDecomposition dec = decompose_expanding(F, a.scale);
      int n = F.n_vars;
      ExponentVec zero(n, 0);
      double origin_norm = 0.0, lin_defect = 0.0;
      for (int i = 0; i < n; ++i) {
        origin_norm = std::max(origin_norm, std::abs(dec.G.components[i].coeff(zero)));
        for (int j = 0; j < n; ++j) {
          ExponentVec v(n, 0);
          v[j] = 1;
          cplx want = (i == j) ? cplx(dec.s, 0.0) : cplx(0.0, 0.0);
          lin_defect = std::max(lin_defect, std::abs(dec.G.components[i].coeff(v) - want));
        }
      }
      result = {{"s", dec.s},
                {"A", jaffine(dec.A)},
                {"A_inverse", jaffine(dec.A_inverse)},
                {"G", json{{"n", n}, {"components", jcomponents(dec.G)}}},
                {"origin_norm", origin_norm},
                {"linear_defect", lin_defect}};
      tolerances = json::object();
    } else if (app.got_subcommand(solve1d)) {
      command = "solve1d";
      DensePoly f = parse_univariate_json(doc);
      SolveReport rep = solve_about_c(f, a.rows, a.cols, a.radius, a.stage_tol);
      json coeffs = json::array();
      for (const auto& sc : rep.coefficients)
        coeffs.push_back(
            {{"index", sc.index}, {"log2_mag", sc.log2_mag}, {"arg", sc.arg}});
      json stages = json::array();
      for (const auto& st : rep.solution.stages)
        stages.push_back({{"target_row", st.target_row},
                          {"skipped", st.skipped},
                          {"indices", st.indices},
                          {"carry_log2", st.carry_log2},
                          {"smallness_margin", st.smallness_margin},
                          {"condition", st.condition}});
      json scan = json::array();
      for (const auto& [theta, est] : rep.constant.scan)
        scan.push_back(json::array({theta, est}));
      result = {{"gamma", jcplx(rep.gamma)},
                {"monic", jpoly(rep.monic_f)},
                {"c", jcplx(rep.c)},
                {"constant_estimate", rep.constant.estimate},
                {"constant_scan", scan},
                {"coefficients", coeffs},
                {"stages", stages},
                {"row_residuals", rep.solution.row_residuals},
                {"completed", rep.solution.completed},
                {"table_exhausted", rep.solution.table_exhausted},
                {"dominance_warning", rep.solution.dominance_warning},
                {"growth_factor", rep.diagnostics.growth_factor},
                {"err_const", rep.diagnostics.err_const},
                {"err_linear", rep.diagnostics.err_linear}};
      tolerances = {{"stage_tol", a.stage_tol}};
    }

    out << envelope(command, text, std::move(result), std::move(tolerances)).dump(2) << "\n";
    return 0;
  } catch (const precondition_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
}

PolyMap<cplx> parse_map_text(const std::string& json_text) {
  return parse_map_json(parse_json_text(json_text));
}

DensePoly parse_poly_text(const std::string& json_text) {
  return parse_poly_json(parse_json_text(json_text));
}

DensePoly parse_univariate_text(const std::string& json_text) {
  return parse_univariate_json(parse_json_text(json_text));
}

}  // namespace seriesroot::cli
