#include "sympforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "sympforge/dyons.hpp"
#include "sympforge/error.hpp"
#include "sympforge/forms4d.hpp"
#include "sympforge/io.hpp"
#include "sympforge/monodromy.hpp"
#include "sympforge/reduction3d.hpp"
#include "sympforge/selftest.hpp"
#include "sympforge/siegel_group.hpp"
#include "sympforge/symplattice.hpp"
#include "sympforge/taming.hpp"

namespace sympforge::cli {

namespace {

using io::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

struct Outcome {
  int code = kOk;
  json body = json::object();
};

Outcome verdict(bool ok, json body) { return {ok ? kOk : kFalse, std::move(body)}; }

class Session {
 public:
  explicit Session(std::istream& in) : in_(in) {}

  // "-" is standard input, text starting with '[' or '{' is inline JSON,
  // anything else a file path.
  json load(const std::string& source) {
    std::string text;
    if (source == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), {});
    } else if (!source.empty() && (source.front() == '[' || source.front() == '{')) {
      text = source;
    } else {
      std::ifstream f(source, std::ios::binary);
      if (!f) fail(ErrorCode::InvalidInput, "cannot open input file " + source);
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    inputs_.push_back({{"source", source.size() > 64 ? "<inline>" : source},
                       {"sha256", sha256_hex(text)}});
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::InvalidInput, "malformed JSON in " + source + ": " + e.what());
    }
  }

  static std::filesystem::path base_dir(const std::string& source) {
    if (source == "-" || source.empty() || source.front() == '[' || source.front() == '{') return {};
    return std::filesystem::path(source).parent_path();
  }

  // Precedence: --tol, then SYMPFORGE_TOL, then the command default.
  double tolerance(const std::string& name, double fallback) {
    double value = fallback;
    if (flag_tol) {
      value = *flag_tol;
    } else if (const char* env = std::getenv("SYMPFORGE_TOL"); env && *env) {
      const auto parsed = io::parse_real_list(env);
      if (parsed.size() != 1 || !(parsed[0] > 0))
        fail(ErrorCode::InvalidInput, "SYMPFORGE_TOL must be one positive number");
      value = parsed[0];
    }
    if (!(value > 0)) fail(ErrorCode::InvalidInput, "tolerance must be positive");
    tolerances_[name] = value;
    return value;
  }

  json manifest(const std::vector<std::string>& args) const {
    std::vector<std::string> argv{"sympforge"};
    argv.insert(argv.end(), args.begin(), args.end());
    return json{{"argv", argv},
                {"inputs", inputs_},
                {"tolerances", tolerances_},
                {"seed", seed ? json(*seed) : json(nullptr)},
                {"version", SYMPFORGE_VERSION}};
  }

  std::optional<double> flag_tol;
  std::optional<std::uint64_t> seed;

 private:
  std::istream& in_;
  json inputs_ = json::array();
  json tolerances_ = json::object();
};

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    fail(ErrorCode::InvalidInput, std::string("input is missing \"") + key + "\"");
  return doc.at(key);
}

// Accepts a bare value or an object wrapping it under `key`.
const json& unwrap(const json& doc, const char* key) {
  return doc.is_object() && doc.contains(key) ? doc.at(key) : doc;
}

TypeVector type_arg(const std::string& text) {
  if (!text.empty() && text.front() == '[') return io::type_from_json(json::parse(text));
  return io::parse_type_list(text);
}

VectorXd vector_arg(const std::string& text) {
  const auto values = io::parse_real_list(text);
  return Eigen::Map<const VectorXd>(values.data(), static_cast<Index>(values.size()));
}

double scale_of(const DenseMatrix<double>& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

// lattice

Outcome lattice_normal_form(Session& s, const std::string& in) {
  const GramMatrix gram(io::int_matrix_from_json(unwrap(s.load(in), "gram")));
  const NormalFormResult nf = symplectic_normal_form(gram);
  return {kOk, {{"U", io::to_json(nf.basis_change)}, {"type", io::to_json(nf.type)}}};
}

Outcome lattice_type(Session& s, const std::string& in) {
  const GramMatrix gram(io::int_matrix_from_json(unwrap(s.load(in), "gram")));
  return {kOk, {{"type", io::to_json(space_type(gram))}}};
}

// group, aff

Outcome group_check(Session& s, const std::string& matrix, const std::string& type) {
  const TypeVector t = type_arg(type);
  const IntMatrix m = io::int_matrix_from_json(unwrap(s.load(matrix), "matrix"));
  const bool member = is_member(m, t);
  return verdict(member, {{"member", member}, {"type", io::to_json(t)}});
}

Outcome group_min_type(Session& s, const std::string& matrix) {
  const RatMatrix m = io::rat_matrix_from_json(unwrap(s.load(matrix), "matrix"));
  const auto t = element_min_type(m);
  return verdict(t.has_value(), {{"min_type", t ? io::to_json(*t) : json(nullptr)}});
}

Outcome aff_compose_cmd(Session& s, const std::string& in) {
  const json doc = s.load(in);
  const TypeVector t = io::type_from_json(field(doc, "type"));
  const AffElement g1 = io::aff_from_json(field(doc, "g1"), t);
  const AffElement g2 = io::aff_from_json(field(doc, "g2"), t);
  const AffElement g = aff_compose(g1, g2);
  return {kOk, {{"result", io::to_json(g)}, {"adjoint", io::to_json(aff_adjoint(g))}}};
}

// taming

Outcome taming_convert(Session& s, const std::string& in) {
  const json doc = s.load(in);
  const double tol = s.tolerance("taming", 1e-10);
  if (doc.is_object() && doc.contains("R")) {
    const TamingMatrix<double> j = theta_forward(io::period_from_json(doc));
    return {kOk, {{"J", io::to_json(j.matrix())}}};
  }
  const DenseMatrix<double> m = io::real_matrix_from_json(unwrap(doc, "J"));
  const TamingMatrix<double> j(m, relative_tolerance(m, tol));
  return {kOk, io::to_json(theta_inverse(j))};
}

Outcome taming_check(Session& s, const std::string& in) {
  const json doc = s.load(in);
  const double tol = s.tolerance("taming", 1e-10);
  const DenseMatrix<double> j = io::real_matrix_from_json(unwrap(doc, "J"));
  std::optional<DenseMatrix<double>> gram;
  if (doc.is_object() && doc.contains("gram")) gram = io::real_matrix_from_json(doc.at("gram"));
  const TamingReport report = is_taming(j, gram, relative_tolerance(j, tol));
  return verdict(report.ok(), io::to_json(report));
}

// selfdual, reduce

PeriodMatrix<double> period_of(const json& doc, double tol) {
  if (doc.contains("period")) return io::period_from_json(doc.at("period"));
  const DenseMatrix<double> m = io::real_matrix_from_json(field(doc, "J"));
  return theta_inverse(TamingMatrix<double>(m, relative_tolerance(m, tol)));
}

Outcome selfdual_check(Session& s, const std::string& in) {
  const json doc = s.load(in);
  const double tol = s.tolerance("selfdual", 1e-9);
  const auto p = io::point_from_json(field(doc, "point"));
  const auto period = period_of(doc, 1e-10);
  const auto v = io::two_form_from_json(field(doc, "form"));
  const double scale = scale_of(theta_forward(period).matrix());
  const auto c = check_polarized_selfdual(p, period, v, tol * scale);
  json body{{"selfdual", c.selfdual},
            {"residual", c.residual},
            {"global_residual", c.global_residual}};
  if (c.selfdual) {
    body["lower_residual"] = c.lower_residual;
    body["field_strength"] = io::to_json(*c.field_strength);
  }
  return verdict(c.selfdual, std::move(body));
}

json vectors_to_json(const std::vector<Vector3d>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back({v(0), v(1), v(2)});
  return out;
}

Outcome reduce_astdec(Session& s, const std::string& in) {
  const json doc = s.load(in);
  const double tol = s.tolerance("astdec", 1e-10);
  const auto p = io::point_from_json(field(doc, "point"));
  const auto w = io::two_form_from_json(field(doc, "form"));
  const StaticDecomposition parts = decompose_form(p, w);
  const double residual = star_decompose_check(p, w);
  const double reassembly = (reassemble(parts) - w).max_abs();
  const AstdecSigns signs = calibrate_astdec_signs();
  return verdict(residual <= tol && reassembly <= tol,
                 {{"residual", residual},
                  {"reassembly_residual", reassembly},
                  {"signs", {{"top", signs.top_sign}, {"perp", signs.perp_sign}}},
                  {"top", vectors_to_json(parts.top)},
                  {"perp", vectors_to_json(parts.perp)}});
}

// bogomolny, dyon

TamingMatrix<double> taming_arg(Session& s, const std::string& text, Index n) {
  if (text == "std") return TamingMatrix<double>::standard(n);
  const DenseMatrix<double> m = io::real_matrix_from_json(unwrap(s.load(text), "J"));
  return TamingMatrix<double>(m, relative_tolerance(m));
}

Outcome bogomolny_residual_cmd(Session& s, const std::string& in, const std::string& j_arg,
                               bool per_node) {
  const json doc = s.load(in);
  const double tol = s.tolerance("bogomolny", 1e-6);
  const io::GridDocument grid = io::grid_from_json(doc, Session::base_dir(in));
  const BogomolnyPair pair{grid.field("psi"), grid.field("v")};
  const Index n = pair.psi.rows() / 2;
  std::optional<TamingMatrix<double>> j;
  if (doc.contains("J")) {
    const DenseMatrix<double> m = io::real_matrix_from_json(doc.at("J"));
    j.emplace(m, relative_tolerance(m));
  } else {
    j.emplace(taming_arg(s, j_arg, n));
  }
  const TamingField jf(*j);
  const BogomolnyReport report = bogomolny_residual(grid.grid, jf, pair);
  const LiftReport lift = lift_to_4d(pair, grid.grid, jf);
  json body = io::to_json(report, per_node);
  body["lift_residual"] = lift.residual;
  return verdict(report.eq_residual <= tol && report.closure_residual <= tol, std::move(body));
}

struct DyonArgs {
  std::string in;
  std::string type;
  std::string v;
  std::string vprime;
  std::string j = "std";
  double spacing = 1e-2;
};

DyonSolution dyon_from_args(Session& s, const DyonArgs& a) {
  json doc = json::object();
  if (!a.in.empty()) doc = s.load(a.in);
  if (!doc.is_object()) fail(ErrorCode::InvalidInput, "dyon input must be a JSON object");
  VectorXd v, vp;
  if (!a.v.empty()) v = vector_arg(a.v);
  else v = io::real_vector_from_json(field(doc, "v"));
  if (v.size() == 0 || v.size() % 2 != 0)
    fail(ErrorCode::InvalidInput, "v must have an even, positive number of entries");
  if (!a.vprime.empty()) vp = vector_arg(a.vprime);
  else if (doc.contains("vprime")) vp = io::real_vector_from_json(doc.at("vprime"));
  else vp = VectorXd::Zero(v.size());
  std::optional<TypeVector> t;
  if (!a.type.empty()) t = type_arg(a.type);
  else if (doc.contains("type")) t = io::type_from_json(doc.at("type"));
  const Index n = v.size() / 2;
  std::optional<TamingMatrix<double>> j;
  if (a.j == "std" && doc.contains("J")) {
    const json& jd = doc.at("J");
    if (jd.is_string() && jd.get<std::string>() == "std") {
      j.emplace(TamingMatrix<double>::standard(n));
    } else {
      const DenseMatrix<double> m = io::real_matrix_from_json(jd);
      j.emplace(m, relative_tolerance(m));
    }
  } else {
    j.emplace(taming_arg(s, a.j, n));
  }
  return dyon_construct(*j, v, vp, t);
}

Grid3 dyon_box(double spacing) {
  if (!(spacing > 0)) fail(ErrorCode::InvalidInput, "spacing must be positive");
  const Vector3d centre(3.0, 0.0, 4.0);
  return Grid3({7, 7, 7}, centre - Vector3d::Constant(3 * spacing), Vector3d::Constant(spacing));
}

json solution_to_json(const DyonSolution& sol) {
  return json{{"v", io::to_json(VectorXd(sol.v()))},
              {"vprime", io::to_json(VectorXd(sol.v_prime()))},
              {"J", io::to_json(DenseMatrix<double>(sol.taming_at(1.0)))},
              {"type", io::to_json(sol.type())},
              {"area_coefficient", io::to_json(VectorXd(sol.area_coefficient()))},
              {"psi_at_unit_radius", io::to_json(VectorXd(sol.psi(1.0)))},
              {"warnings", sol.warnings()}};
}

Outcome dyon_build(Session& s, const DyonArgs& a) {
  const DyonSolution sol = dyon_from_args(s, a);
  const double radial_tol = s.tolerance("radial", 1e-10);
  const double grid_tol = s.tolerance("grid", 1e-6);
  const double scale = std::max(1.0, sol.v().cwiseAbs().maxCoeff()) * scale_of(sol.taming_at(1.0));
  const RadialReport radial = dyon_verify(sol, {0.5, 1.0, 2.0, 5.0, 10.0});
  const Grid3 grid = dyon_box(a.spacing);
  const BogomolnyPair pair = dyon_sample(sol, grid);
  const TamingField jf = dyon_taming_field(sol, grid);
  const BogomolnyReport bogo = bogomolny_residual(grid, jf, pair);
  const LiftReport lift = lift_to_4d(pair, grid, jf);
  const FluxReport flux = flux_quantization(sol);
  json grid_json = io::to_json(bogo);
  grid_json["spacing"] = a.spacing;
  grid_json["lift_residual"] = lift.residual;
  const bool ok = radial.equation <= radial_tol * scale && bogo.eq_residual <= grid_tol &&
                  bogo.closure_residual <= grid_tol;
  return verdict(ok, {{"solution", solution_to_json(sol)},
                      {"radial", io::to_json(radial)},
                      {"grid", std::move(grid_json)},
                      {"flux", io::to_json(flux)}});
}

Outcome dyon_flux(Session& s, const DyonArgs& a) {
  const DyonSolution sol = dyon_from_args(s, a);
  const double tol = s.tolerance("flux", 1e-8);
  const FluxReport flux = flux_quantization(sol);
  json body = io::to_json(flux);
  body["warnings"] = sol.warnings();
  const double scale = std::max(1.0, sol.v().cwiseAbs().maxCoeff());
  return verdict(flux.lattice_member && flux.quadrature_error <= tol * scale, std::move(body));
}

// edyn

struct EdynArgs {
  double theta = 0;
  double g_sq = 4 * std::numbers::pi;
  long q_e = 0;
  long q_m = 1;
  long type = 1;
  double spacing = 1e-2;
};

Outcome edyn_build(Session& s, const EdynArgs& a) {
  const double tol = s.tolerance("maxwell", 1e-6);
  if (!(a.spacing > 0)) fail(ErrorCode::InvalidInput, "spacing must be positive");
  const EdynResult r = electrodynamics_dyon(a.theta, a.g_sq, a.q_e, a.q_m, a.type, a.spacing);
  const VectorXd jv = r.taming * r.solution.v();
  double coulomb = 0;
  for (Index node = 0; node < r.grid.size(); ++node) {
    const double rad = r.grid.position(node).norm();
    coulomb = std::max(coulomb, std::abs(r.fields.phi(0, node) + jv(0) / (2 * rad)));
  }
  const FiberCheck fiber = h_theta_fiber_check(r.grid, r.fields.e, r.fields.b, r.fields.phi,
                                               r.fields.upsilon, a.theta, a.g_sq, tol);
  const auto period = theta_inverse(TamingMatrix<double>(r.taming, relative_tolerance(r.taming)));
  const bool ok = r.potentials.max() <= tol && r.maxwell.max() <= tol &&
                  r.curvature_consistency <= tol && r.consequence <= tol && fiber.ok;
  return verdict(ok, {{"theta", a.theta},
                      {"g_sq", a.g_sq},
                      {"charges", {a.q_e, a.q_m}},
                      {"R", period.real()(0, 0)},
                      {"I", period.imag()(0, 0)},
                      {"J", io::to_json(r.taming)},
                      {"coulomb_residual", coulomb},
                      {"potentials", io::to_json(r.potentials)},
                      {"maxwell", io::to_json(r.maxwell)},
                      {"curvature_consistency", r.curvature_consistency},
                      {"consequence", r.consequence},
                      {"fiber_check", fiber.ok},
                      {"warnings", r.solution.warnings()}});
}

// monodromy

Outcome monodromy_validate(Session& s, const std::string& in) {
  const json doc = s.load(in);
  const Presentation pres = io::presentation_from_json(field(doc, "presentation"));
  const Representation rep = io::representation_from_json(field(doc, "representation"));
  const bool valid = validate_representation(pres, rep);
  return verdict(valid, {{"valid", valid}, {"holonomy_trivial", is_holonomy_trivial(rep)}});
}

Outcome monodromy_dirac(Session& s, const std::string& in) {
  const json doc = s.load(in);
  std::vector<RatMatrix> images;
  const json& list = field(doc, "images");
  if (!list.is_array()) fail(ErrorCode::InvalidInput, "\"images\" must be an array of matrices");
  for (const auto& m : list) images.push_back(io::rat_matrix_from_json(m));
  const DiracReport r = verify_dirac_system(images, io::rat_matrix_from_json(field(doc, "basis")));
  json body{{"dirac_system", r.ok}, {"type", r.type ? io::to_json(*r.type) : json(nullptr)}};
  if (!r.reason.empty()) body["reason"] = r.reason;
  return verdict(r.ok, std::move(body));
}

Outcome monodromy_conjugacy(Session& s, const std::string& in, int bound, std::uint64_t budget) {
  const json doc = s.load(in);
  const Representation a = io::representation_from_json(field(doc, "rep1"));
  const Representation b = io::representation_from_json(field(doc, "rep2"));
  const ConjugacyResult r = conjugacy_test_bounded(a, b, bound, budget);
  json body{{"found", r.conjugator.has_value()},
            {"conjugator", r.conjugator ? io::to_json(*r.conjugator) : json(nullptr)},
            {"candidates", r.candidates},
            {"bound", bound}};
  if (!r.conjugator) body["certificate"] = r.certificate;
  return verdict(r.conjugator.has_value(), std::move(body));
}

// selftest

Outcome selftest_cmd(Session& s, const std::string& scope, std::uint64_t seed,
                     std::vector<std::string> faults) {
  s.seed = seed;
  if (const char* env = std::getenv("SYMPFORGE_INJECT_FAULT"); env && *env) {
    std::stringstream ss(env);
    for (std::string f; std::getline(ss, f, ',');)
      if (!f.empty()) faults.push_back(f);
  }
  const selftest::Report report = selftest::run(scope, seed, faults);
  json results = json::array();
  for (const auto& r : report.results) {
    json entry{{"module", r.module},
               {"invariant", r.invariant},
               {"passed", r.passed},
               {"cases", r.cases},
               {"seconds", r.seconds}};
    if (!r.detail.empty()) entry["detail"] = r.detail;
    results.push_back(std::move(entry));
  }
  return verdict(report.passed(), {{"scope", scope},
                                   {"results", std::move(results)},
                                   {"failed", report.failed()},
                                   {"injected_faults", faults},
                                   {"total_seconds", report.total_seconds}});
}

json error_body(const std::string& code, const std::string& message) {
  return {{"status", "invalid-input"}, {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  Session session(in);
  std::function<Outcome()> action;

  CLI::App app{"Integral symplectic lattices, polarized self-duality and dyons", "sympforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SYMPFORGE_VERSION);

  std::string in_path, matrix, type, j_arg = "std";
  bool per_node = false;
  const auto add_in = [&](CLI::App* cmd) {
    cmd->add_option("--in", in_path, "input JSON file, or - for stdin")->required();
  };
  const auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", session.flag_tol, "tolerance override");
  };
  const auto on = [&](CLI::App* cmd, std::function<Outcome()> f) {
    cmd->callback([&action, f = std::move(f)] { action = f; });
  };

  auto* lattice = app.add_subcommand("lattice", "integral symplectic lattices");
  lattice->require_subcommand(1);
  auto* nf = lattice->add_subcommand("normal-form", "symplectic normal form of a Gram matrix");
  add_in(nf);
  on(nf, [&] { return lattice_normal_form(session, in_path); });
  auto* lt = lattice->add_subcommand("type", "elementary divisor type of a Gram matrix");
  add_in(lt);
  on(lt, [&] { return lattice_type(session, in_path); });

  auto* group = app.add_subcommand("group", "modified Siegel modular group");
  group->require_subcommand(1);
  auto* gc = group->add_subcommand("check", "membership in Sp_t(2n, Z)");
  gc->add_option("--matrix", matrix, "integer matrix (file or inline JSON)")->required();
  gc->add_option("--type", type, "type, e.g. 1,2")->required();
  on(gc, [&] { return group_check(session, matrix, type); });
  auto* gm = group->add_subcommand("min-type", "minimal type of a rational symplectic matrix");
  gm->add_option("--matrix", matrix, "rational matrix (file or inline JSON)")->required();
  on(gm, [&] { return group_min_type(session, matrix); });

  auto* aff = app.add_subcommand("aff", "affine symplectic group");
  aff->require_subcommand(1);
  auto* ac = aff->add_subcommand("compose", "compose {\"type\", \"g1\", \"g2\"}");
  add_in(ac);
  on(ac, [&] { return aff_compose_cmd(session, in_path); });

  auto* taming = app.add_subcommand("taming", "tamings and period matrices");
  taming->require_subcommand(1);
  auto* tc = taming->add_subcommand("convert", "period matrix <-> taming");
  add_in(tc);
  add_tol(tc);
  on(tc, [&] { return taming_convert(session, in_path); });
  auto* tk = taming->add_subcommand("check", "taming conditions");
  add_in(tk);
  add_tol(tk);
  on(tk, [&] { return taming_check(session, in_path); });

  auto* selfdual = app.add_subcommand("selfdual", "polarized self-duality");
  selfdual->require_subcommand(1);
  auto* sc = selfdual->add_subcommand("check", "check {\"point\", \"period\" | \"J\", \"form\"}");
  add_in(sc);
  add_tol(sc);
  on(sc, [&] { return selfdual_check(session, in_path); });

  auto* reduce = app.add_subcommand("reduce", "timelike reduction");
  reduce->require_subcommand(1);
  auto* ra = reduce->add_subcommand("astdec-check", "static decomposition of a two-form");
  add_in(ra);
  add_tol(ra);
  on(ra, [&] { return reduce_astdec(session, in_path); });

  auto* bogo = app.add_subcommand("bogomolny", "polarized Bogomolny equations");
  bogo->require_subcommand(1);
  auto* br = bogo->add_subcommand("residual", "residuals of sampled (Psi, V) on a grid");
  add_in(br);
  add_tol(br);
  br->add_option("--J", j_arg, "std or a taming matrix file");
  br->add_flag("--per-node", per_node, "include per-node residuals");
  on(br, [&] { return bogomolny_residual_cmd(session, in_path, j_arg, per_node); });

  DyonArgs dyon_args;
  auto* dyon = app.add_subcommand("dyon", "spherically symmetric dyons");
  dyon->require_subcommand(1);
  for (const char* name : {"build", "flux"}) {
    auto* cmd = dyon->add_subcommand(name, name == std::string("build")
                                               ? "construct and verify a dyon"
                                               : "flux quantization of a dyon");
    cmd->add_option("--in", dyon_args.in, "{\"v\", \"vprime\", \"J\", \"type\"}");
    cmd->add_option("--type", dyon_args.type, "type, e.g. 1");
    cmd->add_option("--v", dyon_args.v, "charge vector, e.g. 0,1");
    cmd->add_option("--vprime", dyon_args.vprime, "asymptotic Higgs value");
    cmd->add_option("--J", dyon_args.j, "std or a taming matrix file");
    cmd->add_option("--spacing", dyon_args.spacing, "grid spacing");
    add_tol(cmd);
    if (name == std::string("build")) on(cmd, [&] { return dyon_build(session, dyon_args); });
    else on(cmd, [&] { return dyon_flux(session, dyon_args); });
  }

  EdynArgs edyn_args;
  auto* edyn = app.add_subcommand("edyn", "abelian electrodynamics");
  edyn->require_subcommand(1);
  auto* eb = edyn->add_subcommand("build", "dyon of charge (q_e, q_m) with theta-angle coupling");
  eb->add_option("--theta", edyn_args.theta, "theta angle");
  eb->add_option("--gsq", edyn_args.g_sq, "coupling g^2");
  eb->add_option("--qe", edyn_args.q_e, "electric charge");
  eb->add_option("--qm", edyn_args.q_m, "magnetic charge");
  eb->add_option("--type", edyn_args.type, "type t");
  eb->add_option("--spacing", edyn_args.spacing, "grid spacing");
  add_tol(eb);
  on(eb, [&] { return edyn_build(session, edyn_args); });

  int bound = 2;
  std::uint64_t budget = 10'000'000;
  auto* mono = app.add_subcommand("monodromy", "monodromy representations");
  mono->require_subcommand(1);
  auto* mv = mono->add_subcommand("validate", "{\"presentation\", \"representation\"}");
  add_in(mv);
  on(mv, [&] { return monodromy_validate(session, in_path); });
  auto* md = mono->add_subcommand("dirac-verify", "{\"images\", \"basis\"}");
  add_in(md);
  on(md, [&] { return monodromy_dirac(session, in_path); });
  auto* mc = mono->add_subcommand("conjugacy", "bounded conjugator search {\"rep1\", \"rep2\"}");
  add_in(mc);
  mc->add_option("--bound", bound, "entry bound")->check(CLI::NonNegativeNumber);
  mc->add_option("--budget", budget, "candidate budget");
  on(mc, [&] { return monodromy_conjugacy(session, in_path, bound, budget); });

  std::string scope;
  std::uint64_t seed = 0;
  std::vector<std::string> faults;
  auto* st = app.add_subcommand("selftest", "seeded invariant suites");
  st->add_option("scope", scope, "all or a module name")->required();
  st->add_option("--seed", seed, "random seed");
  st->add_option("--inject-fault", faults, "deliberate mutation to detect");
  on(st, [&] { return selftest_cmd(session, scope, seed, faults); });

  json report;
  int code = kInvalid;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    const Outcome outcome = action();
    code = outcome.code;
    report = outcome.body;
    report["status"] = code == kOk ? "ok" : "verified-false";
  } catch (const CLI::Success& e) {
    // --help and --version print text rather than a report.
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    report = error_body("UsageError", e.what());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    report = error_body(std::string(to_string(e.code())), e.what());
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    report = error_body("InvalidInput", e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    report = error_body("InvalidInput", e.what());
  }
  report["manifest"] = session.manifest(args);
  out << report.dump(2) << '\n';
  return code;
}

}  // namespace sympforge::cli
