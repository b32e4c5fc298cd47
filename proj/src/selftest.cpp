#include "sympforge/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "sympforge/dyons.hpp"
#include "sympforge/error.hpp"
#include "sympforge/forms4d.hpp"
#include "sympforge/monodromy.hpp"
#include "sympforge/random.hpp"
#include "sympforge/reduction3d.hpp"
#include "sympforge/siegel_group.hpp"
#include "sympforge/symplattice.hpp"
#include "sympforge/taming.hpp"

namespace sympforge::selftest {

namespace {

struct Context {
  gen::Rng rng;
  std::set<std::string> faults;
  bool fault(const std::string& name) const { return faults.count(name) > 0; }
};

struct Outcome {
  bool ok = true;
  std::size_t cases = 0;
  std::string detail;

  // Records the first failure only.
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what + " (case " + std::to_string(cases) + ")";
    }
  }
};

using Check = std::function<Outcome(Context&)>;

struct Invariant {
  std::string module;
  std::string name;
  Check check;
};

// symplattice

Outcome normal_form_soundness(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 100; ++c, ++out.cases) {
    const Index n = 1 + c % 4;
    const GramMatrix gram(gen::antisymmetric_nondegenerate(ctx.rng, n, 20));
    NormalFormResult nf = symplectic_normal_form(gram);
    if (ctx.fault("normal-form-basis")) nf.basis_change.col(0) *= -1;
    out.require(pull_back(gram.matrix(), nf.basis_change) == standard_gram(nf.type).matrix(),
                "U^T Omega U != Omega_t");
    out.require(abs(determinant(nf.basis_change)) == 1, "|det U| != 1");
  }
  return out;
}

Outcome type_invariance(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 30; ++c) {
    const Index n = 1 + c % 3;
    const GramMatrix gram(gen::antisymmetric_nondegenerate(ctx.rng, n, 20));
    const TypeVector t = space_type(gram);
    for (int k = 0; k < 5; ++k, ++out.cases) {
      const IntMatrix u = gen::unimodular(ctx.rng, 2 * n);
      out.require(space_type(GramMatrix(pull_back(gram.matrix(), u))) == t,
                  "type changed under unimodular change of basis");
    }
  }
  return out;
}

Outcome lattice_laws(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 300; ++c, ++out.cases) {
    const std::size_t n = 1 + static_cast<std::size_t>(c % 5);
    const TypeVector a = gen::type_vector(ctx.rng, n, 4), b = gen::type_vector(ctx.rng, n, 4);
    const MeetJoin ab = type_meet_join(a, b), ba = type_meet_join(b, a);
    out.require(ab.meet == ba.meet && ab.join == ba.join, "meet/join not commutative");
    const MeetJoin aa = type_meet_join(a, a);
    out.require(aa.meet == a && aa.join == a, "meet/join not idempotent");
    out.require(type_meet_join(a, ab.join).meet == a && type_meet_join(a, ab.meet).join == a,
                "absorption fails");
    out.require(type_leq(a, b) == (ab.meet == a), "order disagrees with meet");
  }
  return out;
}

// siegel_group

Outcome group_closure(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 50; ++c, ++out.cases) {
    const TypeVector t = gen::type_vector(ctx.rng, 1 + static_cast<std::size_t>(c % 3));
    const SiegelElement a(gen::siegel_member(ctx.rng, t), t);
    const SiegelElement b(gen::siegel_member(ctx.rng, t), t);
    const SiegelElement ab = a * b;
    out.require(is_member(ab.matrix(), t), "product left the group");
    out.require(ab * ab.inverse() == SiegelElement::identity(t), "inverse fails");
  }
  return out;
}

Outcome min_type_bound(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 20; ++c, ++out.cases) {
    const TypeVector t = gen::type_vector(ctx.rng, 1 + static_cast<std::size_t>(c % 2), 3);
    const RatMatrix real = from_lattice_picture(gen::siegel_member(ctx.rng, t), t);
    const auto m = element_min_type(real);
    out.require(m.has_value() && type_leq(*m, t), "minimal type is not below a valid type");
    if (m) out.require(is_integral(to_lattice_picture(real, *m)), "minimal type does not contain T");
  }
  return out;
}

Outcome aff_axioms(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 100; ++c, ++out.cases) {
    const TypeVector t = gen::type_vector(ctx.rng, 1 + static_cast<std::size_t>(c % 2));
    const Index d = 2 * static_cast<Index>(t.size());
    const auto element = [&] {
      return AffElement(gen::rational_vector(ctx.rng, d), SiegelElement(gen::siegel_member(ctx.rng, t), t));
    };
    const AffElement a = element(), b = element(), e = element();
    out.require(aff_compose(aff_compose(a, b), e) == aff_compose(a, aff_compose(b, e)),
                "associativity fails");
    out.require(aff_compose(a, aff_inverse(a)) == AffElement::identity(t), "inverse fails");
    out.require(aff_compose(AffElement::identity(t), a) == a, "identity fails");
    out.require(aff_adjoint(aff_compose(a, b)) == IntMatrix(aff_adjoint(a) * aff_adjoint(b)),
                "adjoint is not a homomorphism");
  }
  return out;
}

// taming

DenseMatrix<double> maybe_mutate(const Context& ctx, DenseMatrix<double> j) {
  if (ctx.fault("taming-sign")) {
    const Index n = j.rows() / 2;
    j.bottomLeftCorner(n, n) *= -1.0;
  }
  return j;
}

Outcome theta_is_taming(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 100; ++c, ++out.cases) {
    const auto n = static_cast<Index>(1 + c % 4);
    const auto period = gen::period_matrix(ctx.rng, n);
    const DenseMatrix<double> j = maybe_mutate(ctx, theta_forward(period).matrix());
    out.require(is_taming(j, std::nullopt, relative_tolerance(j)).ok(), "Theta(N) is not a taming");
  }
  return out;
}

Outcome theta_roundtrip(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 100; ++c, ++out.cases) {
    const auto n = static_cast<Index>(1 + c % 4);
    const auto period = gen::period_matrix(ctx.rng, n);
    const auto back = theta_inverse(theta_forward(period));
    const double err = std::max((back.real() - period.real()).cwiseAbs().maxCoeff(),
                                (back.imag() - period.imag()).cwiseAbs().maxCoeff());
    out.require(err < 1e-9, "Theta^{-1}(Theta(N)) != N, error " + std::to_string(err));
  }
  return out;
}

Outcome conjugation_covariance(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 50; ++c, ++out.cases) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto j = theta_forward(gen::period_matrix(ctx.rng, n));
    const auto g = gen::real_symplectic(ctx.rng, n);
    const auto conj = taming_conjugate(j, g, 1e-9);
    const auto period = theta_inverse(conj);
    const double err = (theta_forward(period).matrix() - conj.matrix()).cwiseAbs().maxCoeff();
    out.require(err < 1e-8 * std::max(1.0, conj.matrix().cwiseAbs().maxCoeff()),
                "conjugated taming does not come from a period matrix");
  }
  return out;
}

// forms4d

VectorTwoForm<double> star(const Context& ctx, const LorentzPoint<double>& p,
                           const VectorTwoForm<double>& f) {
  VectorTwoForm<double> s = hodge_star2(p, f);
  if (ctx.fault("hodge-volume")) s = p.volume_factor() * s;
  return s;
}

Outcome hodge_square(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 200; ++c, ++out.cases) {
    const auto p = gen::lorentz_point(ctx.rng);
    const auto f = gen::two_form(ctx.rng, 1);
    out.require((star(ctx, p, star(ctx, p, f)) + f).max_abs() < 1e-10, "** != -1 on two-forms");
  }
  return out;
}

Outcome polarized_square(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 200; ++c, ++out.cases) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto p = gen::lorentz_point(ctx.rng);
    const auto j = theta_forward(gen::period_matrix(ctx.rng, n));
    const auto v = gen::two_form(ctx.rng, 2 * n);
    const double scale = std::max(1.0, j.matrix().cwiseAbs().maxCoeff());
    out.require((polarized_star(p, j, polarized_star(p, j, v)) - v).max_abs() < 1e-9 * scale * scale,
                "polarized star does not square to +1");
  }
  return out;
}

Outcome twisted_selfdual(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 200; ++c, ++out.cases) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto p = gen::lorentz_point(ctx.rng);
    const auto period = gen::period_matrix(ctx.rng, n);
    const auto f = gen::two_form(ctx.rng, n);
    const auto v = VectorTwoForm<double>::concat(f, g_map(p, period, f));
    const auto fwd = check_polarized_selfdual(p, period, v);
    out.require(fwd.selfdual, "(F, G(N, F)) is not polarized self-dual");
    // Converse: project a random form and read F back off.
    const auto j = theta_forward(period);
    const auto plus = selfdual_project(p, j, gen::two_form(ctx.rng, 2 * n)).plus;
    const auto conv = check_polarized_selfdual(p, period, plus);
    out.require(conv.selfdual && conv.lower_residual < 1e-9,
                "self-dual form is not of the form (F, G(N, F))");
  }
  return out;
}

Outcome duality_equivariance(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 100; ++c, ++out.cases) {
    const auto n = static_cast<Index>(1 + c % 2);
    const auto p = gen::lorentz_point(ctx.rng);
    const auto period = gen::period_matrix(ctx.rng, n);
    const auto j = theta_forward(period);
    const auto v = selfdual_project(p, j, gen::two_form(ctx.rng, 2 * n)).plus;
    const auto gamma = gen::real_symplectic(ctx.rng, n);
    const auto moved = duality_act(gamma, v, 1e-9);
    const auto j2 = taming_conjugate(j, gamma, 1e-9);
    const double r = (hodge_star2(p, moved) + moved.mixed(j2.matrix())).max_abs();
    out.require(r < 1e-9 * std::max(1.0, j2.matrix().cwiseAbs().maxCoeff()),
                "duality action does not preserve self-duality");
  }
  return out;
}

// reduction3d

Outcome reassembly(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 200; ++c, ++out.cases) {
    const auto p = gen::static_lorentz_point(ctx.rng);
    const auto w = gen::two_form(ctx.rng, 2);
    out.require((reassemble(decompose_form(p, w)) - w).max_abs() == 0, "reassembly is not exact");
  }
  return out;
}

Outcome astdec(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 200; ++c, ++out.cases) {
    const auto p = gen::static_lorentz_point(ctx.rng);
    out.require(star_decompose_check(p, gen::two_form(ctx.rng, 1)) < 1e-10,
                "star decomposition residual above 1e-10");
  }
  return out;
}

double order(double coarse, double fine) { return std::log2(coarse / fine); }

Outcome fd_convergence(Context& ctx) {
  Outcome out;
  const auto j = theta_forward(gen::period_matrix(ctx.rng, 1));
  VectorXd v(2);
  v << gen::uniform_int(ctx.rng, -3, 3), gen::uniform_int(ctx.rng, 1, 3);
  const DyonSolution sol = dyon_construct(j, v, VectorXd::Zero(2));
  std::vector<double> eq, lift;
  for (double h : {0.04, 0.02}) {
    const Grid3 grid({5, 5, 5}, Vector3d(6.0, 1.0, 0.3), Vector3d::Constant(h), Grid3::Chart::Spherical);
    const auto pair = dyon_sample(sol, grid);
    const auto field = dyon_taming_field(sol, grid);
    eq.push_back(bogomolny_residual(grid, field, pair).eq_residual);
    lift.push_back(lift_to_4d(pair, grid, field).residual);
    ++out.cases;
  }
  out.require(order(eq[0], eq[1]) >= 1.8, "Bogomolny residual is not second order");
  out.require(order(lift[0], lift[1]) >= 1.8, "4d lift residual is not second order");
  return out;
}

// dyons

Outcome radial_equation(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 50; ++c, ++out.cases) {
    const auto n = static_cast<Index>(1 + c % 2);
    const auto j = theta_forward(gen::period_matrix(ctx.rng, n));
    VectorXd v(2 * n), vp(2 * n);
    for (Index i = 0; i < 2 * n; ++i) {
      v(i) = gen::uniform_int(ctx.rng, -4, 4);
      vp(i) = gen::uniform_real(ctx.rng, -1, 1);
    }
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff() * j.matrix().cwiseAbs().maxCoeff());
    out.require(dyon_verify(dyon_construct(j, v, vp), {0.1, 1.0, 10.0}).equation < 1e-10 * scale,
                "radial Bogomolny equation fails");
  }
  return out;
}

Outcome flux_membership(Context& ctx) {
  Outcome out;
  const auto j = TamingMatrix<double>::standard(1);
  for (int c = 0; c < 50; ++c, ++out.cases) {
    VectorXd v(2);
    v << gen::uniform_int(ctx.rng, -5, 5), gen::uniform_int(ctx.rng, -5, 5);
    if (c % 2 == 1) v(c % 4 == 1 ? 0 : 1) += 0.5;
    const FluxReport r = flux_quantization(dyon_construct(j, v, VectorXd::Zero(2)));
    out.require(r.quadrature_error < 1e-8 * std::max(1.0, v.cwiseAbs().maxCoeff()),
                "flux quadrature differs from -2 pi v");
    const bool integral = (v.array() - v.array().round()).abs().maxCoeff() < 1e-12;
    out.require(r.lattice_member == integral, "lattice membership disagrees with integrality of v");
  }
  return out;
}

Outcome coulomb(Context&) {
  Outcome out;
  const EdynResult e = electrodynamics_dyon(0.0, 4 * std::numbers::pi, 1, 0, 1);
  ++out.cases;
  out.require(e.fields.e.cwiseAbs().maxCoeff() == 0, "electric field of a (1, 0) dyon at theta = 0");
  out.require(e.potentials.max() < 1e-6 && e.maxwell.max() < 1e-6, "Maxwell residuals above 1e-6");
  return out;
}

// monodromy

Outcome conjugation_invariance(Context& ctx) {
  Outcome out;
  const Presentation z2{2, {{1, 2, -1, -2}}};
  for (int c = 0; c < 30; ++c, ++out.cases) {
    const TypeVector t = gen::type_vector(ctx.rng, 1 + static_cast<std::size_t>(c % 2));
    const IntMatrix a = gen::siegel_member(ctx.rng, t);
    Representation rep{{a, c % 3 == 0 ? gen::siegel_member(ctx.rng, t) : IntMatrix(a * a)}, t};
    const Representation moved = conjugate(rep, gen::siegel_member(ctx.rng, t));
    out.require(validate_representation(z2, rep) == validate_representation(z2, moved),
                "validity changed under conjugation");
  }
  return out;
}

Outcome dirac_type_invariance(Context& ctx) {
  Outcome out;
  for (int c = 0; c < 20; ++c, ++out.cases) {
    const TypeVector t = gen::type_vector(ctx.rng, 1 + static_cast<std::size_t>(c % 2), 3);
    const Index d = 2 * static_cast<Index>(t.size());
    const RatMatrix basis = to_rational(IntMatrix(lattice_basis(t) * gen::unimodular(ctx.rng, d)));
    const std::vector<RatMatrix> images{from_lattice_picture(gen::siegel_member(ctx.rng, t), t)};
    const DiracReport r = verify_dirac_system(images, basis);
    out.require(r.ok && r.type && *r.type == t, "Dirac witness type differs from the lattice type");
  }
  return out;
}

Outcome conjugacy_soundness(Context& ctx) {
  Outcome out;
  const TypeVector t{1};
  for (int c = 0; c < 5; ++c, ++out.cases) {
    const Representation rep{{gen::siegel_member(ctx.rng, t), gen::siegel_member(ctx.rng, t)}, t};
    IntMatrix g = gen::siegel_member(ctx.rng, t, 2, 1);
    while (g.cwiseAbs().maxCoeff() > 2) g = gen::siegel_member(ctx.rng, t, 2, 1);
    const Representation target = conjugate(rep, g);
    const ConjugacyResult r = conjugacy_test_bounded(rep, target, 2);
    out.require(r.conjugator.has_value(), "planted conjugator not recovered");
    if (r.conjugator)
      out.require(conjugate(rep, *r.conjugator).images == target.images,
                  "returned conjugator fails the conjugation equations");
  }
  return out;
}

const std::vector<Invariant>& registry() {
  static const std::vector<Invariant> all{
      {"symplattice", "normal-form-soundness", normal_form_soundness},
      {"symplattice", "type-invariance", type_invariance},
      {"symplattice", "lattice-laws", lattice_laws},
      {"siegel_group", "closure", group_closure},
      {"siegel_group", "min-type-bound", min_type_bound},
      {"siegel_group", "aff-axioms", aff_axioms},
      {"taming", "theta-is-taming", theta_is_taming},
      {"taming", "theta-roundtrip", theta_roundtrip},
      {"taming", "conjugation-covariance", conjugation_covariance},
      {"forms4d", "hodge-square", hodge_square},
      {"forms4d", "polarized-square", polarized_square},
      {"forms4d", "twisted-selfdual", twisted_selfdual},
      {"forms4d", "duality-equivariance", duality_equivariance},
      {"reduction3d", "reassembly", reassembly},
      {"reduction3d", "astdec", astdec},
      {"reduction3d", "fd-convergence", fd_convergence},
      {"dyons", "radial-equation", radial_equation},
      {"dyons", "flux-membership", flux_membership},
      {"dyons", "coulomb", coulomb},
      {"monodromy", "conjugation-invariance", conjugation_invariance},
      {"monodromy", "dirac-type-invariance", dirac_type_invariance},
      {"monodromy", "conjugacy-soundness", conjugacy_soundness},
  };
  return all;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::vector<std::string> Report::failed() const {
  std::vector<std::string> out;
  for (const auto& r : results)
    if (!r.passed) out.push_back(r.module + "/" + r.invariant);
  return out;
}

const std::vector<std::string>& modules() {
  static const std::vector<std::string> names{"symplattice", "siegel_group", "taming", "forms4d",
                                              "reduction3d", "dyons",        "monodromy"};
  return names;
}

const std::vector<std::string>& known_faults() {
  static const std::vector<std::string> names{"taming-sign", "normal-form-basis", "hodge-volume"};
  return names;
}

Report run(const std::string& scope, std::uint64_t seed, const std::vector<std::string>& faults) {
  if (scope != "all" && std::find(modules().begin(), modules().end(), scope) == modules().end())
    fail(ErrorCode::InvalidInput, "unknown selftest scope \"" + scope + "\"");
  for (const auto& f : faults)
    if (std::find(known_faults().begin(), known_faults().end(), f) == known_faults().end())
      fail(ErrorCode::InvalidInput, "unknown fault \"" + f + "\"");

  Report report;
  report.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  std::size_t index = 0;
  for (const auto& inv : registry()) {
    ++index;
    if (scope != "all" && inv.module != scope) continue;
    // Each invariant gets its own stream so selecting a scope does not shift the others.
    Context ctx{gen::Rng(seed * 0x9E3779B97F4A7C15ULL + index), {faults.begin(), faults.end()}};
    InvariantResult result{inv.module, inv.name, false, 0, 0, ""};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = inv.check(ctx);
      result.passed = o.ok;
      result.cases = o.cases;
      result.detail = o.detail;
    } catch (const std::exception& e) {
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.results.push_back(std::move(result));
  }
  report.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sympforge::selftest
