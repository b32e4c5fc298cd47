#include "sympforge/dyons.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sympforge {

namespace {

constexpr double kPi = std::numbers::pi;

TypeVector default_type(const std::optional<TypeVector>& type, Index dim) {
  if (type) {
    if (static_cast<Index>(type->size()) * 2 != dim)
      fail(ErrorCode::DimensionMismatch, "type context length must be n for 2n-dimensional v");
    return *type;
  }
  return TypeVector::principal(static_cast<std::size_t>(dim / 2));
}

void check_vectors(Index dim, const VectorXd& v, const VectorXd& v_prime) {
  if (v.size() != dim || v_prime.size() != dim)
    fail(ErrorCode::DimensionMismatch, "v and v' must have length 2n");
}

// Adaptive Simpson on [a, b] for a vector-valued integrand.
struct Simpson {
  const std::function<VectorXd(double)>& f;
  int depth_used = 0;
  static constexpr int kMaxDepth = 48;

  VectorXd step(double a, double b, const VectorXd& fa, const VectorXd& fm, const VectorXd& fb,
                const VectorXd& whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const VectorXd flm = f(lm), frm = f(rm);
    const VectorXd left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const VectorXd right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const VectorXd delta = left + right - whole;
    depth_used = std::max(depth_used, depth);
    if (depth >= kMaxDepth) fail(ErrorCode::QuadratureFailure, "adaptive Simpson did not converge");
    if (delta.cwiseAbs().maxCoeff() <= 15.0 * tol) return left + right + delta / 15.0;
    return step(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           step(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  VectorXd integrate(double a, double b, double rel_tol) {
    const VectorXd fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const VectorXd whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max(1.0, whole.cwiseAbs().maxCoeff());
    return step(a, b, fa, fm, fb, whole, rel_tol * scale, 0);
  }
};

}  // namespace

DyonSolution::DyonSolution(TamingMatrix<double> j, VectorXd v, VectorXd v_prime, TypeVector type)
    : constant_(std::move(j)), v_(std::move(v)), v_prime_(std::move(v_prime)), type_(std::move(type)) {
  check_vectors(constant_->dim(), v_, v_prime_);
  if (!v_integral())
    warnings_.push_back("NonIntegerV: v is not integral, the flux will not be quantized");
}

DyonSolution::DyonSolution(RadialTaming j, VectorXd v, VectorXd v_prime, TypeVector type)
    : radial_(std::move(j)), v_(std::move(v)), v_prime_(std::move(v_prime)), type_(std::move(type)) {
  // Validates the profile where it is sampled first: at r = 1 and asymptotically.
  const TamingMatrix<double> at_one(radial_(1.0), 1e-9);
  const TamingMatrix<double> at_inf(radial_(std::numeric_limits<double>::infinity()), 1e-9);
  check_vectors(at_one.dim(), v_, v_prime_);
  if (at_inf.dim() != at_one.dim()) fail(ErrorCode::RankMismatch, "taming profile changes dimension");
  if (!v_integral())
    warnings_.push_back("NonIntegerV: v is not integral, the flux will not be quantized");
}

bool DyonSolution::v_integral(double tol) const {
  for (Index i = 0; i < v_.size(); ++i)
    if (std::abs(v_(i) - std::round(v_(i))) > tol) return false;
  return true;
}

void DyonSolution::check(double r) const {
  if (!(r > 0)) fail(ErrorCode::NonPositiveRadius, "radius must be positive");
}

MatrixXd DyonSolution::taming_at(double r) const {
  check(r);
  return constant_ ? constant_->matrix() : radial_(r);
}

VectorXd DyonSolution::psi(double r) const {
  check(r);
  if (constant_) return constant_->matrix() * v_ / (2.0 * r) + v_prime_;
  // int_r^inf J(s) v / (2 s^2) ds = int_0^{1/r} J(1/u) v / 2 du
  const std::function<VectorXd(double)> integrand = [this](double u) -> VectorXd {
    const double s = u > 0 ? 1.0 / u : std::numeric_limits<double>::infinity();
    return 0.5 * radial_(s) * v_;
  };
  Simpson simpson{integrand};
  return v_prime_ + simpson.integrate(0.0, 1.0 / r, 1e-10);
}

VectorXd DyonSolution::dpsi_dr(double r) const {
  return -taming_at(r) * v_ / (2.0 * r * r);
}

MatrixXd DyonSolution::curvature_at(const Vector3d& x) const {
  const double r = x.norm();
  check(r);
  return x * area_coefficient().transpose() / (r * r * r);
}

DyonSolution dyon_construct(const TamingMatrix<double>& j, const VectorXd& v,
                            const VectorXd& v_prime, std::optional<TypeVector> type) {
  return DyonSolution(j, v, v_prime, default_type(type, j.dim()));
}

DyonSolution dyon_construct_radial(RadialTaming j, const VectorXd& v, const VectorXd& v_prime,
                                   std::optional<TypeVector> type) {
  const Index dim = v.size();
  return DyonSolution(std::move(j), v, v_prime, default_type(type, dim));
}

RadialProfile radial_profile(const DyonSolution& sol) {
  return RadialProfile{[&sol](double r) { return sol.psi(r); },
                       [&sol](double r) { return sol.dpsi_dr(r); },
                       [&sol](double r) { return sol.taming_at(r); }, sol.area_coefficient()};
}

RadialReport radial_check(const RadialProfile& profile, const std::vector<double>& radii) {
  const auto derivative = [&profile](double r) -> VectorXd {
    if (profile.dpsi_dr) return profile.dpsi_dr(r);
    const double h = 1e-5 * r;
    return (profile.psi(r + h) - profile.psi(r - h)) / (2.0 * h);
  };
  const auto flux_density = [&](double r) -> VectorXd {
    return r * r * profile.taming(r) * derivative(r);
  };
  RadialReport report;
  for (double r : radii) {
    if (!(r > 0)) fail(ErrorCode::NonPositiveRadius, "radius must be positive");
    report.equation = std::max(
        report.equation, (profile.area_coefficient + flux_density(r)).cwiseAbs().maxCoeff());
    const double h = 1e-4 * r;
    report.integrability =
        std::max(report.integrability,
                 ((flux_density(r + h) - flux_density(r - h)) / (2.0 * h)).cwiseAbs().maxCoeff());
  }
  return report;
}

RadialReport dyon_verify(const DyonSolution& sol, const std::vector<double>& radii) {
  return radial_check(radial_profile(sol), radii);
}

BogomolnyPair dyon_sample(const DyonSolution& sol, const Grid3& grid) {
  const Index dim = sol.dim();
  BogomolnyPair pair{MatrixXd(dim, grid.size()), MatrixXd::Zero(3 * dim, grid.size())};
  const VectorXd coeff = sol.area_coefficient();
  for (Index n = 0; n < grid.size(); ++n) {
    if (grid.chart() == Grid3::Chart::Cartesian) {
      const Vector3d x = grid.position(n);
      pair.psi.col(n) = sol.psi(x.norm());
      const MatrixXd v = sol.curvature_at(x);
      pair.v.col(n) = Eigen::Map<const VectorXd>(v.data(), v.size());
    } else {
      const Vector3d c = grid.coords(n);
      pair.psi.col(n) = sol.psi(c(0));
      // nu_{S^2} = sin(theta) dtheta ^ dphi, the first cyclic slot.
      for (Index a = 0; a < dim; ++a) pair.v(3 * a, n) = coeff(a) * std::sin(c(1));
    }
  }
  return pair;
}

TamingField dyon_taming_field(const DyonSolution& sol, const Grid3& grid) {
  if (!sol.radial()) {
    const MatrixXd j = sol.taming_at(1.0);
    return TamingField(TamingMatrix<double>(j, relative_tolerance(j)));
  }
  std::vector<TamingMatrix<double>> field;
  field.reserve(static_cast<std::size_t>(grid.size()));
  for (Index n = 0; n < grid.size(); ++n) {
    const double r = grid.chart() == Grid3::Chart::Cartesian ? grid.position(n).norm()
                                                             : grid.coords(n)(0);
    const MatrixXd j = sol.taming_at(r);
    field.emplace_back(j, std::max(1e-9, relative_tolerance(j)));
  }
  return TamingField(std::move(field));
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) fail(ErrorCode::InvalidInput, "Gauss-Legendre rule needs at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: p = P_n(x), q = P_{n-1}(x).
      double p = 1.0, q = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double prev = q;
        q = p;
        p = ((2.0 * k - 1.0) * x * q - (k - 1.0) * prev) / k;
      }
      dp = n * (x * p - q) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

FluxReport flux_quantization(const DyonSolution& sol, int n_theta, int n_phi) {
  std::vector<double> u, w;
  gauss_legendre(n_theta, u, w);
  const Index dim = sol.dim();
  VectorXd flux = VectorXd::Zero(dim);
  double area = 0;
  const double dphi = 2.0 * kPi / n_phi;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ct = u[i], st = std::sqrt(1.0 - ct * ct);
    for (int k = 0; k < n_phi; ++k) {
      const double phi = (k + 0.5) * dphi;
      const Vector3d x(st * std::cos(phi), st * std::sin(phi), ct);
      const Vector3d d_theta(ct * std::cos(phi), ct * std::sin(phi), -st);
      const Vector3d d_phi(-st * std::sin(phi), st * std::cos(phi), 0.0);
      // A cyclic-storage two-form evaluated on (a, b) is beta . (a x b);
      // dividing by sin(theta) turns d(cos theta) into dtheta.
      const Vector3d normal = d_theta.cross(d_phi) / st;
      const MatrixXd v = sol.curvature_at(x);
      flux += w[i] * dphi * (v.transpose() * normal);
      area += w[i] * dphi * x.dot(normal);
    }
  }
  if (!flux.allFinite() || !std::isfinite(area))
    fail(ErrorCode::QuadratureFailure, "flux quadrature produced non-finite values");

  FluxReport report;
  report.flux = flux;
  report.normalized = flux / (2.0 * kPi);
  report.analytic = -2.0 * kPi * sol.v();
  report.quadrature_error = (flux - report.analytic).cwiseAbs().maxCoeff();
  report.lattice_member = true;
  for (Index a = 0; a < dim; ++a)
    if (std::abs(report.normalized(a) - std::round(report.normalized(a))) > 1e-8)
      report.lattice_member = false;
  if (sol.v().cwiseAbs().maxCoeff() > 0) {
    const double minus = (flux + 2.0 * kPi * sol.v()).cwiseAbs().maxCoeff();
    const double plus = (flux - 2.0 * kPi * sol.v()).cwiseAbs().maxCoeff();
    report.realized_sign = minus <= plus ? -1 : 1;
  }
  report.chern = 0.5 * sol.v();
  report.euler_integral = area / (2.0 * kPi);
  return report;
}

EdynResult electrodynamics_dyon(double theta, double g_sq, long q_e, long q_m, long type_t,
                                double spacing, const Vector3d& centre) {
  const PeriodMatrix<double> period = electrodynamics_period_matrix(theta, g_sq);
  const TamingMatrix<double> j = theta_forward(period);
  const double r_coupling = period.real()(0, 0);
  const double i_coupling = period.imag()(0, 0);
  VectorXd v(2);
  v << double(q_e), double(q_m);
  DyonSolution sol = dyon_construct(j, v, VectorXd::Zero(2), TypeVector({Integer(type_t)}));

  constexpr Index kNodes = 7;
  const Vector3d origin = centre - Vector3d::Constant(spacing * (kNodes - 1) / 2.0);
  Grid3 grid({kNodes, kNodes, kNodes}, origin, Vector3d::Constant(spacing));
  const Index count = grid.size();

  EmStaticFields fields{CouplingField{{period.real()}}, CouplingField{{period.imag()}},
                        MatrixXd(3, count), MatrixXd(3, count), MatrixXd(1, count),
                        MatrixXd(1, count)};
  const VectorXd jv = j.matrix() * v;
  double curvature = 0;
  for (Index n = 0; n < count; ++n) {
    const Vector3d x = grid.position(n);
    const double r = x.norm();
    const VectorXd psi = sol.psi(r);
    fields.phi(0, n) = -psi(0);
    fields.upsilon(0, n) = psi(1);
    // grad Psi = -J v x / (2 r^3)
    const Vector3d grad_phi = jv(0) * x / (2.0 * r * r * r);
    const Vector3d grad_ups = -jv(1) * x / (2.0 * r * r * r);
    const Vector3d e = -grad_phi;
    const Vector3d b = -(grad_ups + r_coupling * e) / i_coupling;
    fields.e.col(n) = e;
    // Euclidean box: *_h of the one-form b^flat has the same cyclic coefficients.
    fields.b.col(n) = b;
    const MatrixXd curv = sol.curvature_at(x);
    const Vector3d lower = -r_coupling * b + i_coupling * e;
    curvature = std::max(curvature, std::max((curv.col(0) - b).cwiseAbs().maxCoeff(),
                                             (curv.col(1) - lower).cwiseAbs().maxCoeff()));
  }

  // Consequence B = -(g^2/4pi) grad(Upsilon - theta/2pi Phi), B read off V.
  const MatrixXd combo = fields.upsilon - (theta / (2.0 * kPi)) * fields.phi;
  const MatrixXd grad_combo = gradient(grid, combo);
  double consequence = 0;
  for (Index n = 0; n < count; ++n) {
    if (!grid.interior(n)) continue;
    const Vector3d b_from_v = sol.curvature_at(grid.position(n)).col(0);
    const Vector3d predicted = -(g_sq / (4.0 * kPi)) * grad_combo.col(n);
    consequence = std::max(consequence, (b_from_v - predicted).cwiseAbs().maxCoeff());
  }

  EmStaticReport potentials = em_static_residual(grid, fields);
  MaxwellReport maxwell = maxwell_static_residual(grid, fields.e, fields.b);
  return EdynResult{std::move(sol), j.matrix(), std::move(grid), std::move(fields), potentials,
                    maxwell, curvature, consequence, theta, g_sq};
}

FiberCheck h_theta_fiber_check(const Grid3& grid, const MatrixXd& e, const MatrixXd& b,
                               const MatrixXd& phi, const MatrixXd& upsilon, double theta,
                               double g_sq, double tol) {
  const Index count = grid.size();
  if (e.rows() != 3 || b.rows() != 3 || phi.rows() != 1 || upsilon.rows() != 1 ||
      e.cols() != count || b.cols() != count || phi.cols() != count || upsilon.cols() != count)
    fail(ErrorCode::SampleMismatch, "fields must be n = 1 samples on the common grid");
  const PeriodMatrix<double> period = electrodynamics_period_matrix(theta, g_sq);
  const EmStaticFields fields{CouplingField{{period.real()}}, CouplingField{{period.imag()}},
                              e, b, phi, upsilon};
  FiberCheck check;
  check.potentials = em_static_residual(grid, fields);
  check.maxwell = maxwell_static_residual(grid, e, b);
  check.ok = check.potentials.max() <= tol && check.maxwell.max() <= tol;
  return check;
}

}  // namespace sympforge
