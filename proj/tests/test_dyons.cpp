#include "sympforge/dyons.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sympforge/random.hpp"

using namespace sympforge;
using testing_util::dmat;

namespace {

constexpr double pi = std::numbers::pi;

TamingMatrix<double> j0() { return TamingMatrix<double>::standard(1); }

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// J(r) = [[0, a^2], [-1/a^2, 0]] with a^2 = 1 + 1/r: Psi_1 = 1/(2r) + 1/(4r^2) for v = (0, 1).
MatrixXd radial_taming(double r) {
  const double a2 = 1.0 + 1.0 / r;
  return dmat({{0, a2}, {-1.0 / a2, 0}});
}

Grid3 box(double h, const Vector3d& centre = Vector3d(3.0, 0.0, 4.0)) {
  return Grid3({7, 7, 7}, centre - Vector3d::Constant(3 * h), Vector3d::Constant(h));
}

}  // namespace

TEST(DyonConstruct, UnitCharge) {
  const auto sol = dyon_construct(j0(), vec({0, 1}), vec({0, 0}));
  for (double r : {0.5, 1.0, 4.0}) {
    EXPECT_NEAR(sol.psi(r)(0), 1.0 / (2 * r), 1e-15);
    EXPECT_NEAR(sol.psi(r)(1), 0.0, 1e-15);
  }
  EXPECT_EQ(sol.area_coefficient(), vec({0, -0.5}));
  EXPECT_TRUE(sol.warnings().empty());
  EXPECT_EQ(sol.type(), TypeVector({1}));
}

TEST(DyonConstruct, VacuumAndAsymptotics) {
  const auto sol = dyon_construct(j0(), vec({0, 0}), vec({0.3, -2}));
  EXPECT_EQ(sol.psi(0.1), vec({0.3, -2}));
  EXPECT_EQ(sol.curvature_at(Vector3d(1, 2, 3)).cwiseAbs().maxCoeff(), 0);
  const auto charged = dyon_construct(j0(), vec({1, 1}), vec({0.25, 0}));
  EXPECT_NEAR((charged.psi(1e8) - vec({0.25, 0})).norm(), 0, 1e-8);
}

TEST(DyonConstruct, Errors) {
  EXPECT_ERROR_CODE(dyon_construct(j0(), vec({1}), vec({0, 0})), DimensionMismatch);
  EXPECT_ERROR_CODE(dyon_construct(j0(), vec({1, 0}), vec({0, 0}), TypeVector({1, 1})), DimensionMismatch);
  const auto sol = dyon_construct(j0(), vec({1, 0}), vec({0, 0}));
  EXPECT_ERROR_CODE(sol.psi(0.0), NonPositiveRadius);
  EXPECT_ERROR_CODE(sol.psi(-1.0), NonPositiveRadius);
  EXPECT_ERROR_CODE(dyon_verify(sol, {1.0, -2.0}), NonPositiveRadius);
}

TEST(DyonConstruct, NonIntegerChargeWarns) {
  const auto sol = dyon_construct(j0(), vec({0.5, 0}), vec({0, 0}));
  EXPECT_FALSE(sol.v_integral());
  ASSERT_EQ(sol.warnings().size(), 1u);
  EXPECT_NE(sol.warnings()[0].find("NonIntegerV"), std::string::npos);
}

TEST(DyonVerify, RadialEquationHolds) {
  gen::Rng rng(1);
  for (int c = 0; c < 30; ++c) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto j = theta_forward(gen::period_matrix(rng, n));
    VectorXd v(2 * n);
    for (Index a = 0; a < 2 * n; ++a) v(a) = gen::uniform_int(rng, -3, 3);
    const auto sol = dyon_construct(j, v, VectorXd::Random(2 * n));
    const double scale = std::max(1.0, j.matrix().cwiseAbs().maxCoeff()) * std::max(1.0, v.cwiseAbs().maxCoeff());
    EXPECT_LT(dyon_verify(sol, {0.1, 1.0, 10.0}).max(), 1e-10 * scale);
  }
}

TEST(DyonVerify, PerturbedProfileFails) {
  const auto sol = dyon_construct(j0(), vec({0, 1}), vec({0, 0}));
  RadialProfile profile = radial_profile(sol);
  const auto base = profile.psi;
  profile.psi = [base](double r) {
    VectorXd out = base(r);
    out(0) += 0.1 / (r * r);
    return out;
  };
  profile.dpsi_dr = nullptr;
  EXPECT_GT(radial_check(profile, {0.1, 1.0, 10.0}).max(), 1e-3);
}

TEST(DyonVerify, RadialTamingAnalyticOracle) {
  const auto sol = dyon_construct_radial(radial_taming, vec({0, 1}), vec({0, 0}));
  EXPECT_TRUE(sol.radial());
  for (double r : {0.2, 1.0, 3.0, 10.0}) {
    EXPECT_NEAR(sol.psi(r)(0), 1.0 / (2 * r) + 1.0 / (4 * r * r), 1e-9);
    EXPECT_NEAR(sol.psi(r)(1), 0.0, 1e-12);
  }
  EXPECT_LT(dyon_verify(sol, {0.1, 1.0, 10.0}).max(), 1e-8);
}

TEST(GaussLegendre, PolynomialExactness) {
  std::vector<double> x, w;
  for (int n : {1, 3, 8, 32}) {
    gauss_legendre(n, x, w);
    ASSERT_EQ(static_cast<int>(x.size()), n);
    for (int k = 0; k < 2 * n; ++k) {
      double sum = 0;
      for (int i = 0; i < n; ++i) sum += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], k);
      const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
      EXPECT_NEAR(sum, exact, 1e-13) << n << " " << k;
    }
  }
  EXPECT_ERROR_CODE(gauss_legendre(0, x, w), InvalidInput);
}

TEST(Flux, UnitMonopole) {
  const auto report = flux_quantization(dyon_construct(j0(), vec({0, 1}), vec({0, 0})));
  EXPECT_NEAR(report.flux(0), 0, 1e-12);
  EXPECT_NEAR(report.flux(1), -2 * pi, 1e-10);
  EXPECT_TRUE(report.lattice_member);
  EXPECT_EQ(report.realized_sign, -1);
  EXPECT_NEAR(report.euler_integral, 2.0, 1e-12);
  EXPECT_EQ(report.chern, vec({0, 0.5}));
}

TEST(Flux, VacuumAndFractional) {
  const auto vacuum = flux_quantization(dyon_construct(j0(), vec({0, 0}), vec({0, 0})));
  EXPECT_EQ(vacuum.flux.cwiseAbs().maxCoeff(), 0);
  EXPECT_EQ(vacuum.realized_sign, 0);
  EXPECT_TRUE(vacuum.lattice_member);
  const auto half = flux_quantization(dyon_construct(j0(), vec({0.5, 0}), vec({0, 0})));
  EXPECT_FALSE(half.lattice_member);
}

TEST(Flux, IntegerChargesGiveLatticePoints) {
  gen::Rng rng(2);
  for (int c = 0; c < 20; ++c) {
    const auto n = static_cast<Index>(1 + c % 2);
    VectorXd v(2 * n);
    for (Index a = 0; a < 2 * n; ++a) v(a) = gen::uniform_int(rng, -4, 4);
    const auto j = theta_forward(gen::period_matrix(rng, n));
    const auto report = flux_quantization(dyon_construct(j, v, VectorXd::Zero(2 * n)));
    EXPECT_TRUE(report.lattice_member);
    EXPECT_LT(report.quadrature_error, 1e-8 * std::max(1.0, v.cwiseAbs().maxCoeff()));
    EXPECT_LT((report.normalized + v).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(DyonGrid, SphericalResidual) {
  const auto sol = dyon_construct(j0(), vec({1, 1}), vec({0, 0}));
  const Grid3 grid({5, 5, 5}, Vector3d(5.0, 1.0, 0.5), Vector3d::Constant(1e-2), Grid3::Chart::Spherical);
  const auto report = bogomolny_residual(grid, dyon_taming_field(sol, grid), dyon_sample(sol, grid));
  EXPECT_LT(report.eq_residual, 1e-6);
  EXPECT_LT(report.closure_residual, 1e-6);
}

TEST(DyonGrid, CartesianResidualAndLift) {
  const auto sol = dyon_construct(j0(), vec({0, 1}), vec({0, 0}));
  const Grid3 grid = box(1e-2);
  const auto pair = dyon_sample(sol, grid);
  const auto j = dyon_taming_field(sol, grid);
  EXPECT_LT(bogomolny_residual(grid, j, pair).eq_residual, 1e-6);
  EXPECT_LT(lift_to_4d(pair, grid, j).residual, 1e-6);
  const Grid3 through_origin = box(0.5, Vector3d::Zero());
  EXPECT_ERROR_CODE(dyon_sample(sol, through_origin), NonPositiveRadius);
}

TEST(DyonGrid, ConvergesAtSecondOrder) {
  const auto sol = dyon_construct(theta_forward(PeriodMatrix<double>(dmat({{0.3}}), dmat({{1.5}}))),
                                  vec({1, 2}), vec({0, 0}));
  std::vector<double> eq, lift;
  for (double h : {0.04, 0.02}) {
    const Grid3 grid = box(h);
    const auto pair = dyon_sample(sol, grid);
    const auto j = dyon_taming_field(sol, grid);
    eq.push_back(bogomolny_residual(grid, j, pair).eq_residual);
    lift.push_back(lift_to_4d(pair, grid, j).residual);
  }
  EXPECT_GE(oracle::order(eq[0], eq[1]), 1.8);
  EXPECT_GE(oracle::order(lift[0], lift[1]), 1.8);
}

TEST(Electrodynamics, UnitMagneticCharge) {
  const auto res = electrodynamics_dyon(0.0, 4 * pi, 0, 1, 1);
  for (Index n = 0; n < res.grid.size(); ++n) {
    const Vector3d x = res.grid.position(n);
    const double r = x.norm();
    EXPECT_NEAR(res.fields.phi(0, n), -1.0 / (2 * r), 1e-14);
    EXPECT_LT((res.fields.e.col(n) + Vector3d(x / (2 * r * r * r))).norm(), 1e-14);
  }
  EXPECT_LT(res.potentials.max(), 1e-6);
  EXPECT_LT(res.maxwell.max(), 1e-6);
  EXPECT_LT(res.curvature_consistency, 1e-12);
  EXPECT_LT(res.consequence, 1e-6);
}

TEST(Electrodynamics, ZeroCharges) {
  const auto res = electrodynamics_dyon(1.0, 2.0, 0, 0, 1);
  EXPECT_EQ(res.fields.e.cwiseAbs().maxCoeff(), 0);
  EXPECT_EQ(res.fields.b.cwiseAbs().maxCoeff(), 0);
  EXPECT_EQ(res.fields.phi.cwiseAbs().maxCoeff(), 0);
  EXPECT_EQ(res.potentials.max(), 0);
}

TEST(Electrodynamics, WittenShiftAndPureElectric) {
  const auto shifted = electrodynamics_dyon(2 * pi, 4 * pi, 1, 0, 1);
  EXPECT_LT(shifted.potentials.max(), 1e-6);
  EXPECT_LT(shifted.maxwell.max(), 1e-6);
  EXPECT_LT(shifted.consequence, 1e-6);
  // At theta = 0 the second slot of v sources a pure Coulomb E with B = 0,
  // the first a pure monopole B with E = 0.
  const auto electric = electrodynamics_dyon(0.0, 4 * pi, 0, 3, 1);
  EXPECT_EQ(electric.fields.b.cwiseAbs().maxCoeff(), 0);
  for (Index n = 0; n < electric.grid.size(); ++n) {
    const Vector3d x = electric.grid.position(n);
    EXPECT_LT((electric.fields.e.col(n) + Vector3d(3 * x / (2 * std::pow(x.norm(), 3)))).norm(), 1e-14);
  }
  const auto magnetic = electrodynamics_dyon(0.0, 4 * pi, 3, 0, 1);
  EXPECT_EQ(magnetic.fields.e.cwiseAbs().maxCoeff(), 0);
  EXPECT_GT(magnetic.fields.b.cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Electrodynamics, RandomCouplings) {
  gen::Rng rng(3);
  for (int c = 0; c < 10; ++c) {
    const double theta = gen::uniform_real(rng, -2 * pi, 2 * pi);
    const double g_sq = gen::uniform_real(rng, 0.5, 20.0);
    const auto res = electrodynamics_dyon(theta, g_sq, gen::uniform_int(rng, -2, 2), gen::uniform_int(rng, -2, 2), 1);
    const double scale = std::max(1.0, res.taming.cwiseAbs().maxCoeff());
    EXPECT_LT(res.potentials.max(), 1e-6 * scale);
    EXPECT_LT(res.maxwell.max(), 1e-6 * scale);
    EXPECT_LT(res.consequence, 1e-6 * scale);
  }
  EXPECT_ERROR_CODE(electrodynamics_dyon(0.0, 0.0, 0, 1, 1), InvalidCoupling);
}

TEST(FiberCheckTest, AcceptsSolutionsAndRejectsPerturbations) {
  const auto res = electrodynamics_dyon(0.7, 3.0, 1, -1, 1);
  const auto& f = res.fields;
  EXPECT_TRUE(h_theta_fiber_check(res.grid, f.e, f.b, f.phi, f.upsilon, 0.7, 3.0).ok);
  const MatrixXd shifted = f.upsilon.array() + 5.0;
  EXPECT_TRUE(h_theta_fiber_check(res.grid, f.e, f.b, f.phi, shifted, 0.7, 3.0).ok);
  MatrixXd tilted = f.upsilon;
  for (Index n = 0; n < res.grid.size(); ++n) tilted(0, n) += res.grid.position(n)(0);
  EXPECT_FALSE(h_theta_fiber_check(res.grid, f.e, f.b, f.phi, tilted, 0.7, 3.0).ok);
  EXPECT_ERROR_CODE(h_theta_fiber_check(res.grid, f.e, f.b, f.phi.leftCols(3), f.upsilon, 0.7, 3.0),
                    SampleMismatch);
}
