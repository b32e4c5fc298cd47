#include "sympforge/taming.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sympforge/random.hpp"

using namespace sympforge;
using testing_util::dmat;

namespace {

constexpr double pi = std::numbers::pi;

double max_diff(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

DenseMatrix<double> scalar(double x) { return DenseMatrix<double>::Constant(1, 1, x); }

}  // namespace

TEST(ThetaForward, UpperHalfPlaneUnit) {
  const auto j = theta_forward(PeriodMatrix<double>(scalar(0), scalar(1)));
  EXPECT_LT(max_diff(j.matrix(), dmat({{0, 1}, {-1, 0}})), 1e-15);
}

TEST(ThetaForward, ElectrodynamicsMatchesDisplayedMatrix) {
  for (double theta : {-3.0, -0.5, 0.0, 1.0, 2 * pi}) {
    for (double g_sq : {0.3, 4 * pi, 20.0}) {
      const auto j = electrodynamics_taming(theta, g_sq);
      const DenseMatrix<double> expected =
          dmat({{g_sq * theta / (8 * pi * pi), g_sq / (4 * pi)},
                {-4 * pi / g_sq - g_sq * theta * theta / (16 * pi * pi * pi), -g_sq * theta / (8 * pi * pi)}});
      EXPECT_LT(max_diff(j.matrix(), expected), 1e-12 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
      const auto n = theta_inverse(j);
      EXPECT_NEAR(n.real()(0, 0), theta / (2 * pi), 1e-12);
      EXPECT_NEAR(n.imag()(0, 0), 4 * pi / g_sq, 1e-12 * 4 * pi / g_sq);
    }
  }
  EXPECT_ERROR_CODE(electrodynamics_taming(0.0, 0.0), InvalidCoupling);
  EXPECT_ERROR_CODE(electrodynamics_taming(0.0, -1.0), InvalidCoupling);
}

TEST(ThetaForward, RandomOutputsAreTamings) {
  gen::Rng rng(4);
  for (int c = 0; c < 50; ++c) {
    const auto j = theta_forward(gen::period_matrix(rng, 1 + c % 4));
    const DenseMatrix<double>& m = j.matrix();
    const auto dim = m.rows();
    const DenseMatrix<double> w = standard_symplectic(dim / 2);
    EXPECT_LT((m * m + DenseMatrix<double>::Identity(dim, dim)).cwiseAbs().maxCoeff(), relative_tolerance(m));
    EXPECT_LT(max_diff(m.transpose() * w * m, w), relative_tolerance(m));
    const DenseMatrix<double> qf = m.transpose() * w;
    Eigen::SelfAdjointEigenSolver<DenseMatrix<double>> eig(0.5 * (qf + qf.transpose()));
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0);
  }
}

TEST(ThetaInverse, Examples) {
  const auto n = theta_inverse(TamingMatrix<double>(dmat({{0, 1}, {-1, 0}})));
  EXPECT_NEAR(n.real()(0, 0), 0, 1e-15);
  EXPECT_NEAR(n.imag()(0, 0), 1, 1e-15);
}

TEST(ThetaInverse, RoundTrips) {
  gen::Rng rng(6);
  for (int c = 0; c < 100; ++c) {
    const auto period = gen::period_matrix(rng, 1 + c % 4);
    const auto back = theta_inverse(theta_forward(period));
    EXPECT_LT(max_diff(back.real(), period.real()), 1e-9);
    EXPECT_LT(max_diff(back.imag(), period.imag()), 1e-9);
    const auto j = theta_forward(period);
    EXPECT_LT(max_diff(theta_forward(theta_inverse(j)).matrix(), j.matrix()), 1e-9 * j.matrix().cwiseAbs().maxCoeff());
  }
}

TEST(PeriodMatrixTest, Errors) {
  EXPECT_ERROR_CODE(PeriodMatrix<double>(scalar(0), scalar(-1)), SingularImaginaryPart);
  EXPECT_ERROR_CODE(PeriodMatrix<double>(dmat({{0, 1}, {0, 0}}), DenseMatrix<double>::Identity(2, 2)),
                    NotAPeriodMatrix);
  EXPECT_ERROR_CODE(PeriodMatrix<double>(scalar(0), DenseMatrix<double>::Identity(2, 2)), DimensionMismatch);
}

TEST(IsTaming, Examples) {
  EXPECT_TRUE(is_taming(dmat({{0, 1}, {-1, 0}})).ok());
  const TamingReport negative = is_taming(dmat({{0, -1}, {1, 0}}));
  EXPECT_FALSE(negative.ok());
  EXPECT_TRUE(negative.squares_to_minus_one);
  EXPECT_TRUE(negative.compatible);
  EXPECT_FALSE(negative.positive);
  const TamingReport identity = is_taming(DenseMatrix<double>(DenseMatrix<double>::Identity(2, 2)));
  EXPECT_FALSE(identity.squares_to_minus_one);
  EXPECT_FALSE(identity.failures.empty());
  EXPECT_FALSE(is_taming(DenseMatrix<double>(DenseMatrix<double>::Identity(3, 3))).ok());
  EXPECT_ERROR_CODE(TamingMatrix<double>(dmat({{0, -1}, {1, 0}})), NotATaming);
}

TEST(IsTaming, CustomGram) {
  // omega_t for t = (2): the taming condition is checked against 2 omega.
  const DenseMatrix<double> w = dmat({{0, 2}, {-2, 0}});
  EXPECT_TRUE(is_taming(dmat({{0, 1}, {-1, 0}}), w).ok());
  EXPECT_FALSE(is_taming(dmat({{0, -1}, {1, 0}}), w).ok());
}

TEST(Conjugate, Examples) {
  const TamingMatrix<double> j(dmat({{0, 1}, {-1, 0}}));
  EXPECT_LT(max_diff(taming_conjugate(j, DenseMatrix<double>(DenseMatrix<double>::Identity(2, 2))).matrix(),
                     j.matrix()),
            1e-15);
  EXPECT_LT(max_diff(taming_conjugate(j, j.matrix()).matrix(), j.matrix()), 1e-15);
  EXPECT_ERROR_CODE(taming_conjugate(j, dmat({{2, 0}, {0, 1}})), NotSymplectic);
  EXPECT_ERROR_CODE(taming_conjugate(j, DenseMatrix<double>(DenseMatrix<double>::Identity(4, 4))), NotSymplectic);
}

TEST(Conjugate, GroupActionProperty) {
  gen::Rng rng(9);
  for (int c = 0; c < 40; ++c) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto j = theta_forward(gen::period_matrix(rng, n));
    const auto g1 = gen::real_symplectic(rng, n), g2 = gen::real_symplectic(rng, n);
    const auto lhs = taming_conjugate(j, DenseMatrix<double>(g1 * g2), 1e-9);
    const auto rhs = taming_conjugate(taming_conjugate(j, g2, 1e-9), g1, 1e-9);
    EXPECT_LT(max_diff(lhs.matrix(), rhs.matrix()), 1e-9 * std::max(1.0, lhs.matrix().cwiseAbs().maxCoeff()));
    EXPECT_TRUE(is_taming(lhs.matrix(), std::nullopt, relative_tolerance(lhs.matrix(), 1e-9)).ok());
  }
}

TEST(Conjugate, StabilizerIsUnitary) {
  // U(1) rotations exp(s J0) fix J0.
  const TamingMatrix<double> j(dmat({{0, 1}, {-1, 0}}));
  for (double s : {0.3, 1.1, 2.5}) {
    const DenseMatrix<double> g = dmat({{std::cos(s), std::sin(s)}, {-std::sin(s), std::cos(s)}});
    EXPECT_LT(max_diff(taming_conjugate(j, g).matrix(), j.matrix()), 1e-9);
  }
  const DenseMatrix<double> shear = dmat({{1, 1}, {0, 1}});
  EXPECT_GT(max_diff(taming_conjugate(j, shear).matrix(), j.matrix()), 1e-3);
}

TEST(LongDouble, ThetaRoundTrip) {
  DenseMatrix<long double> r(2, 2), im(2, 2);
  r << 0.3L, -0.1L, -0.1L, 0.7L;
  im << 2.0L, 0.4L, 0.4L, 1.5L;
  const PeriodMatrix<long double> period(r, im);
  const auto back = theta_inverse(theta_forward(period));
  EXPECT_LT((back.real() - r).cwiseAbs().maxCoeff(), 1e-15L);
  EXPECT_LT((back.imag() - im).cwiseAbs().maxCoeff(), 1e-15L);
  EXPECT_TRUE(is_taming(theta_forward(period).matrix(), std::nullopt, 1e-15L).ok());
}
