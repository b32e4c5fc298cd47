#include "sympforge/forms4d.hpp"

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sympforge/random.hpp"

using namespace sympforge;
using testing_util::dmat;

namespace {

using Form = VectorTwoForm<double>;

const TamingMatrix<double>& j0() {
  static const TamingMatrix<double> j(dmat({{0, 1}, {-1, 0}}));
  return j;
}

PeriodMatrix<double> unit_period() {
  return PeriodMatrix<double>(DenseMatrix<double>::Zero(1, 1), DenseMatrix<double>::Identity(1, 1));
}

}  // namespace

TEST(LorentzPointTest, SignatureChecks) {
  EXPECT_NO_THROW(LorentzPoint<double>::minkowski());
  EXPECT_ERROR_CODE(LorentzPoint<double>(Matrix4<double>::Identity()), WrongSignature);
  Matrix4<double> two_time = Matrix4<double>::Identity();
  two_time(0, 0) = two_time(1, 1) = -1;
  EXPECT_ERROR_CODE(LorentzPoint<double>(two_time), WrongSignature);
  Matrix4<double> eta = Matrix4<double>::Identity();
  eta(0, 0) = -1;
  EXPECT_ERROR_CODE(LorentzPoint<double>(eta, 2), InvalidInput);
  eta(0, 1) = 0.5;
  EXPECT_ERROR_CODE(LorentzPoint<double>(eta), WrongSignature);
}

TEST(VectorTwoFormTest, RejectsNonAntisymmetric) {
  Matrix4<double> f = Matrix4<double>::Zero();
  f(0, 1) = 1;
  EXPECT_ERROR_CODE(Form({f}), NotAntisymmetric);
}

TEST(HodgeStar, MinkowskiBasis) {
  const auto p = LorentzPoint<double>::minkowski();
  // *(dt ^ dx) = -dy ^ dz from the eps formula with F^{01} = -1.
  const Form star = hodge_star2(p, Form::basis(1, 0, 0, 1));
  EXPECT_LT((star - Form::basis(1, 0, 2, 3, -1.0)).max_abs(), 1e-15);
  // *(dy ^ dz) = dt ^ dx.
  EXPECT_LT((hodge_star2(p, Form::basis(1, 0, 2, 3)) - Form::basis(1, 0, 0, 1)).max_abs(), 1e-15);
  EXPECT_EQ(hodge_star2(p, Form::zero(1)).max_abs(), 0);
}

TEST(HodgeStar, AgreesWithEpsilonSumOracle) {
  gen::Rng rng(1);
  for (int c = 0; c < 100; ++c) {
    const auto p = gen::lorentz_point(rng);
    const Form f = gen::two_form(rng, 1);
    const Matrix4<double> expected = oracle::hodge_star(p.metric(), p.orientation(), f[0]);
    EXPECT_LT((hodge_star2(p, f[0]) - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(HodgeStar, SquaresToMinusOne) {
  gen::Rng rng(2);
  for (int c = 0; c < 200; ++c) {
    const auto p = gen::lorentz_point(rng);
    const Form f = gen::two_form(rng, 3);
    EXPECT_LT((hodge_star2(p, hodge_star2(p, f)) + f).max_abs(), 1e-10);
  }
}

TEST(HodgeStar, OrientationFlipsSign) {
  gen::Rng rng(3);
  const auto p = gen::lorentz_point(rng, false);
  const LorentzPoint<double> flipped(p.metric(), -p.orientation());
  const Form f = gen::two_form(rng, 1);
  EXPECT_LT((hodge_star2(p, f) + hodge_star2(flipped, f)).max_abs(), 1e-14);
}

TEST(PolarizedStar, BlockAction) {
  const auto p = LorentzPoint<double>::minkowski();
  gen::Rng rng(4);
  const Form f = gen::two_form(rng, 1);
  const Form v = Form::concat(f, Form::zero(1));
  const Form expected = Form::concat(Form::zero(1), -1.0 * hodge_star2(p, f));
  EXPECT_LT((polarized_star(p, j0(), v) - expected).max_abs(), 1e-15);
  EXPECT_EQ(polarized_star(p, j0(), Form::zero(2)).max_abs(), 0);
  EXPECT_ERROR_CODE(polarized_star(p, j0(), Form::zero(3)), RankMismatch);
}

TEST(PolarizedStar, SquaresToOne) {
  gen::Rng rng(5);
  for (int c = 0; c < 100; ++c) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto p = gen::lorentz_point(rng);
    const auto j = theta_forward(gen::period_matrix(rng, n));
    const Form v = gen::two_form(rng, 2 * n);
    const double scale = std::max(1.0, j.matrix().cwiseAbs().maxCoeff());
    EXPECT_LT((polarized_star(p, j, polarized_star(p, j, v)) - v).max_abs(), 1e-9 * scale * scale);
  }
}

TEST(SelfDualProject, SplitsAndEigenvalues) {
  gen::Rng rng(6);
  for (int c = 0; c < 50; ++c) {
    const auto p = gen::lorentz_point(rng);
    const auto j = theta_forward(gen::period_matrix(rng, 2));
    const Form v = gen::two_form(rng, 4);
    const auto split = selfdual_project(p, j, v);
    const double scale = std::max(1.0, j.matrix().cwiseAbs().maxCoeff());
    EXPECT_LT((split.plus + split.minus - v).max_abs(), 1e-12);
    EXPECT_LT((polarized_star(p, j, split.plus) - split.plus).max_abs(), 1e-10 * scale * scale);
    EXPECT_LT((polarized_star(p, j, split.minus) + split.minus).max_abs(), 1e-10 * scale * scale);
    const auto again = selfdual_project(p, j, split.plus);
    EXPECT_LT(again.minus.max_abs(), 1e-10 * scale * scale);
  }
}

TEST(GMap, UnitPeriodIsMinusStar) {
  const auto p = LorentzPoint<double>::minkowski();
  gen::Rng rng(7);
  const Form f = gen::two_form(rng, 1);
  EXPECT_LT((g_map(p, unit_period(), f) + hodge_star2(p, f)).max_abs(), 1e-15);
  EXPECT_EQ(g_map(p, unit_period(), Form::zero(1)).max_abs(), 0);
  EXPECT_ERROR_CODE(g_map(p, unit_period(), Form::zero(2)), DimensionMismatch);
}

TEST(TwistedSelfDual, ForwardDirection) {
  gen::Rng rng(8);
  for (int c = 0; c < 100; ++c) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto p = gen::lorentz_point(rng);
    const auto period = gen::period_matrix(rng, n);
    const Form f = gen::two_form(rng, n);
    const auto check = check_polarized_selfdual(p, period, Form::concat(f, g_map(p, period, f)));
    EXPECT_TRUE(check.selfdual) << check.residual;
    ASSERT_TRUE(check.field_strength.has_value());
    EXPECT_LT((*check.field_strength - f).max_abs(), 1e-15);
    EXPECT_LT(check.lower_residual, 1e-9);
    EXPECT_LT(check.global_residual, 1e-9 * std::max(1.0, theta_forward(period).matrix().cwiseAbs().maxCoeff()));
  }
}

TEST(TwistedSelfDual, ConverseDirection) {
  gen::Rng rng(9);
  for (int c = 0; c < 100; ++c) {
    const auto n = static_cast<Index>(1 + c % 3);
    const auto p = gen::lorentz_point(rng);
    const auto period = gen::period_matrix(rng, n);
    const Form v = selfdual_project(p, theta_forward(period), gen::two_form(rng, 2 * n)).plus;
    const auto check = check_polarized_selfdual(p, period, v);
    ASSERT_TRUE(check.selfdual);
    EXPECT_LT((v.tail(n) - g_map(p, period, v.head(n))).max_abs(), 1e-9);
  }
}

TEST(TwistedSelfDual, Rejections) {
  const auto p = LorentzPoint<double>::minkowski();
  gen::Rng rng(10);
  const Form f = gen::two_form(rng, 1);
  const auto check = check_polarized_selfdual(p, unit_period(), Form::concat(f, Form::zero(1)));
  EXPECT_FALSE(check.selfdual);
  EXPECT_FALSE(check.field_strength.has_value());
  const auto zero = check_polarized_selfdual(p, unit_period(), Form::zero(2));
  EXPECT_TRUE(zero.selfdual);
  EXPECT_EQ(zero.field_strength->max_abs(), 0);
  EXPECT_ERROR_CODE(check_polarized_selfdual(p, unit_period(), Form::zero(1)), RankMismatch);
}

TEST(TwistedSelfDual, LocalAndGlobalConditionsAgree) {
  gen::Rng rng(11);
  for (int c = 0; c < 100; ++c) {
    const auto p = gen::lorentz_point(rng);
    const auto period = gen::period_matrix(rng, 1);
    const auto j = theta_forward(period);
    Form v = gen::two_form(rng, 2);
    if (c % 2 == 0) v = selfdual_project(p, j, v).plus;
    const auto check = check_polarized_selfdual(p, period, v);
    EXPECT_EQ(check.selfdual, check.global_residual < 1e-9 * std::max(1.0, j.matrix().cwiseAbs().maxCoeff()));
  }
}

TEST(DualityAct, Examples) {
  const auto p = LorentzPoint<double>::minkowski();
  gen::Rng rng(12);
  const Form v = selfdual_project(p, j0(), gen::two_form(rng, 2)).plus;
  const DenseMatrix<double> id = DenseMatrix<double>::Identity(2, 2);
  EXPECT_LT((duality_act(id, v) - v).max_abs(), 1e-15);
  const Form moved = duality_act(j0().matrix(), v);
  EXPECT_LT((hodge_star2(p, moved) + moved.mixed(j0().matrix())).max_abs(), 1e-12);
  EXPECT_ERROR_CODE(duality_act(dmat({{2, 0}, {0, 1}}), v), NotSymplectic);
}

TEST(DualityAct, IntertwinesSolutionSpaces) {
  gen::Rng rng(13);
  for (int c = 0; c < 100; ++c) {
    const auto n = static_cast<Index>(1 + c % 2);
    const auto p = gen::lorentz_point(rng);
    const auto j = theta_forward(gen::period_matrix(rng, n));
    const Form v = selfdual_project(p, j, gen::two_form(rng, 2 * n)).plus;
    const auto gamma = gen::real_symplectic(rng, n);
    const auto j2 = taming_conjugate(j, gamma, 1e-9);
    const Form moved = duality_act(gamma, v, 1e-9);
    const double scale = std::max(1.0, j2.matrix().cwiseAbs().maxCoeff());
    EXPECT_LT((polarized_star(p, j2, moved) - moved).max_abs(), 1e-9 * scale * scale);
  }
}

TEST(LongDouble, HodgeSquare) {
  Matrix4<long double> g = Matrix4<long double>::Identity();
  g(0, 0) = -2.0L;
  g(1, 2) = g(2, 1) = 0.3L;
  const LorentzPoint<long double> p(g);
  Matrix4<long double> f = Matrix4<long double>::Zero();
  f(0, 1) = 1.5L;
  f(2, 3) = -0.25L;
  f(1, 3) = 0.75L;
  f = (f - f.transpose()).eval();
  const VectorTwoForm<long double> v({f});
  EXPECT_LT((hodge_star2(p, hodge_star2(p, v)) + v).max_abs(), 1e-17L);
  EXPECT_LT((hodge_star2(p, f) - oracle::hodge_star(g, 1, f)).cwiseAbs().maxCoeff(), 1e-17L);
}
