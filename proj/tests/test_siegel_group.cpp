#include "sympforge/siegel_group.hpp"

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sympforge/random.hpp"

using namespace sympforge;
using testing_util::imat;
using testing_util::q;
using testing_util::rmat;

namespace {

RatVector rvec(std::initializer_list<Rational> v) {
  RatVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (const auto& x : v) out(i++) = x;
  return out;
}

// Membership straight from the definition, without the library's helpers.
bool member_oracle(const IntMatrix& s, const TypeVector& t) {
  const auto n = static_cast<Index>(t.size());
  IntMatrix omega = IntMatrix::Zero(2 * n, 2 * n);
  for (Index i = 0; i < n; ++i) {
    omega(i, n + i) = t[static_cast<std::size_t>(i)];
    omega(n + i, i) = -t[static_cast<std::size_t>(i)];
  }
  return IntMatrix(s.transpose() * omega * s) == omega;
}

}  // namespace

TEST(Membership, Examples) {
  EXPECT_TRUE(is_member(int_identity(4), {1, 3}));
  EXPECT_TRUE(is_member(imat({{1, 1}, {0, 1}}), {2}));
  EXPECT_FALSE(is_member(imat({{2, 0}, {0, 1}}), {2}));
  EXPECT_ERROR_CODE(is_member(int_identity(2), {1, 1}), DimensionMismatch);
  EXPECT_ERROR_CODE(SiegelElement(imat({{2, 0}, {0, 1}}), {2}), NotAMember);
}

TEST(Membership, LowerTriangularNeedsDivisibility) {
  // [[I, 0], [B, I]] needs D_t B symmetric.
  IntMatrix s = int_identity(4);
  s(3, 0) = 1;  // B = [[0, 0], [1, 0]]: D B = [[0, 0], [2, 0]] is not symmetric
  EXPECT_FALSE(is_member(s, {1, 2}));
  s(2, 1) = 2;
  EXPECT_TRUE(is_member(s, {1, 2}));
  EXPECT_EQ(is_member(s, {1, 2}), member_oracle(s, {1, 2}));
}

TEST(Membership, GeneratorsAgreeWithOracle) {
  gen::Rng rng(3);
  for (int c = 0; c < 50; ++c) {
    const TypeVector t = gen::type_vector(rng, 1 + static_cast<std::size_t>(c % 3));
    const IntMatrix s = gen::siegel_member(rng, t);
    EXPECT_TRUE(member_oracle(s, t));
    EXPECT_EQ(oracle::laplace_det(s), 1);
  }
}

TEST(Membership, ClosureUnderWords) {
  gen::Rng rng(8);
  for (int c = 0; c < 60; ++c) {
    const TypeVector t = gen::type_vector(rng, 1 + static_cast<std::size_t>(c % 3));
    SiegelElement word = SiegelElement::identity(t);
    for (int k = 0; k < 4; ++k) {
      const SiegelElement g(gen::siegel_member(rng, t), t);
      word = (k % 2 == 0) ? word * g : word * g.inverse();
    }
    EXPECT_TRUE(member_oracle(word.matrix(), t));
    EXPECT_TRUE(member_oracle(word.inverse().matrix(), t));
    EXPECT_EQ(IntMatrix(word.matrix() * word.inverse().matrix()), int_identity(word.dim()));
  }
}

TEST(Membership, InclusionThroughTransport) {
  gen::Rng rng(21);
  int transported = 0;
  for (int c = 0; c < 60; ++c) {
    const std::size_t n = 1 + static_cast<std::size_t>(c % 2);
    const TypeVector t = gen::type_vector(rng, n, 3);
    const TypeVector t2 = type_meet_join(t, gen::type_vector(rng, n, 3)).join;
    const RatMatrix real = from_lattice_picture(gen::siegel_member(rng, t), t);
    const RatMatrix moved = to_lattice_picture(real, t2);
    if (!is_integral(moved)) continue;
    ++transported;
    EXPECT_TRUE(is_member(to_integer(moved), t2));
  }
  EXPECT_GT(transported, 10);
}

TEST(Membership, PrincipalGroupEmbedsByIntegrality) {
  // Integer symplectic matrices preserve Z^{2n} and therefore every
  // Gamma_t Z^{2n} they map integrally.
  const IntMatrix s = imat({{1, 1}, {0, 1}});
  const RatMatrix real = to_rational(s);
  for (int k = 1; k <= 6; ++k) {
    const RatMatrix moved = to_lattice_picture(real, {k});
    ASSERT_TRUE(is_integral(moved));
    EXPECT_TRUE(is_member(to_integer(moved), {k}));
  }
}

TEST(MinType, Examples) {
  EXPECT_EQ(element_min_type(to_rational(imat({{2, 1}, {1, 1}}))), TypeVector({1}));
  EXPECT_EQ(element_min_type(rmat({{q(1), q(1, 2)}, {q(0), q(1)}})), TypeVector({2}));
  EXPECT_EQ(element_min_type(rmat({{q(1), q(1, 3)}, {q(0), q(1)}})), TypeVector({3}));
  EXPECT_ERROR_CODE(element_min_type(rmat({{q(2), q(0)}, {q(0), q(1)}})), NotSymplectic);
}

TEST(MinType, MinimalAmongWorkingTypes) {
  // [[1, 1/2], [0, 1]] works at t = (2), (4), (6), ...; (1) fails.
  const RatMatrix t = rmat({{q(1), q(1, 2)}, {q(0), q(1)}});
  EXPECT_FALSE(is_integral(to_lattice_picture(t, {1})));
  for (int k : {2, 4, 6}) EXPECT_TRUE(is_member(to_integer(to_lattice_picture(t, {k})), {k}));
}

TEST(MinType, BlockDiagonal) {
  RatMatrix t = RatMatrix::Identity(4, 4);
  t(1, 3) = q(1, 2);
  const auto m = element_min_type(t);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, TypeVector({1, 2}));
}

TEST(Aff, ComposeExamples) {
  const TypeVector t{1};
  const SiegelElement id = SiegelElement::identity(t);
  const AffElement a(rvec({q(3, 4), q(1, 2)}), id), b(rvec({q(1, 2), q(2, 3)}), id);
  EXPECT_EQ(aff_compose(a, b).translation(), rvec({q(1, 4), q(1, 6)}));

  const SiegelElement gamma(imat({{1, 1}, {0, 1}}), t);
  const AffElement g1(rvec({q(1, 2), q(0)}), gamma), g2(rvec({q(1, 4), q(1, 4)}), id);
  const AffElement g = aff_compose(g1, g2);
  EXPECT_EQ(g.translation(), rvec({q(0), q(1, 4)}));
  EXPECT_EQ(g.rotation(), gamma);
}

TEST(Aff, TranslationsReducedIntoUnitInterval) {
  const TypeVector t{1};
  const AffElement a(rvec({q(-1, 3), q(7, 2)}), SiegelElement::identity(t));
  EXPECT_EQ(a.translation(), rvec({q(2, 3), q(1, 2)}));
  EXPECT_EQ(reduce_mod_one(rvec({q(5), q(-5, 4)})), rvec({q(0), q(3, 4)}));
}

TEST(Aff, InverseExamples) {
  const TypeVector t{1};
  EXPECT_EQ(aff_inverse(AffElement::identity(t)), AffElement::identity(t));
  const AffElement a(rvec({q(1, 3), q(1, 5)}), SiegelElement::identity(t));
  EXPECT_EQ(aff_inverse(a).translation(), rvec({q(2, 3), q(4, 5)}));
  const AffElement g(rvec({q(1, 2), q(0)}), SiegelElement(imat({{1, 1}, {0, 1}}), t));
  EXPECT_EQ(aff_compose(g, aff_inverse(g)), AffElement::identity(t));
  EXPECT_EQ(aff_compose(aff_inverse(g), g), AffElement::identity(t));
}

TEST(Aff, Errors) {
  const AffElement a = AffElement::identity({1});
  const AffElement b = AffElement::identity({2});
  EXPECT_ERROR_CODE(aff_compose(a, b), TypeContextMismatch);
  EXPECT_ERROR_CODE(AffElement(rvec({q(0)}), SiegelElement::identity({1})), DimensionMismatch);
}

TEST(Aff, AdjointExamplesAndKernel) {
  const TypeVector t{1, 2};
  gen::Rng rng(13);
  const AffElement pure(gen::rational_vector(rng, 4), SiegelElement::identity(t));
  EXPECT_EQ(aff_adjoint(pure), int_identity(4));
  const SiegelElement gamma(gen::siegel_member(rng, t), t);
  EXPECT_EQ(aff_adjoint(AffElement(RatVector::Zero(4), gamma)), gamma.matrix());
  for (int c = 0; c < 40; ++c) {
    const AffElement g(gen::rational_vector(rng, 4), SiegelElement(gen::siegel_member(rng, t), t));
    EXPECT_EQ(aff_adjoint(g) == int_identity(4), g.rotation() == SiegelElement::identity(t));
  }
}

TEST(Aff, GroupAxiomsProperty) {
  gen::Rng rng(31);
  for (int c = 0; c < 60; ++c) {
    const TypeVector t = gen::type_vector(rng, 1 + static_cast<std::size_t>(c % 2));
    const Index d = 2 * static_cast<Index>(t.size());
    const auto draw = [&] {
      return AffElement(gen::rational_vector(rng, d), SiegelElement(gen::siegel_member(rng, t), t));
    };
    const AffElement a = draw(), b = draw(), e = draw();
    EXPECT_EQ(aff_compose(aff_compose(a, b), e), aff_compose(a, aff_compose(b, e)));
    EXPECT_EQ(aff_adjoint(aff_compose(a, b)), IntMatrix(aff_adjoint(a) * aff_adjoint(b)));
  }
}

TEST(Isogeny, Examples) {
  EXPECT_EQ(isogeny_kernel({1, 2}, {2, 4}), (std::vector<Integer>{2, 2}));
  EXPECT_EQ(isogeny_kernel({3, 6}, {3, 6}), (std::vector<Integer>{1, 1}));
  EXPECT_EQ(isogeny_kernel({1}, {6}), (std::vector<Integer>{6}));
  EXPECT_ERROR_CODE(isogeny_kernel({2}, {3}), NotComparable);
}

TEST(LatticePicture, RoundTrip) {
  gen::Rng rng(2);
  for (int c = 0; c < 20; ++c) {
    const TypeVector t = gen::type_vector(rng, 2);
    const IntMatrix s = gen::siegel_member(rng, t);
    const RatMatrix real = from_lattice_picture(s, t);
    EXPECT_TRUE(is_symplectic(real));
    EXPECT_EQ(to_integer(to_lattice_picture(real, t)), s);
  }
}
