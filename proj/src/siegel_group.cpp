#include "sympforge/siegel_group.hpp"

#include <algorithm>
#include <functional>

#include "sympforge/error.hpp"

namespace sympforge {

namespace {

void require_shape(const IntMatrix& s, const TypeVector& t) {
  const auto dim = static_cast<Index>(2 * t.size());
  if (s.rows() != dim || s.cols() != dim)
    fail(ErrorCode::DimensionMismatch, "matrix must be 2n x 2n for a type of length n");
}

RatMatrix standard_symplectic_rational(Index n) {
  RatMatrix omega = RatMatrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = RatMatrix::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -RatMatrix::Identity(n, n);
  return omega;
}

}  // namespace

bool is_member(const IntMatrix& s, const TypeVector& t) {
  require_shape(s, t);
  const IntMatrix omega = standard_gram(t).matrix();
  return pull_back(omega, s) == omega;
}

SiegelElement::SiegelElement(IntMatrix matrix, TypeVector type)
    : matrix_(std::move(matrix)), type_(std::move(type)) {
  if (!is_member(matrix_, type_))
    fail(ErrorCode::NotAMember, "matrix does not preserve Omega_t");
}

SiegelElement SiegelElement::identity(const TypeVector& type) {
  return SiegelElement(int_identity(static_cast<Index>(2 * type.size())), type);
}

IntMatrix siegel_inverse(const IntMatrix& s, const TypeVector& t) {
  require_shape(s, t);
  const RatMatrix omega = to_rational(standard_gram(t).matrix());
  const RatMatrix omega_inv = *inverse(omega);
  return to_integer(omega_inv * to_rational(s).transpose() * omega);
}

SiegelElement SiegelElement::inverse() const {
  return SiegelElement(siegel_inverse(matrix_, type_), type_);
}

SiegelElement operator*(const SiegelElement& a, const SiegelElement& b) {
  if (!(a.type_ == b.type_))
    fail(ErrorCode::TypeContextMismatch, "group elements belong to different types");
  return SiegelElement(a.matrix_ * b.matrix_, a.type_);
}

bool is_symplectic(const RatMatrix& t) {
  if (t.rows() != t.cols() || t.rows() % 2 != 0) return false;
  const RatMatrix omega = standard_symplectic_rational(t.rows() / 2);
  return RatMatrix(t.transpose() * omega * t) == omega;
}

RatMatrix to_lattice_picture(const RatMatrix& t, const TypeVector& type) {
  const RatMatrix gamma = to_rational(lattice_basis(type));
  return *inverse(gamma) * t * gamma;
}

RatMatrix from_lattice_picture(const IntMatrix& s, const TypeVector& type) {
  const RatMatrix gamma = to_rational(lattice_basis(type));
  return gamma * to_rational(s) * *inverse(gamma);
}

std::optional<TypeVector> element_min_type(const RatMatrix& t) {
  if (!is_symplectic(t)) fail(ErrorCode::NotSymplectic, "matrix is not in Sp(2n, Q)");
  const auto n = static_cast<std::size_t>(t.rows() / 2);
  const Integer cap = common_denominator(t);

  std::vector<Integer> divisors;
  for (Integer d = 1; d <= cap; ++d)
    if (cap % d == 0) divisors.push_back(d);

  // Collect every chain t_1 | ... | t_n of divisors of the cap that works,
  // then pick a <=-minimal one (smallest product, lexicographic tie-break).
  std::vector<TypeVector> working;
  std::vector<Integer> chain;
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == n) {
      TypeVector candidate(chain);
      const RatMatrix s = to_lattice_picture(t, candidate);
      if (is_integral(s) && is_member(to_integer(s), candidate)) working.push_back(candidate);
      return;
    }
    for (const Integer& d : divisors) {
      if (depth > 0 && d % chain.back() != 0) continue;
      chain.push_back(d);
      extend(depth + 1);
      chain.pop_back();
    }
  };
  extend(0);
  if (working.empty()) return std::nullopt;

  auto product = [](const TypeVector& v) {
    Integer p = 1;
    for (const auto& e : v.entries()) p *= e;
    return p;
  };
  std::stable_sort(working.begin(), working.end(), [&](const TypeVector& a, const TypeVector& b) {
    return product(a) < product(b);
  });
  for (const auto& candidate : working) {
    bool minimal = true;
    for (const auto& other : working) {
      if (!(other == candidate) && type_leq(other, candidate)) {
        minimal = false;
        break;
      }
    }
    if (minimal) return candidate;
  }
  return working.front();
}

RatVector reduce_mod_one(const RatVector& v) {
  RatVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = frac(v(i));
  return out;
}

AffElement::AffElement(RatVector translation, SiegelElement rotation)
    : translation_(reduce_mod_one(translation)), rotation_(std::move(rotation)) {
  if (translation_.size() != rotation_.dim())
    fail(ErrorCode::DimensionMismatch, "translation length must equal 2n");
}

AffElement AffElement::identity(const TypeVector& type) {
  const auto dim = static_cast<Index>(2 * type.size());
  return AffElement(RatVector::Zero(dim), SiegelElement::identity(type));
}

AffElement aff_compose(const AffElement& g1, const AffElement& g2) {
  if (!(g1.type() == g2.type()))
    fail(ErrorCode::TypeContextMismatch, "Aff elements belong to different types");
  const RatVector rotated = to_rational(g1.rotation().matrix()) * g2.translation();
  return AffElement(g1.translation() + rotated, g1.rotation() * g2.rotation());
}

AffElement aff_inverse(const AffElement& g) {
  SiegelElement inv = g.rotation().inverse();
  const RatVector a = -(to_rational(inv.matrix()) * g.translation());
  return AffElement(a, std::move(inv));
}

IntMatrix aff_adjoint(const AffElement& g) { return g.rotation().matrix(); }

std::vector<Integer> isogeny_kernel(const TypeVector& t, const TypeVector& t2) {
  if (!type_leq(t, t2)) fail(ErrorCode::NotComparable, "isogeny requires t <= t2");
  std::vector<Integer> q;
  for (std::size_t i = 0; i < t.size(); ++i) q.push_back(t2[i] / t[i]);
  return q;
}

}  // namespace sympforge
