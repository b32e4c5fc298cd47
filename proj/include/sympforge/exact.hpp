#pragma once

// Exact integer and rational linear algebra on Eigen dense types.

#include "sympforge/detail/boost_eigen_compat.hpp"

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace sympforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<Integer>;
using IntVector = VectorX<Integer>;
using RatMatrix = MatrixX<Rational>;
using RatVector = VectorX<Rational>;
using Index = Eigen::Index;

/// Floor division, rounding toward negative infinity (b != 0).
Integer floor_div(const Integer& a, const Integer& b);
/// Non-negative remainder of a modulo |b|.
Integer floor_mod(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

/// Gauss-Jordan inverse over Q; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

bool is_integral(const RatMatrix& m);
bool is_integral(const RatVector& v);
/// Throws InvalidInput if any entry has a non-unit denominator.
IntMatrix to_integer(const RatMatrix& m);

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }
inline IntMatrix int_identity(Index n) { return IntMatrix::Identity(n, n); }

/// Coefficients c_0..c_{n-1} of det(xI - A) = x^n + c_{n-1} x^{n-1} + ... + c_0.
std::vector<Rational> characteristic_polynomial(const RatMatrix& a);

Rational trace(const RatMatrix& a);

/// Lowest common denominator of all entries.
Integer common_denominator(const RatMatrix& m);

}  // namespace sympforge
