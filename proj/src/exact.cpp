#include "sympforge/exact.hpp"

#include <utility>


#include "sympforge/error.hpp"

namespace sympforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::TypeContextMismatch: return "TypeContextMismatch";
    case ErrorCode::SingularImaginaryPart: return "SingularImaginaryPart";
    case ErrorCode::NotAPeriodMatrix: return "NotAPeriodMatrix";
    case ErrorCode::NotATaming: return "NotATaming";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::WrongSignature: return "WrongSignature";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotStaticMetric: return "NotStaticMetric";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::InvalidCoupling: return "InvalidCoupling";
    case ErrorCode::SampleMismatch: return "SampleMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::BoundTooLargeForBudget: return "BoundTooLargeForBudget";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += abs(b);
  return r;
}

Integer floor(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs(a);
  Integer y = abs(b);
  while (y != 0) {
    Integer r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Integer determinant(const IntMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index pivot = k + 1;
      while (pivot < n && a(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      a.row(k).swap(a.row(pivot));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      det = -det;
    }
    det *= a(k, k);
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational factor = a(i, k) / a(k, k);
      for (Index j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      inv.row(k).swap(inv.row(pivot));
    }
    const Rational p = a(k, k);
    for (Index j = 0; j < n; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational factor = a(i, k);
      for (Index j = 0; j < n; ++j) {
        a(i, j) -= factor * a(k, j);
        inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

bool is_integral(const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (denominator(m(i, j)) != 1) return false;
  return true;
}

bool is_integral(const RatVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (denominator(v(i)) != 1) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (denominator(m(i, j)) != 1)
        fail(ErrorCode::InvalidInput, "matrix entry is not an integer");
      out(i, j) = numerator(m(i, j));
    }
  }
  return out;
}

std::vector<Rational> characteristic_polynomial(const RatMatrix& a) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  const Index n = a.rows();
  std::vector<Rational> coeffs(static_cast<std::size_t>(n));
  RatMatrix m = RatMatrix::Zero(n, n);
  Rational c = 1;
  for (Index k = 1; k <= n; ++k) {
    m = a * m;
    for (Index i = 0; i < n; ++i) m(i, i) += c;
    const RatMatrix am = a * m;
    c = -trace(am) / Rational(k);
    coeffs[static_cast<std::size_t>(n - k)] = c;
  }
  return coeffs;
}

Rational trace(const RatMatrix& a) {
  Rational t = 0;
  for (Index i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) d = lcm(d, denominator(m(i, j)));
  return d;
}

}  // namespace sympforge
