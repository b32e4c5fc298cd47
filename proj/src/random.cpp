#include "sympforge/random.hpp"

namespace sympforge::gen {

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

IntMatrix antisymmetric_nondegenerate(Rng& rng, Index n, int bound) {
  const Index dim = 2 * n;
  while (true) {
    IntMatrix a = IntMatrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      for (Index j = i + 1; j < dim; ++j) {
        a(i, j) = uniform_int(rng, -bound, bound);
        a(j, i) = -a(i, j);
      }
    }
    if (determinant(a) != 0) return a;
  }
}

IntMatrix unimodular(Rng& rng, Index dim, int steps, int bound) {
  IntMatrix u = int_identity(dim);
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<Index>(uniform_int(rng, 0, static_cast<int>(dim) - 1));
    auto j = static_cast<Index>(uniform_int(rng, 0, static_cast<int>(dim) - 2));
    if (j >= i) ++j;
    if (dim == 1 || uniform_int(rng, 0, 4) == 0) {
      u.row(i) = -u.row(i);
      continue;
    }
    const int k = uniform_int(rng, -bound, bound);
    u.row(i) += Integer(k) * u.row(j);
  }
  return u;
}

TypeVector type_vector(Rng& rng, std::size_t n, int max_ratio) {
  std::vector<Integer> t;
  Integer cur = uniform_int(rng, 1, max_ratio);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) cur *= uniform_int(rng, 1, max_ratio);
    t.push_back(cur);
  }
  return TypeVector(std::move(t));
}

IntMatrix siegel_member(Rng& rng, const TypeVector& t, int steps, int bound) {
  const auto n = static_cast<Index>(t.size());
  IntMatrix s = int_identity(2 * n);
  for (int step = 0; step < steps; ++step) {
    IntMatrix g = int_identity(2 * n);
    const int kind = uniform_int(rng, 0, 2);
    const auto i = static_cast<Index>(uniform_int(rng, 0, static_cast<int>(n) - 1));
    const auto j = static_cast<Index>(uniform_int(rng, 0, static_cast<int>(n) - 1));
    const Integer k = uniform_int(rng, -bound, bound);
    if (kind < 2) {
      // [[I, B], [0, I]] or [[I, 0], [B, I]] with D_t B symmetric.
      IntMatrix b = IntMatrix::Zero(n, n);
      if (i == j) {
        b(i, i) = k;
      } else {
        const Index lo = std::min(i, j), hi = std::max(i, j);
        b(hi, lo) = k;
        b(lo, hi) = k * t[static_cast<std::size_t>(hi)] / t[static_cast<std::size_t>(lo)];
      }
      if (kind == 0) g.topRightCorner(n, n) = b;
      else g.bottomLeftCorner(n, n) = b;
    } else if (i != j) {
      // diag(A, D^{-1} A^{-T} D) with A = I + k e_{hi,lo}; integral since t_lo | t_hi.
      const Index lo = std::min(i, j), hi = std::max(i, j);
      g(hi, lo) = k;
      g(n + lo, n + hi) = -k * t[static_cast<std::size_t>(hi)] / t[static_cast<std::size_t>(lo)];
    } else {
      // diag(-1, -1) on the (e_i, f_i) plane.
      g(i, i) = -1;
      g(n + i, n + i) = -1;
    }
    s = s * g;
  }
  return s;
}

RatVector rational_vector(Rng& rng, Index dim, int max_den) {
  RatVector v(dim);
  for (Index i = 0; i < dim; ++i)
    v(i) = Rational(uniform_int(rng, -3 * max_den, 3 * max_den), uniform_int(rng, 1, max_den));
  return v;
}

DenseMatrix<double> symmetric(Rng& rng, Index n, double scale) {
  DenseMatrix<double> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = uniform_real(rng, -scale, scale);
  return m;
}

DenseMatrix<double> positive_definite(Rng& rng, Index n) {
  DenseMatrix<double> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = uniform_real(rng, -1.0, 1.0);
  return m * m.transpose() + 0.5 * DenseMatrix<double>::Identity(n, n);
}

PeriodMatrix<double> period_matrix(Rng& rng, Index n) {
  return PeriodMatrix<double>(symmetric(rng, n), positive_definite(rng, n));
}

DenseMatrix<double> real_symplectic(Rng& rng, Index n) {
  using M = DenseMatrix<double>;
  const M id = M::Identity(n, n);
  M upper = M::Identity(2 * n, 2 * n), lower = M::Identity(2 * n, 2 * n),
    diag = M::Zero(2 * n, 2 * n);
  upper.topRightCorner(n, n) = symmetric(rng, n, 0.7);
  lower.bottomLeftCorner(n, n) = symmetric(rng, n, 0.7);
  M a = id;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) += uniform_real(rng, -0.3, 0.3);
  diag.topLeftCorner(n, n) = a;
  diag.bottomRightCorner(n, n) = a.inverse().transpose();
  return upper * diag * lower;
}

LorentzPoint<double> lorentz_point(Rng& rng, bool random_orientation) {
  Matrix4<double> p = Matrix4<double>::Identity();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p(i, j) += uniform_real(rng, -0.4, 0.4);
  Matrix4<double> eta = Matrix4<double>::Identity();
  eta(0, 0) = -1.0;
  Matrix4<double> g = p.transpose() * eta * p;
  g = (0.5 * (g + g.transpose())).eval();
  const int orientation = random_orientation && uniform_int(rng, 0, 1) == 1 ? -1 : 1;
  return LorentzPoint<double>(g, orientation);
}

LorentzPoint<double> static_lorentz_point(Rng& rng, bool random_orientation) {
  Matrix4<double> g = Matrix4<double>::Zero();
  g(0, 0) = -1.0;
  g.bottomRightCorner<3, 3>() = positive_definite(rng, 3);
  const int orientation = random_orientation && uniform_int(rng, 0, 1) == 1 ? -1 : 1;
  return LorentzPoint<double>(g, orientation);
}

VectorTwoForm<double> two_form(Rng& rng, Index rank) {
  std::vector<Matrix4<double>> coeffs;
  for (Index k = 0; k < rank; ++k) {
    Matrix4<double> f = Matrix4<double>::Zero();
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        f(a, b) = uniform_real(rng, -1.0, 1.0);
        f(b, a) = -f(a, b);
      }
    }
    coeffs.push_back(f);
  }
  return VectorTwoForm<double>(std::move(coeffs));
}

}  // namespace sympforge::gen
