#include "sympforge/symplattice.hpp"

#include <string>

#include "sympforge/error.hpp"

namespace sympforge {

TypeVector::TypeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::InvalidType, "type vector must be non-empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 1)
      fail(ErrorCode::InvalidType, "type entries must be positive integers");
    if (i > 0 && entries_[i] % entries_[i - 1] != 0)
      fail(ErrorCode::InvalidType, "type entries must form a divisibility chain t_i | t_{i+1}");
  }
}

TypeVector::TypeVector(std::initializer_list<int> entries)
    : TypeVector(std::vector<Integer>(entries.begin(), entries.end())) {}

TypeVector TypeVector::principal(std::size_t n) {
  return TypeVector(std::vector<Integer>(n, Integer(1)));
}

bool TypeVector::is_principal() const {
  for (const auto& e : entries_)
    if (e != 1) return false;
  return true;
}

GramMatrix::GramMatrix(IntMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    fail(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  if (matrix_.rows() == 0 || matrix_.rows() % 2 != 0)
    fail(ErrorCode::OddDimension, "Gram matrix dimension must be even and positive");
  if (matrix_.transpose() != -matrix_)
    fail(ErrorCode::NotAntisymmetric, "Gram matrix must be antisymmetric");
  if (determinant(matrix_) == 0)
    fail(ErrorCode::DegenerateForm, "Gram matrix is degenerate (det = 0)");
}

IntMatrix divisor_matrix(const TypeVector& t) {
  const auto n = static_cast<Index>(t.size());
  IntMatrix d = IntMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) d(i, i) = t[static_cast<std::size_t>(i)];
  return d;
}

IntMatrix lattice_basis(const TypeVector& t) {
  const auto n = static_cast<Index>(t.size());
  IntMatrix g = int_identity(2 * n);
  g.bottomRightCorner(n, n) = divisor_matrix(t);
  return g;
}

GramMatrix standard_gram(const TypeVector& t) {
  const auto n = static_cast<Index>(t.size());
  IntMatrix omega = IntMatrix::Zero(2 * n, 2 * n);
  const IntMatrix d = divisor_matrix(t);
  omega.topRightCorner(n, n) = d;
  omega.bottomLeftCorner(n, n) = -d;
  return GramMatrix(std::move(omega));
}

IntMatrix pull_back(const IntMatrix& gram, const IntMatrix& basis) {
  return basis.transpose() * gram * basis;
}

namespace {

// Working state of the reduction: a is the Gram matrix in the current basis,
// u holds the current basis vectors (in original coordinates) as columns.
struct Reducer {
  IntMatrix a;
  IntMatrix u;

  void swap_basis(Index i, Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    a.col(i).swap(a.col(j));
    u.col(i).swap(u.col(j));
  }

  // e_dst <- e_dst + q e_src, applied as a congruence so a stays antisymmetric.
  void add_basis(Index dst, Index src, const Integer& q) {
    a.col(dst) += q * a.col(src);
    a.row(dst) += q * a.row(src);
    u.col(dst) += q * u.col(src);
  }

  // Move the nonzero entry of least absolute value in the active block to (k, k+1).
  void bring_min_to_front(Index k) {
    const Index dim = a.rows();
    Index bi = -1, bj = -1;
    Integer best = 0;
    for (Index i = k; i < dim; ++i) {
      for (Index j = i + 1; j < dim; ++j) {
        if (a(i, j) == 0) continue;
        const Integer v = abs(a(i, j));
        if (bi < 0 || v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) fail(ErrorCode::DegenerateForm, "Gram matrix is degenerate");
    swap_basis(k, bi);
    swap_basis(k + 1, bj == k ? bi : bj);
    if (a(k, k + 1) < 0) swap_basis(k, k + 1);
  }

  // Clears rows k and k+1 beyond the pivot block. Returns false if a nonzero
  // remainder smaller than the pivot was left behind.
  bool clear_pivot_rows(Index k) {
    const Index dim = a.rows();
    const Integer d = a(k, k + 1);
    bool clean = true;
    for (Index l = k + 2; l < dim; ++l) {
      const Integer q = floor_div(a(k, l), d);
      if (q != 0) add_basis(l, k + 1, -q);
      if (a(k, l) != 0) clean = false;
      const Integer q2 = floor_div(a(k + 1, l), d);
      if (q2 != 0) add_basis(l, k, q2);
      if (a(k + 1, l) != 0) clean = false;
    }
    return clean;
  }

  // If some entry of the complement is not divisible by the pivot, folds its
  // row into e_k and returns false.
  bool enforce_divisibility(Index k) {
    const Index dim = a.rows();
    const Integer d = a(k, k + 1);
    for (Index i = k + 2; i < dim; ++i) {
      for (Index j = i + 1; j < dim; ++j) {
        if (a(i, j) % d != 0) {
          add_basis(k, i, 1);
          return false;
        }
      }
    }
    return true;
  }
};

}  // namespace

NormalFormResult symplectic_normal_form(const GramMatrix& gram) {
  const Index dim = gram.dim();
  const Index n = gram.half_dim();
  Reducer r{gram.matrix(), int_identity(dim)};

  for (Index k = 0; k < dim; k += 2) {
    while (true) {
      r.bring_min_to_front(k);
      if (!r.clear_pivot_rows(k)) continue;
      if (r.enforce_divisibility(k)) break;
    }
  }

  // Basis is now (e_1, f_1, e_2, f_2, ...); reorder to (e_1..e_n, f_1..f_n).
  IntMatrix u(dim, dim);
  std::vector<Integer> divisors;
  divisors.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    u.col(i) = r.u.col(2 * i);
    u.col(n + i) = r.u.col(2 * i + 1);
    divisors.push_back(r.a(2 * i, 2 * i + 1));
  }
  return NormalFormResult{std::move(u), TypeVector(std::move(divisors))};
}

TypeVector space_type(const GramMatrix& gram) {
  return symplectic_normal_form(gram).type;
}

namespace {

void require_same_length(const TypeVector& t, const TypeVector& t2) {
  if (t.size() != t2.size())
    fail(ErrorCode::LengthMismatch, "type vectors have different lengths (" +
                                        std::to_string(t.size()) + " vs " +
                                        std::to_string(t2.size()) + ")");
}

}  // namespace

bool type_leq(const TypeVector& t, const TypeVector& t2) {
  require_same_length(t, t2);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t2[i] % t[i] != 0) return false;
  return true;
}

MeetJoin type_meet_join(const TypeVector& t, const TypeVector& t2) {
  require_same_length(t, t2);
  std::vector<Integer> meet, join;
  for (std::size_t i = 0; i < t.size(); ++i) {
    meet.push_back(gcd(t[i], t2[i]));
    join.push_back(lcm(t[i], t2[i]));
  }
  return MeetJoin{TypeVector(std::move(meet)), TypeVector(std::move(join))};
}

IntMatrix refine_sublattice(const TypeVector& t, const TypeVector& t2) {
  if (!type_leq(t, t2)) fail(ErrorCode::NotComparable, "refinement requires t <= t2");
  const auto n = static_cast<Index>(t.size());
  IntMatrix basis = int_identity(2 * n);
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    basis(n + i, n + i) = t2[k] / t[k];
  }
  return basis;
}

}  // namespace sympforge
