#pragma once

// Integral symplectic lattices: types (elementary divisor chains), the Div^n
// order, standard Gram matrices and the symplectic normal form.
//
// Lattices are kept in the Z^{2n} picture: the lattice is Z^{2n} and the form
// is given by an integer Gram matrix. The standard lattice of type t inside
// (R^{2n}, omega_{2n}) is Gamma_t Z^{2n} with Gamma_t = diag(I_n, D_t).

#include <utility>
#include <vector>

#include "sympforge/exact.hpp"

namespace sympforge {

/// A divisibility chain t_1 | t_2 | ... | t_n of positive integers.
class TypeVector {
 public:
  TypeVector() = default;
  /// Throws InvalidType unless the entries form a divisibility chain of positive integers.
  explicit TypeVector(std::vector<Integer> entries);
  TypeVector(std::initializer_list<int> entries);

  /// delta(n) = (1, ..., 1), the bottom of Div^n.
  static TypeVector principal(std::size_t n);

  std::size_t size() const { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Integer>& entries() const { return entries_; }

  bool is_principal() const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;

 private:
  std::vector<Integer> entries_;
};

/// An antisymmetric nondegenerate integer 2n x 2n matrix.
class GramMatrix {
 public:
  /// Throws OddDimension, NotAntisymmetric or DegenerateForm.
  explicit GramMatrix(IntMatrix matrix);

  const IntMatrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  Index half_dim() const { return matrix_.rows() / 2; }

  friend bool operator==(const GramMatrix& a, const GramMatrix& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  IntMatrix matrix_;
};

struct NormalFormResult {
  /// Unimodular U with U^T Omega U equal to standard_gram(type).
  IntMatrix basis_change;
  TypeVector type;
};

struct MeetJoin {
  TypeVector meet;
  TypeVector join;
};

/// D_t = diag(t_1, ..., t_n).
IntMatrix divisor_matrix(const TypeVector& t);
/// Gamma_t = diag(I_n, D_t); its columns span the standard lattice of type t.
IntMatrix lattice_basis(const TypeVector& t);

/// [[0, D_t], [-D_t, 0]].
GramMatrix standard_gram(const TypeVector& t);

NormalFormResult symplectic_normal_form(const GramMatrix& gram);
TypeVector space_type(const GramMatrix& gram);

bool type_leq(const TypeVector& t, const TypeVector& t2);
MeetJoin type_meet_join(const TypeVector& t, const TypeVector& t2);

/// Columns span a sublattice of Z^{2n} on which omega_t restricts to type t2.
IntMatrix refine_sublattice(const TypeVector& t, const TypeVector& t2);

/// U^T Omega U.
IntMatrix pull_back(const IntMatrix& gram, const IntMatrix& basis);

}  // namespace sympforge
