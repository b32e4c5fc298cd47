#pragma once

// Modified Siegel modular groups Sp_t(2n, Z) and the affine torus group
// Aff_t = U(1)^{2n} x| Sp_t(2n, Z).
//
// Members are stored in the Z^{2n} picture: integer matrices S with
// S^T Omega_t S = Omega_t. The same group element acting on (R^{2n}, omega_{2n})
// and preserving the standard lattice Gamma_t Z^{2n} is Gamma_t S Gamma_t^{-1}.

#include <optional>

#include "sympforge/exact.hpp"
#include "sympforge/symplattice.hpp"

namespace sympforge {

/// S^T Omega_t S == Omega_t, exactly. Throws DimensionMismatch.
bool is_member(const IntMatrix& s, const TypeVector& t);

class SiegelElement {
 public:
  /// Throws NotAMember unless the matrix lies in Sp_t(2n, Z).
  SiegelElement(IntMatrix matrix, TypeVector type);
  static SiegelElement identity(const TypeVector& type);

  const IntMatrix& matrix() const { return matrix_; }
  const TypeVector& type() const { return type_; }
  Index dim() const { return matrix_.rows(); }

  SiegelElement inverse() const;

  friend SiegelElement operator*(const SiegelElement& a, const SiegelElement& b);
  friend bool operator==(const SiegelElement& a, const SiegelElement& b) {
    return a.type_ == b.type_ && a.matrix_ == b.matrix_;
  }

 private:
  IntMatrix matrix_;
  TypeVector type_;
};

/// Exact inverse of a member: Omega_t^{-1} S^T Omega_t.
IntMatrix siegel_inverse(const IntMatrix& s, const TypeVector& t);

/// True iff T^T omega_{2n} T == omega_{2n} over Q.
bool is_symplectic(const RatMatrix& t);

/// Gamma_t^{-1} T Gamma_t: the Z^{2n}-picture matrix of a real symplectic T.
RatMatrix to_lattice_picture(const RatMatrix& t, const TypeVector& type);
/// Gamma_t S Gamma_t^{-1}.
RatMatrix from_lattice_picture(const IntMatrix& s, const TypeVector& type);

/// The <=-minimal type t with T in Sp_t(2n, Z), searching chains whose entries
/// divide the lcm of the denominators of T. Throws NotSymplectic.
std::optional<TypeVector> element_min_type(const RatMatrix& t);

/// Element (a, gamma) of Aff_t; the translation is kept reduced into [0, 1).
class AffElement {
 public:
  AffElement(RatVector translation, SiegelElement rotation);
  static AffElement identity(const TypeVector& type);

  const RatVector& translation() const { return translation_; }
  const SiegelElement& rotation() const { return rotation_; }
  const TypeVector& type() const { return rotation_.type(); }

  friend bool operator==(const AffElement& a, const AffElement& b) {
    return a.rotation_ == b.rotation_ && a.translation_ == b.translation_;
  }

 private:
  RatVector translation_;
  SiegelElement rotation_;
};

/// (a1 + gamma1 a2 mod 1, gamma1 gamma2). Throws TypeContextMismatch.
AffElement aff_compose(const AffElement& g1, const AffElement& g2);
/// (-gamma^{-1} a mod 1, gamma^{-1}).
AffElement aff_inverse(const AffElement& g);
/// Adjoint action on the Lie algebra R^{2n}; translations act trivially.
IntMatrix aff_adjoint(const AffElement& g);

/// Reduce every entry into [0, 1).
RatVector reduce_mod_one(const RatVector& v);

/// (t2_1 / t_1, ..., t2_n / t_n): the kernel Z_{q_1} x ... x Z_{q_n} of the
/// isogeny between the standard tori of types t <= t2. Throws NotComparable.
std::vector<Integer> isogeny_kernel(const TypeVector& t, const TypeVector& t2);

}  // namespace sympforge
