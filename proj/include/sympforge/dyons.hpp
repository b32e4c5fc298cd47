#pragma once

// Spherically symmetric polarized dyons on R^3 minus the origin.
//
// For a taming J(r) and constant v, v' the Bogomolny pair is
//   Psi(r) = v' + int_r^inf J(s) v / (2 s^2) ds,   V = -v/2 nu_{S^2},
// with nu_{S^2} = (x dy^dz + y dz^dx + z dx^dy) / r^3 the pulled-back area form.
// For constant J the Higgs field is Psi = J v / (2 r) + v'.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sympforge/reduction3d.hpp"
#include "sympforge/symplattice.hpp"
#include "sympforge/taming.hpp"

namespace sympforge {

using RadialTaming = std::function<MatrixXd(double)>;

class DyonSolution {
 public:
  /// Constant taming.
  DyonSolution(TamingMatrix<double> j, VectorXd v, VectorXd v_prime, TypeVector type);
  /// Radial taming r -> J(r); evaluated at r = +inf for the asymptotic value.
  DyonSolution(RadialTaming j, VectorXd v, VectorXd v_prime, TypeVector type);

  const VectorXd& v() const { return v_; }
  const VectorXd& v_prime() const { return v_prime_; }
  const TypeVector& type() const { return type_; }
  Index dim() const { return v_.size(); }
  bool radial() const { return static_cast<bool>(radial_); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool v_integral(double tol = 1e-12) const;

  /// Throws NonPositiveRadius for r <= 0.
  MatrixXd taming_at(double r) const;
  VectorXd psi(double r) const;
  VectorXd dpsi_dr(double r) const;
  /// Coefficient of nu_{S^2} in V, namely -v/2.
  VectorXd area_coefficient() const { return -0.5 * v_; }
  /// V at a Cartesian point, 2n two-forms in cyclic storage (3 x 2n).
  MatrixXd curvature_at(const Vector3d& x) const;

 private:
  void check(double r) const;

  std::optional<TamingMatrix<double>> constant_;
  RadialTaming radial_;
  VectorXd v_;
  VectorXd v_prime_;
  TypeVector type_;
  std::vector<std::string> warnings_;
};

/// Throws NotATaming (via TamingMatrix), DimensionMismatch. Non-integer v only warns.
DyonSolution dyon_construct(const TamingMatrix<double>& j, const VectorXd& v,
                            const VectorXd& v_prime,
                            std::optional<TypeVector> type = std::nullopt);
DyonSolution dyon_construct_radial(RadialTaming j, const VectorXd& v, const VectorXd& v_prime,
                                   std::optional<TypeVector> type = std::nullopt);

/// Radial data entering V = -r^2 J(r) dPsi/dr nu_{S^2}.
struct RadialProfile {
  std::function<VectorXd(double)> psi;
  /// When empty, dPsi/dr is taken by central differences of psi.
  std::function<VectorXd(double)> dpsi_dr;
  RadialTaming taming;
  VectorXd area_coefficient;
};

RadialProfile radial_profile(const DyonSolution& sol);

struct RadialReport {
  /// max over radii of |area_coefficient + r^2 J(r) dPsi/dr|
  double equation = 0;
  /// max over radii of |d/dr (r^2 J(r) dPsi/dr)|, by central differences
  double integrability = 0;
  double max() const { return std::max(equation, integrability); }
};

/// Throws NonPositiveRadius.
RadialReport radial_check(const RadialProfile& profile, const std::vector<double>& radii);
RadialReport dyon_verify(const DyonSolution& sol, const std::vector<double>& radii);

/// Samples (Psi, V) on a grid. Cartesian grids must avoid the origin.
BogomolnyPair dyon_sample(const DyonSolution& sol, const Grid3& grid);
TamingField dyon_taming_field(const DyonSolution& sol, const Grid3& grid);

struct FluxReport {
  VectorXd flux;
  VectorXd normalized;
  VectorXd analytic;
  bool lattice_member = false;
  /// +1 or -1 according to which of +-2 pi v the quadrature matches; 0 for v = 0.
  int realized_sign = 0;
  double quadrature_error = 0;
  /// Chern data c = v/2 paired with the Euler integral of S^2.
  VectorXd chern;
  double euler_integral = 0;
};

/// Product Gauss-Legendre (in cos theta) x uniform (in phi) quadrature over the unit sphere.
/// Throws QuadratureFailure.
FluxReport flux_quantization(const DyonSolution& sol, int n_theta = 32, int n_phi = 64);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct EdynResult {
  DyonSolution solution;
  DenseMatrix<double> taming;
  Grid3 grid;
  EmStaticFields fields;
  /// The four electromagnetostatic conditions with theta-type coupling.
  EmStaticReport potentials;
  /// Source-free curl and divergence conditions.
  MaxwellReport maxwell;
  /// max |V - (B, -R B + I *E)| with V the analytic curvature of the dyon.
  double curvature_consistency = 0;
  /// max |B - (-(g^2/4pi) grad(Upsilon - theta/2pi Phi))| over interior nodes,
  /// with B read off the curvature of the Bogomolny pair.
  double consequence = 0;
  double theta = 0;
  double g_sq = 0;
};

/// Samples the n = 1 dyon with v = (q_e, q_m) on a Cartesian box of the given
/// spacing (7 nodes per axis) centred at `centre`. Throws InvalidCoupling.
EdynResult electrodynamics_dyon(double theta, double g_sq, long q_e, long q_m, long type_t,
                                double spacing = 1e-2,
                                const Vector3d& centre = Vector3d(3.0, 0.0, 4.0));

struct FiberCheck {
  bool ok = false;
  EmStaticReport potentials;
  MaxwellReport maxwell;
};

/// Static Maxwell residuals plus grad Psi = (E, -theta/2pi E - 4pi/g^2 B) with
/// Psi = (-Phi, Upsilon). Fields are n = 1 grid samples. Throws SampleMismatch.
FiberCheck h_theta_fiber_check(const Grid3& grid, const MatrixXd& e, const MatrixXd& b,
                               const MatrixXd& phi, const MatrixXd& upsilon, double theta,
                               double g_sq, double tol = 1e-6);

}  // namespace sympforge
