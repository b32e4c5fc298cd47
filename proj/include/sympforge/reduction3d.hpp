#pragma once

// Static timelike reduction of four-dimensional fields to an oriented
// Riemannian three-manifold sampled on a regular grid.
//
// Field storage on a grid with N nodes and k vector components:
//   scalar fields      k x N
//   one-forms        3*k x N, row 3*a + i holds component a of dx^i
//   two-forms        3*k x N, row 3*a + i holds component a of the cyclic
//                    basis (dx^1 ^ dx^2, dx^2 ^ dx^0, dx^0 ^ dx^1)[i]
// Nodes are numbered row-major: node = (i * n1 + j) * n2 + k.

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sympforge/forms4d.hpp"
#include "sympforge/taming.hpp"

namespace sympforge {

using Eigen::Index;
using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

class Grid3 {
 public:
  enum class Chart { Cartesian, Spherical };

  /// Throws GridTooSmall if any axis has fewer than 3 nodes. For the
  /// spherical chart (r, theta, phi) the metric diag(1, r^2, r^2 sin^2 theta)
  /// is built per node and `metric` is ignored.
  Grid3(std::array<Index, 3> shape, const Vector3d& origin, const Vector3d& spacing,
        Chart chart = Chart::Cartesian, const Matrix3d& metric = Matrix3d::Identity());

  /// Replaces the metric by per-node values. Throws DimensionMismatch or
  /// InvalidInput if some node metric is not symmetric positive-definite.
  void set_metric(std::vector<Matrix3d> per_node);

  Chart chart() const { return chart_; }
  const std::array<Index, 3>& shape() const { return shape_; }
  const Vector3d& origin() const { return origin_; }
  const Vector3d& spacing() const { return spacing_; }
  Index size() const { return shape_[0] * shape_[1] * shape_[2]; }
  bool constant_metric() const { return metric_.size() == 1; }

  Index node(Index i, Index j, Index k) const { return (i * shape_[1] + j) * shape_[2] + k; }
  std::array<Index, 3> ijk(Index node) const;
  /// Chart coordinates of a node.
  Vector3d coords(Index node) const;
  /// Position in Euclidean R^3 (identity for the Cartesian chart).
  Vector3d position(Index node) const;
  const Matrix3d& metric(Index node) const {
    return metric_[constant_metric() ? 0 : static_cast<std::size_t>(node)];
  }
  /// False on the one-cell boundary layer.
  bool interior(Index node) const;
  std::vector<Index> interior_nodes() const;

 private:
  std::array<Index, 3> shape_;
  Vector3d origin_;
  Vector3d spacing_;
  Chart chart_;
  std::vector<Matrix3d> metric_;
};

/// A taming per node, or a single one for the whole grid.
class TamingField {
 public:
  explicit TamingField(TamingMatrix<double> constant) : field_{std::move(constant)} {}
  explicit TamingField(std::vector<TamingMatrix<double>> per_node);

  const TamingMatrix<double>& at(Index node) const {
    return field_[field_.size() == 1 ? 0 : static_cast<std::size_t>(node)];
  }
  Index dim() const { return field_.front().dim(); }
  std::size_t count() const { return field_.size(); }

 private:
  std::vector<TamingMatrix<double>> field_;
};

struct BogomolnyPair {
  /// Higgs field, 2n x N.
  MatrixXd psi;
  /// Curvature, 2n spatial two-forms in cyclic storage, 6n x N.
  MatrixXd v;
};

// Pointwise three-dimensional Hodge stars in cyclic storage. With the
// orientation sign s: *alpha = s sqrt|h| h^{-1} alpha, *beta = s h beta / sqrt|h|.
Vector3d star_one_form(const Matrix3d& h, const Vector3d& alpha, int orientation = 1);
Vector3d star_two_form(const Matrix3d& h, const Vector3d& beta, int orientation = 1);

struct StaticDecomposition {
  /// Component a of the interior product of d/dt, as a 3-vector per component.
  std::vector<Vector3d> top;
  /// Spatial part in cyclic storage.
  std::vector<Vector3d> perp;
};

/// Splits omega = dt ^ top + perp. Throws NotStaticMetric unless g = -dt^2 + h.
StaticDecomposition decompose_form(const LorentzPoint<double>& p, const VectorTwoForm<double>& omega);
VectorTwoForm<double> reassemble(const StaticDecomposition& parts);
/// Spatial block h of a static metric. Throws NotStaticMetric.
Matrix3d spatial_metric(const LorentzPoint<double>& p);
LorentzPoint<double> static_point(const Matrix3d& h, int orientation = 1);

/// Signs in (*omega)_top = top_sign * *_h omega_perp and
/// (*omega)_perp = perp_sign * *_h omega_top, computed once from hodge_star2.
struct AstdecSigns {
  int top_sign;
  int perp_sign;
};
AstdecSigns calibrate_astdec_signs();

/// Max-norm difference between the four-dimensional star and its reduced
/// prediction. Throws NotStaticMetric.
double star_decompose_check(const LorentzPoint<double>& p, const VectorTwoForm<double>& omega);

/// Central differences of a scalar field (k x N) into a one-form field (3k x N).
/// Boundary columns are left at zero.
MatrixXd gradient(const Grid3& grid, const MatrixXd& scalar);
/// Exterior derivative of a two-form field (3k x N): the coefficient of
/// dx^0 ^ dx^1 ^ dx^2 per component, k x N. Boundary columns are zero.
MatrixXd exterior_derivative2(const Grid3& grid, const MatrixXd& two_form);
/// Exterior derivative of a one-form field (3k x N) into a two-form field.
MatrixXd exterior_derivative1(const Grid3& grid, const MatrixXd& one_form);
/// Pointwise *_h of a k-component one-form field, giving a two-form field.
MatrixXd star_field_one(const Grid3& grid, const MatrixXd& one_form);
/// Pointwise *_h of a k-component two-form field, giving a one-form field.
MatrixXd star_field_two(const Grid3& grid, const MatrixXd& two_form);

struct BogomolnyReport {
  /// Per node max |J *_h V - dPsi|; zero on the boundary layer.
  VectorXd eq_per_node;
  /// Per node max |dV|; zero on the boundary layer.
  VectorXd closure_per_node;
  double eq_residual = 0;
  double closure_residual = 0;
  Index interior_count = 0;
};

/// Throws GridTooSmall, RankMismatch.
BogomolnyReport bogomolny_residual(const Grid3& grid, const TamingField& j,
                                   const BogomolnyPair& pair);

struct LiftReport {
  /// Per node max |star_{g,J} W - W| for W = dt ^ dPsi + V; zero on the boundary layer.
  VectorXd residual_per_node;
  double residual = 0;
  /// The lifted two-forms at interior nodes, in interior_nodes() order, when kept.
  std::vector<VectorTwoForm<double>> fields;
};

LiftReport lift_to_4d(const BogomolnyPair& pair, const Grid3& grid, const TamingField& j,
                      bool keep_fields = false);

/// A matrix-valued coupling per node, or one for the whole grid.
struct CouplingField {
  std::vector<MatrixXd> values;
  const MatrixXd& at(Index node) const {
    return values[values.size() == 1 ? 0 : static_cast<std::size_t>(node)];
  }
};

struct EmStaticFields {
  CouplingField r;
  CouplingField i;
  /// One-form field 3n x N.
  MatrixXd e;
  /// Two-form field 3n x N.
  MatrixXd b;
  /// n x N each.
  MatrixXd phi;
  MatrixXd upsilon;
};

struct EmStaticReport {
  /// max |E + dPhi|
  double electric_potential = 0;
  /// max |I *B + R E + dUpsilon|, the lowered form of I B + R E = -grad Upsilon
  double magnetic_potential = 0;
  /// max |div B|
  double div_b = 0;
  /// max |div(I E - R B)|, the closure d(-R B + I *E) = 0
  double div_d = 0;
  double max() const;
};

EmStaticReport em_static_residual(const Grid3& grid, const EmStaticFields& fields);

/// Source-free electromagnetostatics: curl E = curl B = 0, div E = div B = 0,
/// for a one-form E and two-form B with proxies E^# and (*B)^#.
struct MaxwellReport {
  double curl_e = 0;
  double curl_b = 0;
  double div_e = 0;
  double div_b = 0;
  double max() const;
};

MaxwellReport maxwell_static_residual(const Grid3& grid, const MatrixXd& e, const MatrixXd& b);

}  // namespace sympforge
