#include "sympforge/reduction3d.hpp"

#include <cmath>
#include <string>

namespace sympforge {

namespace {

constexpr double kStaticTol = 1e-12;

void require_spd(const Matrix3d& h) {
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::InvalidInput, "spatial metric must be symmetric");
  Eigen::LLT<Matrix3d> llt(h);
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::InvalidInput, "spatial metric must be positive-definite");
}

// Column `node` of a 3k-row field viewed as 3 x k: entry (i, a) is row 3a + i.
Eigen::Map<const MatrixXd> node_block(const MatrixXd& field, Index node) {
  return Eigen::Map<const MatrixXd>(field.col(node).data(), 3, field.rows() / 3);
}

Eigen::Map<MatrixXd> node_block(MatrixXd& field, Index node) {
  return Eigen::Map<MatrixXd>(field.col(node).data(), 3, field.rows() / 3);
}

void require_columns(const Grid3& grid, const MatrixXd& field, const char* what) {
  if (field.cols() != grid.size())
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + " has " + std::to_string(field.cols()) + " samples, grid has " +
             std::to_string(grid.size()));
}

void require_form_rows(const MatrixXd& field, const char* what) {
  if (field.rows() % 3 != 0)
    fail(ErrorCode::RankMismatch, std::string(what) + " rows must be a multiple of 3");
}

}  // namespace

Grid3::Grid3(std::array<Index, 3> shape, const Vector3d& origin, const Vector3d& spacing,
             Chart chart, const Matrix3d& metric)
    : shape_(shape), origin_(origin), spacing_(spacing), chart_(chart) {
  for (int a = 0; a < 3; ++a) {
    if (shape_[static_cast<std::size_t>(a)] < 3)
      fail(ErrorCode::GridTooSmall, "every axis needs at least 3 nodes for central differences");
    if (!(spacing_(a) > 0)) fail(ErrorCode::InvalidInput, "grid spacing must be positive");
  }
  if (chart_ == Chart::Cartesian) {
    require_spd(metric);
    metric_.assign(1, metric);
    return;
  }
  metric_.resize(static_cast<std::size_t>(size()));
  for (Index n = 0; n < size(); ++n) {
    const Vector3d c = coords(n);
    if (!(c(0) > 0)) fail(ErrorCode::NonPositiveRadius, "spherical grid needs r > 0");
    const double s = std::sin(c(1));
    if (!(s > 0)) fail(ErrorCode::InvalidInput, "spherical grid needs 0 < theta < pi");
    metric_[static_cast<std::size_t>(n)] =
        Vector3d(1.0, c(0) * c(0), c(0) * c(0) * s * s).asDiagonal();
  }
}

void Grid3::set_metric(std::vector<Matrix3d> per_node) {
  if (per_node.size() != 1 && static_cast<Index>(per_node.size()) != size())
    fail(ErrorCode::DimensionMismatch, "metric field must have one entry or one per node");
  for (const auto& h : per_node) require_spd(h);
  metric_ = std::move(per_node);
}

std::array<Index, 3> Grid3::ijk(Index node) const {
  const Index k = node % shape_[2];
  const Index j = (node / shape_[2]) % shape_[1];
  const Index i = node / (shape_[1] * shape_[2]);
  return {i, j, k};
}

Vector3d Grid3::coords(Index node) const {
  const auto idx = ijk(node);
  return origin_ + Vector3d(double(idx[0]), double(idx[1]), double(idx[2])).cwiseProduct(spacing_);
}

Vector3d Grid3::position(Index node) const {
  const Vector3d c = coords(node);
  if (chart_ == Chart::Cartesian) return c;
  return {c(0) * std::sin(c(1)) * std::cos(c(2)), c(0) * std::sin(c(1)) * std::sin(c(2)),
          c(0) * std::cos(c(1))};
}

bool Grid3::interior(Index node) const {
  const auto idx = ijk(node);
  for (std::size_t a = 0; a < 3; ++a)
    if (idx[a] == 0 || idx[a] == shape_[a] - 1) return false;
  return true;
}

std::vector<Index> Grid3::interior_nodes() const {
  std::vector<Index> out;
  for (Index n = 0; n < size(); ++n)
    if (interior(n)) out.push_back(n);
  return out;
}

TamingField::TamingField(std::vector<TamingMatrix<double>> per_node) : field_(std::move(per_node)) {
  if (field_.empty()) fail(ErrorCode::InvalidInput, "taming field is empty");
  for (const auto& j : field_)
    if (j.dim() != field_.front().dim())
      fail(ErrorCode::RankMismatch, "taming field mixes dimensions");
}

Vector3d star_one_form(const Matrix3d& h, const Vector3d& alpha, int orientation) {
  return double(orientation) * std::sqrt(h.determinant()) * h.llt().solve(alpha);
}

Vector3d star_two_form(const Matrix3d& h, const Vector3d& beta, int orientation) {
  return double(orientation) * (h * beta) / std::sqrt(h.determinant());
}

Matrix3d spatial_metric(const LorentzPoint<double>& p) {
  const auto& g = p.metric();
  if (std::abs(g(0, 0) + 1.0) > kStaticTol || g.row(0).tail<3>().cwiseAbs().maxCoeff() > kStaticTol)
    fail(ErrorCode::NotStaticMetric, "metric must be of the form -dt^2 + h");
  return g.bottomRightCorner<3, 3>();
}

LorentzPoint<double> static_point(const Matrix3d& h, int orientation) {
  Matrix4<double> g = Matrix4<double>::Zero();
  g(0, 0) = -1.0;
  g.bottomRightCorner<3, 3>() = h;
  return LorentzPoint<double>(g, orientation);
}

StaticDecomposition decompose_form(const LorentzPoint<double>& p,
                                   const VectorTwoForm<double>& omega) {
  spatial_metric(p);
  StaticDecomposition out;
  for (const auto& f : omega.coeffs()) {
    out.top.emplace_back(f(0, 1), f(0, 2), f(0, 3));
    out.perp.emplace_back(f(2, 3), f(3, 1), f(1, 2));
  }
  return out;
}

VectorTwoForm<double> reassemble(const StaticDecomposition& parts) {
  std::vector<Matrix4<double>> out;
  for (std::size_t a = 0; a < parts.top.size(); ++a) {
    Matrix4<double> f = Matrix4<double>::Zero();
    const Vector3d& t = parts.top[a];
    const Vector3d& s = parts.perp[a];
    for (int i = 0; i < 3; ++i) {
      f(0, i + 1) = t(i);
      f(i + 1, 0) = -t(i);
    }
    f(2, 3) = s(0);
    f(3, 2) = -s(0);
    f(3, 1) = s(1);
    f(1, 3) = -s(1);
    f(1, 2) = s(2);
    f(2, 1) = -s(2);
    out.push_back(f);
  }
  return VectorTwoForm<double>(std::move(out));
}

AstdecSigns calibrate_astdec_signs() {
  static const AstdecSigns signs = [] {
    const auto p = LorentzPoint<double>::minkowski();
    const Matrix3d h = Matrix3d::Identity();
    // dt ^ dx has top dx; the perp part of its star against *_h dx = dy ^ dz.
    const auto from_top = decompose_form(p, hodge_star2(p, VectorTwoForm<double>::basis(1, 0, 0, 1)));
    const double perp = from_top.perp[0].dot(star_one_form(h, Vector3d::UnitX()));
    // dy ^ dz has perp dy ^ dz; the top part of its star against *_h(dy ^ dz) = dx.
    const auto from_perp = decompose_form(p, hodge_star2(p, VectorTwoForm<double>::basis(1, 0, 2, 3)));
    const double top = from_perp.top[0].dot(star_two_form(h, Vector3d::UnitX()));
    if (std::abs(std::abs(perp) - 1.0) > 1e-12 || std::abs(std::abs(top) - 1.0) > 1e-12)
      fail(ErrorCode::InvalidInput, "Hodge star calibration did not produce unit signs");
    return AstdecSigns{top > 0 ? 1 : -1, perp > 0 ? 1 : -1};
  }();
  return signs;
}

double star_decompose_check(const LorentzPoint<double>& p, const VectorTwoForm<double>& omega) {
  const Matrix3d h = spatial_metric(p);
  const int s = p.orientation();
  const AstdecSigns signs = calibrate_astdec_signs();
  const StaticDecomposition parts = decompose_form(p, omega);
  StaticDecomposition predicted;
  for (std::size_t a = 0; a < parts.top.size(); ++a) {
    predicted.top.push_back(double(signs.top_sign) * star_two_form(h, parts.perp[a], s));
    predicted.perp.push_back(double(signs.perp_sign) * star_one_form(h, parts.top[a], s));
  }
  return (reassemble(predicted) - hodge_star2(p, omega)).max_abs();
}

MatrixXd gradient(const Grid3& grid, const MatrixXd& scalar) {
  require_columns(grid, scalar, "scalar field");
  const auto& shape = grid.shape();
  const std::array<Index, 3> stride{shape[1] * shape[2], shape[2], 1};
  const Index k = scalar.rows();
  MatrixXd out = MatrixXd::Zero(3 * k, grid.size());
  for (Index n = 0; n < grid.size(); ++n) {
    if (!grid.interior(n)) continue;
    for (Index a = 0; a < k; ++a)
      for (int i = 0; i < 3; ++i)
        out(3 * a + i, n) = (scalar(a, n + stride[static_cast<std::size_t>(i)]) -
                             scalar(a, n - stride[static_cast<std::size_t>(i)])) /
                            (2.0 * grid.spacing()(i));
  }
  return out;
}

MatrixXd exterior_derivative2(const Grid3& grid, const MatrixXd& two_form) {
  require_columns(grid, two_form, "two-form field");
  require_form_rows(two_form, "two-form field");
  const auto& shape = grid.shape();
  const std::array<Index, 3> stride{shape[1] * shape[2], shape[2], 1};
  const Index k = two_form.rows() / 3;
  MatrixXd out = MatrixXd::Zero(k, grid.size());
  for (Index n = 0; n < grid.size(); ++n) {
    if (!grid.interior(n)) continue;
    for (Index a = 0; a < k; ++a) {
      double sum = 0;
      for (int i = 0; i < 3; ++i)
        sum += (two_form(3 * a + i, n + stride[static_cast<std::size_t>(i)]) -
                two_form(3 * a + i, n - stride[static_cast<std::size_t>(i)])) /
               (2.0 * grid.spacing()(i));
      out(a, n) = sum;
    }
  }
  return out;
}

MatrixXd exterior_derivative1(const Grid3& grid, const MatrixXd& one_form) {
  require_columns(grid, one_form, "one-form field");
  require_form_rows(one_form, "one-form field");
  const MatrixXd grad = gradient(grid, one_form);
  // Rows of grad: 3 * (3a + j) + i holds d_i alpha^a_j.
  const Index k = one_form.rows() / 3;
  MatrixXd out = MatrixXd::Zero(3 * k, grid.size());
  for (Index n = 0; n < grid.size(); ++n) {
    for (Index a = 0; a < k; ++a) {
      for (Index i = 0; i < 3; ++i) {
        const Index p = (i + 1) % 3, q = (i + 2) % 3;
        out(3 * a + i, n) = grad(3 * (3 * a + q) + p, n) - grad(3 * (3 * a + p) + q, n);
      }
    }
  }
  return out;
}

MatrixXd star_field_one(const Grid3& grid, const MatrixXd& one_form) {
  require_columns(grid, one_form, "one-form field");
  require_form_rows(one_form, "one-form field");
  MatrixXd out(one_form.rows(), one_form.cols());
  for (Index n = 0; n < grid.size(); ++n) {
    const auto in = node_block(one_form, n);
    auto dst = node_block(out, n);
    for (Index a = 0; a < in.cols(); ++a) dst.col(a) = star_one_form(grid.metric(n), in.col(a));
  }
  return out;
}

MatrixXd star_field_two(const Grid3& grid, const MatrixXd& two_form) {
  require_columns(grid, two_form, "two-form field");
  require_form_rows(two_form, "two-form field");
  MatrixXd out(two_form.rows(), two_form.cols());
  for (Index n = 0; n < grid.size(); ++n) {
    const auto in = node_block(two_form, n);
    auto dst = node_block(out, n);
    for (Index a = 0; a < in.cols(); ++a) dst.col(a) = star_two_form(grid.metric(n), in.col(a));
  }
  return out;
}

namespace {

void require_pair_shape(const Grid3& grid, const TamingField& j, const BogomolnyPair& pair) {
  const Index dim = j.dim();
  if (pair.psi.rows() != dim || pair.v.rows() != 3 * dim)
    fail(ErrorCode::RankMismatch, "Bogomolny pair must have 2n Higgs and 2n curvature components");
  require_columns(grid, pair.psi, "Higgs field");
  require_columns(grid, pair.v, "curvature field");
  if (j.count() != 1 && static_cast<Index>(j.count()) != grid.size())
    fail(ErrorCode::DimensionMismatch, "taming field must have one entry or one per node");
}

}  // namespace

BogomolnyReport bogomolny_residual(const Grid3& grid, const TamingField& j,
                                   const BogomolnyPair& pair) {
  require_pair_shape(grid, j, pair);
  const MatrixXd dpsi = gradient(grid, pair.psi);
  const MatrixXd star_v = star_field_two(grid, pair.v);
  const MatrixXd dv = exterior_derivative2(grid, pair.v);

  BogomolnyReport report;
  report.eq_per_node = VectorXd::Zero(grid.size());
  report.closure_per_node = VectorXd::Zero(grid.size());
  for (Index n = 0; n < grid.size(); ++n) {
    if (!grid.interior(n)) continue;
    ++report.interior_count;
    const MatrixXd lhs = node_block(star_v, n) * j.at(n).matrix().transpose();
    const double eq = (lhs - node_block(dpsi, n)).cwiseAbs().maxCoeff();
    const double closure = dv.col(n).cwiseAbs().maxCoeff();
    report.eq_per_node(n) = eq;
    report.closure_per_node(n) = closure;
    report.eq_residual = std::max(report.eq_residual, eq);
    report.closure_residual = std::max(report.closure_residual, closure);
  }
  return report;
}

LiftReport lift_to_4d(const BogomolnyPair& pair, const Grid3& grid, const TamingField& j,
                      bool keep_fields) {
  require_pair_shape(grid, j, pair);
  const MatrixXd dpsi = gradient(grid, pair.psi);
  LiftReport report;
  report.residual_per_node = VectorXd::Zero(grid.size());
  for (Index n = 0; n < grid.size(); ++n) {
    if (!grid.interior(n)) continue;
    StaticDecomposition parts;
    const auto top = node_block(dpsi, n);
    const auto perp = node_block(pair.v, n);
    for (Index a = 0; a < top.cols(); ++a) {
      parts.top.push_back(top.col(a));
      parts.perp.push_back(perp.col(a));
    }
    VectorTwoForm<double> w = reassemble(parts);
    const auto p = static_point(grid.metric(n));
    const double r = (polarized_star(p, j.at(n), w) - w).max_abs();
    report.residual_per_node(n) = r;
    report.residual = std::max(report.residual, r);
    if (keep_fields) report.fields.push_back(std::move(w));
  }
  return report;
}

double EmStaticReport::max() const {
  return std::max({electric_potential, magnetic_potential, div_b, div_d});
}

EmStaticReport em_static_residual(const Grid3& grid, const EmStaticFields& f) {
  const Index n = f.phi.rows();
  if (f.upsilon.rows() != n || f.e.rows() != 3 * n || f.b.rows() != 3 * n)
    fail(ErrorCode::RankMismatch, "field component counts disagree");
  for (const MatrixXd* m : {&f.phi, &f.upsilon, &f.e, &f.b}) require_columns(grid, *m, "field");
  for (const CouplingField* c : {&f.r, &f.i}) {
    if (c->values.size() != 1 && static_cast<Index>(c->values.size()) != grid.size())
      fail(ErrorCode::DimensionMismatch, "coupling field must have one entry or one per node");
    for (const auto& m : c->values)
      if (m.rows() != n || m.cols() != n)
        fail(ErrorCode::DimensionMismatch, "coupling matrices must be n x n");
  }

  const MatrixXd dphi = gradient(grid, f.phi);
  const MatrixXd dups = gradient(grid, f.upsilon);
  const MatrixXd star_b = star_field_two(grid, f.b);
  const MatrixXd star_e = star_field_one(grid, f.e);
  MatrixXd d_form(3 * n, grid.size());
  for (Index node = 0; node < grid.size(); ++node)
    node_block(d_form, node) = node_block(star_e, node) * f.i.at(node).transpose() -
                               node_block(f.b, node) * f.r.at(node).transpose();
  const MatrixXd div_b = exterior_derivative2(grid, f.b);
  const MatrixXd div_d = exterior_derivative2(grid, d_form);

  EmStaticReport report;
  for (Index node = 0; node < grid.size(); ++node) {
    if (!grid.interior(node)) continue;
    const double vol = std::sqrt(grid.metric(node).determinant());
    const auto e = node_block(f.e, node);
    report.electric_potential = std::max(
        report.electric_potential, (e + node_block(dphi, node)).cwiseAbs().maxCoeff());
    const MatrixXd mag = node_block(star_b, node) * f.i.at(node).transpose() +
                         e * f.r.at(node).transpose() + node_block(dups, node);
    report.magnetic_potential = std::max(report.magnetic_potential, mag.cwiseAbs().maxCoeff());
    report.div_b = std::max(report.div_b, div_b.col(node).cwiseAbs().maxCoeff() / vol);
    report.div_d = std::max(report.div_d, div_d.col(node).cwiseAbs().maxCoeff() / vol);
  }
  return report;
}

double MaxwellReport::max() const { return std::max({curl_e, curl_b, div_e, div_b}); }

MaxwellReport maxwell_static_residual(const Grid3& grid, const MatrixXd& e, const MatrixXd& b) {
  require_columns(grid, e, "electric field");
  require_columns(grid, b, "magnetic field");
  if (e.rows() != b.rows() || e.rows() % 3 != 0)
    fail(ErrorCode::RankMismatch, "field component counts disagree");
  const MatrixXd curl_e = exterior_derivative1(grid, e);
  const MatrixXd curl_b = exterior_derivative1(grid, star_field_two(grid, b));
  const MatrixXd div_e = exterior_derivative2(grid, star_field_one(grid, e));
  const MatrixXd div_b = exterior_derivative2(grid, b);
  MaxwellReport report;
  for (Index n = 0; n < grid.size(); ++n) {
    if (!grid.interior(n)) continue;
    const double vol = std::sqrt(grid.metric(n).determinant());
    report.curl_e = std::max(report.curl_e, curl_e.col(n).cwiseAbs().maxCoeff());
    report.curl_b = std::max(report.curl_b, curl_b.col(n).cwiseAbs().maxCoeff());
    report.div_e = std::max(report.div_e, div_e.col(n).cwiseAbs().maxCoeff() / vol);
    report.div_b = std::max(report.div_b, div_b.col(n).cwiseAbs().maxCoeff() / vol);
  }
  return report;
}

}  // namespace sympforge
