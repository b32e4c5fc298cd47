#pragma once

// Pointwise exterior algebra of vector-valued two-forms on a 4d Lorentzian
// vector space with coordinates ordered (t, x, y, z), signature (3,1) mostly
// plus, and eps_{0123} = +1 times the orientation sign.

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sympforge/error.hpp"
#include "sympforge/taming.hpp"

namespace sympforge {

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

/// Sign of the permutation (a, b, c, d) of (0, 1, 2, 3); zero on repeats.
constexpr int levi_civita(int a, int b, int c, int d) {
  const std::array<int, 4> p{a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

template <typename Scalar = double>
class LorentzPoint {
 public:
  /// Throws WrongSignature unless the metric has signature (3,1).
  explicit LorentzPoint(const Matrix4<Scalar>& metric, int orientation = 1,
                        Scalar tol = Scalar(1e-12))
      : metric_(metric), orientation_(orientation) {
    if ((metric_ - metric_.transpose()).cwiseAbs().maxCoeff() > tol)
      fail(ErrorCode::WrongSignature, "metric must be symmetric");
    if (orientation_ != 1 && orientation_ != -1)
      fail(ErrorCode::InvalidInput, "orientation must be +1 or -1");
    Eigen::SelfAdjointEigenSolver<Matrix4<Scalar>> eig(metric_);
    const auto& ev = eig.eigenvalues();  // ascending
    if (!(ev(0) < -tol && ev(1) > tol))
      fail(ErrorCode::WrongSignature, "metric must have signature (3,1): one negative eigenvalue");
    inverse_ = metric_.inverse();
    volume_factor_ = std::sqrt(std::abs(metric_.determinant()));
  }

  static LorentzPoint minkowski() {
    Matrix4<Scalar> eta = Matrix4<Scalar>::Identity();
    eta(0, 0) = Scalar(-1);
    return LorentzPoint(eta);
  }

  const Matrix4<Scalar>& metric() const { return metric_; }
  const Matrix4<Scalar>& inverse_metric() const { return inverse_; }
  int orientation() const { return orientation_; }
  /// sqrt|det g|.
  Scalar volume_factor() const { return volume_factor_; }

 private:
  Matrix4<Scalar> metric_;
  Matrix4<Scalar> inverse_;
  int orientation_;
  Scalar volume_factor_;
};

/// A two-form with values in R^k: one antisymmetric 4x4 coefficient array F_{ab} per component.
template <typename Scalar = double>
class VectorTwoForm {
 public:
  VectorTwoForm() = default;

  /// Throws NotAntisymmetric unless every block satisfies F^T = -F exactly.
  explicit VectorTwoForm(std::vector<Matrix4<Scalar>> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& f : coeffs_)
      if (f.transpose() != -f)
        fail(ErrorCode::NotAntisymmetric, "two-form coefficients must be antisymmetric");
  }

  static VectorTwoForm zero(Eigen::Index rank) {
    return VectorTwoForm(std::vector<Matrix4<Scalar>>(static_cast<std::size_t>(rank),
                                                      Matrix4<Scalar>::Zero()));
  }

  /// value * dx^a ^ dx^b in component k.
  static VectorTwoForm basis(Eigen::Index rank, Eigen::Index k, int a, int b, Scalar value = 1) {
    VectorTwoForm out = zero(rank);
    out.coeffs_[static_cast<std::size_t>(k)](a, b) = value;
    out.coeffs_[static_cast<std::size_t>(k)](b, a) = -value;
    return out;
  }

  Eigen::Index rank() const { return static_cast<Eigen::Index>(coeffs_.size()); }
  const Matrix4<Scalar>& operator[](Eigen::Index k) const {
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const std::vector<Matrix4<Scalar>>& coeffs() const { return coeffs_; }

  /// Component-index action: result_i = sum_j m(i, j) F_j.
  template <typename Derived>
  VectorTwoForm mixed(const Eigen::MatrixBase<Derived>& m) const {
    if (m.cols() != rank())
      fail(ErrorCode::RankMismatch, "matrix columns must equal the form rank");
    std::vector<Matrix4<Scalar>> out(static_cast<std::size_t>(m.rows()), Matrix4<Scalar>::Zero());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < rank(); ++j)
        out[static_cast<std::size_t>(i)] += Scalar(m(i, j)) * (*this)[j];
    return VectorTwoForm(std::move(out));
  }

  VectorTwoForm head(Eigen::Index k) const {
    return VectorTwoForm({coeffs_.begin(), coeffs_.begin() + k});
  }
  VectorTwoForm tail(Eigen::Index k) const {
    return VectorTwoForm({coeffs_.end() - k, coeffs_.end()});
  }

  static VectorTwoForm concat(const VectorTwoForm& upper, const VectorTwoForm& lower) {
    std::vector<Matrix4<Scalar>> out = upper.coeffs_;
    out.insert(out.end(), lower.coeffs_.begin(), lower.coeffs_.end());
    return VectorTwoForm(std::move(out));
  }

  Scalar max_abs() const {
    Scalar m = 0;
    for (const auto& f : coeffs_) m = std::max(m, f.cwiseAbs().maxCoeff());
    return m;
  }

  friend VectorTwoForm operator+(const VectorTwoForm& a, const VectorTwoForm& b) {
    return combine(a, b, Scalar(1));
  }
  friend VectorTwoForm operator-(const VectorTwoForm& a, const VectorTwoForm& b) {
    return combine(a, b, Scalar(-1));
  }
  friend VectorTwoForm operator*(Scalar s, const VectorTwoForm& a) {
    std::vector<Matrix4<Scalar>> out = a.coeffs_;
    for (auto& f : out) f *= s;
    return VectorTwoForm(std::move(out));
  }

 private:
  static VectorTwoForm combine(const VectorTwoForm& a, const VectorTwoForm& b, Scalar sign) {
    if (a.rank() != b.rank()) fail(ErrorCode::RankMismatch, "two-form ranks differ");
    std::vector<Matrix4<Scalar>> out = a.coeffs_;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += sign * b.coeffs_[k];
    return VectorTwoForm(std::move(out));
  }

  std::vector<Matrix4<Scalar>> coeffs_;
};

/// Hodge star of a scalar two-form: (*F)_{ab} = 1/2 s sqrt|g| eps_{abcd} F^{cd}.
template <typename Scalar>
Matrix4<Scalar> hodge_star2(const LorentzPoint<Scalar>& p, const Matrix4<Scalar>& f) {
  const Matrix4<Scalar> raised = p.inverse_metric() * f * p.inverse_metric();
  const Scalar factor = Scalar(p.orientation()) * p.volume_factor();
  Matrix4<Scalar> out = Matrix4<Scalar>::Zero();
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      Scalar sum = 0;
      for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d) sum += Scalar(levi_civita(a, b, c, d)) * raised(c, d);
      out(a, b) = factor * sum;
      out(b, a) = -out(a, b);
    }
  }
  return out;
}

template <typename Scalar>
VectorTwoForm<Scalar> hodge_star2(const LorentzPoint<Scalar>& p, const VectorTwoForm<Scalar>& f) {
  std::vector<Matrix4<Scalar>> out;
  out.reserve(f.coeffs().size());
  for (const auto& block : f.coeffs()) out.push_back(hodge_star2(p, block));
  return VectorTwoForm<Scalar>(std::move(out));
}

/// (*_g (x) J) V. Squares to +1 on two-forms.
template <typename Scalar>
VectorTwoForm<Scalar> polarized_star(const LorentzPoint<Scalar>& p, const TamingMatrix<Scalar>& j,
                                     const VectorTwoForm<Scalar>& v) {
  if (v.rank() != j.dim()) fail(ErrorCode::RankMismatch, "form rank must equal 2n");
  return hodge_star2(p, v).mixed(j.matrix());
}

template <typename Scalar>
struct SelfDualSplit {
  VectorTwoForm<Scalar> plus;
  VectorTwoForm<Scalar> minus;
};

template <typename Scalar>
SelfDualSplit<Scalar> selfdual_project(const LorentzPoint<Scalar>& p,
                                       const TamingMatrix<Scalar>& j,
                                       const VectorTwoForm<Scalar>& v) {
  const VectorTwoForm<Scalar> sv = polarized_star(p, j, v);
  return {Scalar(0.5) * (v + sv), Scalar(0.5) * (v - sv)};
}

/// G_g(N, F) = -R F - I *_g F.
template <typename Scalar>
VectorTwoForm<Scalar> g_map(const LorentzPoint<Scalar>& p, const PeriodMatrix<Scalar>& period,
                            const VectorTwoForm<Scalar>& f) {
  if (f.rank() != period.size())
    fail(ErrorCode::DimensionMismatch, "form rank must equal the period matrix size");
  const DenseMatrix<Scalar> minus_r = -period.real();
  const DenseMatrix<Scalar> minus_i = -period.imag();
  return f.mixed(minus_r) + hodge_star2(p, f).mixed(minus_i);
}

template <typename Scalar>
struct SelfDualCheck {
  bool selfdual = false;
  /// max |*_g V + J V|
  Scalar residual = 0;
  /// max |star_{g,J} V - V|
  Scalar global_residual = 0;
  /// max |V_lower - G_g(N, V_upper)|, only meaningful when selfdual
  Scalar lower_residual = 0;
  /// The unique F with V = (F, G_g(N, F)) when selfdual.
  std::optional<VectorTwoForm<Scalar>> field_strength;
};

/// Tests *_g V = -Theta(N) V.
template <typename Scalar>
SelfDualCheck<Scalar> check_polarized_selfdual(const LorentzPoint<Scalar>& p,
                                               const PeriodMatrix<Scalar>& period,
                                               const VectorTwoForm<Scalar>& v,
                                               Scalar tol = Scalar(1e-9)) {
  const auto n = period.size();
  if (v.rank() != 2 * n) fail(ErrorCode::RankMismatch, "form rank must equal 2n");
  const TamingMatrix<Scalar> j = theta_forward(period);
  SelfDualCheck<Scalar> out;
  out.residual = (hodge_star2(p, v) + v.mixed(j.matrix())).max_abs();
  out.global_residual = (polarized_star(p, j, v) - v).max_abs();
  out.selfdual = out.residual <= tol;
  if (out.selfdual) {
    VectorTwoForm<Scalar> f = v.head(n);
    out.lower_residual = (v.tail(n) - g_map(p, period, f)).max_abs();
    out.field_strength = std::move(f);
  }
  return out;
}

/// gamma . V on the component index. Throws NotSymplectic.
template <typename Scalar, typename Derived>
VectorTwoForm<Scalar> duality_act(const Eigen::MatrixBase<Derived>& gamma,
                                  const VectorTwoForm<Scalar>& v, Scalar tol = Scalar(1e-10)) {
  if (gamma.rows() != v.rank() || !is_real_symplectic(gamma, tol))
    fail(ErrorCode::NotSymplectic, "duality transformation must be symplectic of size 2n");
  return v.mixed(gamma);
}

}  // namespace sympforge
