#pragma once

// Tamings of the standard symplectic form and period matrices N = R + iI.
//
// A taming J of omega (Gram matrix W) satisfies J^2 = -1, J^T W J = W and
// Q = J^T W symmetric positive-definite. Theta sends a period matrix to
//
//   J = [[ I^{-1} R,            I^{-1}   ],
//        [ -I - R I^{-1} R,    -R I^{-1} ]]
//
// and is a bijection onto tamings of omega_{2n}; its inverse reads the
// imaginary part off the upper-right block.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sympforge/error.hpp"

namespace sympforge {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// omega_{2n} = [[0, I_n], [-I_n, 0]].
template <typename Scalar = double>
DenseMatrix<Scalar> standard_symplectic(Eigen::Index n) {
  DenseMatrix<Scalar> omega = DenseMatrix<Scalar>::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -DenseMatrix<Scalar>::Identity(n, n);
  return omega;
}

template <typename Scalar = double>
class PeriodMatrix {
 public:
  PeriodMatrix(DenseMatrix<Scalar> real, DenseMatrix<Scalar> imag, Scalar tol = Scalar(1e-12))
      : real_(std::move(real)), imag_(std::move(imag)) {
    const auto n = real_.rows();
    if (real_.cols() != n || imag_.rows() != n || imag_.cols() != n || n == 0)
      fail(ErrorCode::DimensionMismatch, "period matrix blocks must be square and of equal size");
    if ((real_ - real_.transpose()).cwiseAbs().maxCoeff() > tol ||
        (imag_ - imag_.transpose()).cwiseAbs().maxCoeff() > tol)
      fail(ErrorCode::NotAPeriodMatrix, "real and imaginary parts must be symmetric");
    Eigen::LLT<DenseMatrix<Scalar>> llt(Scalar(0.5) * (imag_ + imag_.transpose()));
    if (llt.info() != Eigen::Success)
      fail(ErrorCode::SingularImaginaryPart, "imaginary part is not positive-definite");
  }

  const DenseMatrix<Scalar>& real() const { return real_; }
  const DenseMatrix<Scalar>& imag() const { return imag_; }
  Eigen::Index size() const { return real_.rows(); }

 private:
  DenseMatrix<Scalar> real_;
  DenseMatrix<Scalar> imag_;
};

struct TamingReport {
  bool squares_to_minus_one = false;
  bool compatible = false;
  bool positive = false;
  std::vector<std::string> failures;

  bool ok() const { return squares_to_minus_one && compatible && positive; }
};

/// Checks the three taming conditions against `gram` (omega_{2n} when empty).
template <typename Derived>
TamingReport is_taming(const Eigen::MatrixBase<Derived>& j,
                       const std::optional<DenseMatrix<typename Derived::Scalar>>& gram = std::nullopt,
                       typename Derived::Scalar tol = typename Derived::Scalar(1e-10)) {
  using Scalar = typename Derived::Scalar;
  TamingReport report;
  const auto dim = j.rows();
  if (dim != j.cols() || dim == 0 || dim % 2 != 0) {
    report.failures.push_back("shape: J must be square of even dimension");
    return report;
  }
  const DenseMatrix<Scalar> w = gram ? *gram : standard_symplectic<Scalar>(dim / 2);
  if (w.rows() != dim || w.cols() != dim) {
    report.failures.push_back("shape: Gram matrix dimension differs from J");
    return report;
  }
  const DenseMatrix<Scalar> jj = j.derived();
  const DenseMatrix<Scalar> identity = DenseMatrix<Scalar>::Identity(dim, dim);

  report.squares_to_minus_one = ((jj * jj + identity).cwiseAbs().maxCoeff() <= tol);
  if (!report.squares_to_minus_one) report.failures.push_back("J*J != -1");

  report.compatible = ((jj.transpose() * w * jj - w).cwiseAbs().maxCoeff() <= tol);
  if (!report.compatible) report.failures.push_back("J^T W J != W");

  const DenseMatrix<Scalar> q = jj.transpose() * w;
  const bool symmetric = (q - q.transpose()).cwiseAbs().maxCoeff() <= tol;
  Eigen::LLT<DenseMatrix<Scalar>> llt(Scalar(0.5) * (q + q.transpose()));
  report.positive = symmetric && llt.info() == Eigen::Success;
  if (!report.positive) report.failures.push_back("omega(J., .) is not symmetric positive-definite");
  return report;
}

template <typename Scalar = double>
class TamingMatrix {
 public:
  /// Throws NotATaming if the taming conditions fail against omega_{2n}.
  explicit TamingMatrix(DenseMatrix<Scalar> j, Scalar tol = Scalar(1e-10)) : j_(std::move(j)) {
    const TamingReport report = is_taming(j_, std::nullopt, tol);
    if (!report.ok()) {
      std::string msg = "not a taming:";
      for (const auto& f : report.failures) msg += " [" + f + "]";
      fail(ErrorCode::NotATaming, msg);
    }
  }

  static TamingMatrix standard(Eigen::Index n) {
    return TamingMatrix(standard_symplectic<Scalar>(n));
  }

  const DenseMatrix<Scalar>& matrix() const { return j_; }
  Eigen::Index dim() const { return j_.rows(); }
  Eigen::Index half_dim() const { return j_.rows() / 2; }

 private:
  DenseMatrix<Scalar> j_;
};

/// 1e-10 scaled by |J|^2, the size of the products checked by is_taming.
template <typename Scalar>
Scalar relative_tolerance(const DenseMatrix<Scalar>& j, Scalar tol = Scalar(1e-10)) {
  const Scalar scale = j.cwiseAbs().maxCoeff();
  return tol * std::max(Scalar(1), scale * scale);
}

template <typename Scalar>
TamingMatrix<Scalar> theta_forward(const PeriodMatrix<Scalar>& period) {
  const auto n = period.size();
  const auto& r = period.real();
  const auto& im = period.imag();
  Eigen::FullPivLU<DenseMatrix<Scalar>> lu(im);
  if (!lu.isInvertible())
    fail(ErrorCode::SingularImaginaryPart, "imaginary part of the period matrix is singular");
  const DenseMatrix<Scalar> im_inv = lu.inverse();

  DenseMatrix<Scalar> j(2 * n, 2 * n);
  j.topLeftCorner(n, n) = im_inv * r;
  j.topRightCorner(n, n) = im_inv;
  j.bottomLeftCorner(n, n) = -im - r * im_inv * r;
  j.bottomRightCorner(n, n) = -r * im_inv;
  const Scalar tol = relative_tolerance(j);
  return TamingMatrix<Scalar>(std::move(j), tol);
}

template <typename Scalar>
PeriodMatrix<Scalar> theta_inverse(const TamingMatrix<Scalar>& taming) {
  const auto n = taming.half_dim();
  const auto& j = taming.matrix();
  Eigen::FullPivLU<DenseMatrix<Scalar>> lu(j.topRightCorner(n, n));
  if (!lu.isInvertible())
    fail(ErrorCode::SingularBlock, "upper-right block of J is singular");
  DenseMatrix<Scalar> im = lu.inverse();
  DenseMatrix<Scalar> r = im * j.topLeftCorner(n, n);
  // Symmetric by construction up to rounding; project to kill the noise.
  im = Scalar(0.5) * (im + im.transpose()).eval();
  r = Scalar(0.5) * (r + r.transpose()).eval();
  return PeriodMatrix<Scalar>(std::move(r), std::move(im), Scalar(1e-8));
}

/// gamma^T omega_{2n} gamma == omega_{2n} within tol.
template <typename Derived>
bool is_real_symplectic(const Eigen::MatrixBase<Derived>& gamma,
                        typename Derived::Scalar tol = typename Derived::Scalar(1e-10)) {
  using Scalar = typename Derived::Scalar;
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0) return false;
  const DenseMatrix<Scalar> omega = standard_symplectic<Scalar>(gamma.rows() / 2);
  return (gamma.transpose() * omega * gamma - omega).cwiseAbs().maxCoeff() <= tol;
}

/// gamma J gamma^{-1}. Throws NotSymplectic.
template <typename Scalar, typename Derived>
TamingMatrix<Scalar> taming_conjugate(const TamingMatrix<Scalar>& taming,
                                      const Eigen::MatrixBase<Derived>& gamma,
                                      Scalar tol = Scalar(1e-10)) {
  if (gamma.rows() != taming.dim() || !is_real_symplectic(gamma, tol))
    fail(ErrorCode::NotSymplectic, "duality transformation must be symplectic");
  const DenseMatrix<Scalar> g = gamma.derived().template cast<Scalar>();
  const DenseMatrix<Scalar> g_inv = g.inverse();
  DenseMatrix<Scalar> conjugated = g * taming.matrix() * g_inv;
  const Scalar t = tol * std::max(Scalar(1), std::pow(g.cwiseAbs().maxCoeff(), Scalar(2)));
  return TamingMatrix<Scalar>(conjugated, std::max(t, relative_tolerance(conjugated)));
}

/// Period matrix theta/2pi + i 4pi/g^2 of abelian electrodynamics at coupling g^2.
template <typename Scalar = double>
PeriodMatrix<Scalar> electrodynamics_period_matrix(Scalar theta, Scalar g_sq) {
  if (!(g_sq > 0)) fail(ErrorCode::InvalidCoupling, "g^2 must be positive");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  DenseMatrix<Scalar> r(1, 1), im(1, 1);
  r(0, 0) = theta / (2 * pi);
  im(0, 0) = 4 * pi / g_sq;
  return PeriodMatrix<Scalar>(std::move(r), std::move(im));
}

template <typename Scalar = double>
TamingMatrix<Scalar> electrodynamics_taming(Scalar theta, Scalar g_sq) {
  return theta_forward(electrodynamics_period_matrix(theta, g_sq));
}

}  // namespace sympforge
