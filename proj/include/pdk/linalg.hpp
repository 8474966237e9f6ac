#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "pdk/errors.hpp"

namespace pdk {

template <typename Scalar>
struct JacobiResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;  // ascending
  int sweeps = 0;
};

/// Eigenvalues of a symmetric matrix by cyclic (row-order) Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm is at most
/// rel_tol * ||A||_F. Only the upper triangle's symmetry is assumed; the
/// input is not checked for it.
template <typename Derived>
JacobiResult<typename Derived::Scalar> jacobi_eigenvalues(const Eigen::MatrixBase<Derived>& input,
                                                          typename Derived::Scalar rel_tol = 1e-14,
                                                          int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  if (input.rows() != input.cols()) throw ArgumentError("eigenvalues need a square matrix");
  if (!input.allFinite()) throw NumericError("matrix has non-finite entries");

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = input;
  const Eigen::Index n = a.rows();
  const Scalar target = rel_tol * a.norm();
  JacobiResult<Scalar> result;

  auto off_norm = [&a, n]() {
    Scalar sum(0);
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) sum += 2 * a(p, q) * a(p, q);
    return sqrt(sum);
  };

  while (off_norm() > target) {
    if (result.sweeps == max_sweeps) throw NumericError("Jacobi iteration did not converge");
    ++result.sweeps;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        // t = tan(phi) is the smaller root of t^2 + 2 theta t - 1 = 0.
        const Scalar theta = (a(q, q) - a(p, p)) / (2 * apq);
        Scalar t = Scalar(1) / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        const Scalar c = Scalar(1) / sqrt(t * t + 1);
        const Scalar s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
      }
    }
  }
  result.eigenvalues = a.diagonal();
  std::sort(result.eigenvalues.data(), result.eigenvalues.data() + n);
  return result;
}

/// P A P with P = I - (1/n) 1 1^T, formed without building P.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> double_centered(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto n = static_cast<Scalar>(a.rows());
  const auto row_means = (a.rowwise().sum() / n).eval();
  const auto col_means = (a.colwise().sum() / n).eval();
  const Scalar grand = a.sum() / (n * n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> b = a;
  b.colwise() -= row_means;
  b.rowwise() -= col_means;
  b.array() += grand;
  // Restore exact symmetry lost to the order of the two subtractions.
  return (b + b.transpose()) / Scalar(2);
}

}  // namespace pdk
