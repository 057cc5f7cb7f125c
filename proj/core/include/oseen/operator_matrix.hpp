#pragma once

#include <complex>

#include <Eigen/Dense>

namespace oseen {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

enum class Basis { RawGrid, Orthonormalized };

/// Dense complex matrix acting on the interior unknowns of a grid.
///
/// `t` holds the log-variable node of each unknown. In the Orthonormalized
/// basis the relevant L2 norm is the plain Euclidean norm of the coefficient
/// vector, so singular values are operator norms.
struct OperatorMatrix {
  CMat entries;
  Basis basis = Basis::RawGrid;
  RVec t;
  double hermitian_norm = 0.0;
  double skew_norm = 0.0;

  Eigen::Index size() const { return entries.rows(); }
  CMat hermitian_part() const;
  CMat skew_part() const;
  /// Recomputes the Frobenius norms of the Hermitian and skew parts.
  void refresh_metadata();
};

OperatorMatrix make_operator(CMat entries, Basis basis, RVec t);

}  // namespace oseen
