#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qlm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// exp(-i t H) for Hermitian H, via eigendecomposition.
Matrix expm_hermitian(const Matrix& h, double t);

bool is_unitary_matrix(const Matrix& u, double tol = 1e-12);

bool is_hermitian_matrix(const Matrix& h, double tol = 1e-12);

// Frobenius distance between u and v after aligning the global phase of v
// to maximize overlap with u.
double phase_aligned_distance(const Matrix& u, const Matrix& v);

}  // namespace qlm
