#pragma once

#include <Eigen/Dense>
#include <complex>

namespace torpedo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Construction self-checks use the tight tolerance, assertions the loose one.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kAssertTol = 1e-9;

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol = kAssertTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Matrix& u, double tol = kAssertTol) {
  return approx_equal(u * u.adjoint(), Matrix::Identity(u.rows(), u.cols()), tol);
}

inline bool is_hermitian(const Matrix& m, double tol = kAssertTol) {
  return approx_equal(m, m.adjoint(), tol);
}

// Equality up to a global phase.
inline bool proportional_up_to_phase(const Matrix& a, const Matrix& b,
                                     double tol = kAssertTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index i = 0, j = 0;
  b.cwiseAbs().maxCoeff(&i, &j);
  if (std::abs(b(i, j)) <= tol) return approx_equal(a, b, tol);
  Complex phase = a(i, j) / b(i, j);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return approx_equal(a, phase * b, tol);
}

inline Vector basis_vector(int d, int k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

}  // namespace torpedo
