#pragma once

// Gross/Wootters discrete Wigner function for odd prime d: phase-point
// operators, the quasi-probability grid of a state, negativity, eigenspace
// extraction and line marginals.
//
// Grid convention: row index = x, column index = z. Line labels: the line of
// slope qi through constant c is {(x,z) : qi*x - z = c} for qi < d and
// {(x,z) : x = c} for qi = d (infinite slope). Outcome label k of MUB basis
// qi corresponds to the line with c = k; see MubSystem.

#include <Eigen/Eigenvalues>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "torpedo/qudit_algebra.hpp"

namespace torpedo {

struct PhasePointOperator {
  int d;
  int x, z;
  Matrix matrix;
};

// A_{0,0} = sum_j |-j><j|
inline Matrix phase_point_origin(int d) {
  Matrix a = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) a(mod(-j, d), j) = 1.0;
  return a;
}

// Closed form (A_{x,z})_{j,k} = delta_{2x, j+k} w^{z(j-k)}.
inline Matrix phase_point_closed_form(int d, int x, int z) {
  Matrix a = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      if (mod(2 * x - j - k, d) == 0) a(j, k) = root_of_unity(d, (long long)z * (j - k));
  return a;
}

// A_{x,z} = D_{x,z} A_{0,0} D_{x,z}^dag, cross-checked against the closed form.
inline PhasePointOperator phase_point_operator(int d, int x, int z) {
  if (d == 2) throw std::invalid_argument("phase_point_operator: use qubit_phase_point for d=2");
  if (!is_prime(d)) throw std::invalid_argument("phase_point_operator: d must be an odd prime");
  x = mod(x, d);
  z = mod(z, d);
  const Matrix disp = displacement(d, x, z);
  Matrix a = disp * phase_point_origin(d) * disp.adjoint();
  if (!approx_equal(a, phase_point_closed_form(d, x, z), kConstructionTol))
    throw std::runtime_error("phase_point_operator: construction mismatch");
  return {d, x, z, std::move(a)};
}

// Qubit analogue used by the post-quantum strategy:
// (X^x Z^z) (I - X - Y - Z)/2 (X^x Z^z)^dag. Hermitian, unit trace, not PSD.
inline Matrix qubit_phase_point(int x, int z) {
  Matrix y(2, 2);
  y << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  Matrix a0 = 0.5 * (Matrix::Identity(2, 2) - pauli_x(2) - y - pauli_z(2));
  const Matrix w = qubit_pauli_word(mod(x, 2), mod(z, 2));
  return w * a0 * w.adjoint();
}

struct WignerGrid {
  int d;
  Eigen::MatrixXd values;  // row = x, col = z

  double sum() const { return values.sum(); }
};

// W_{x,z} = (1/d) Tr(Q A_{x,z}) for Hermitian unit-trace Q.
inline WignerGrid wigner_function(const Matrix& q, int d) {
  if (q.rows() != d || q.cols() != d)
    throw std::invalid_argument("wigner_function: dimension mismatch");
  if (!is_hermitian(q, kAssertTol))
    throw std::invalid_argument("wigner_function: input not Hermitian");
  if (std::abs(q.trace().real() - 1.0) > kAssertTol || std::abs(q.trace().imag()) > kAssertTol)
    throw std::invalid_argument("wigner_function: input trace != 1");
  WignerGrid grid{d, Eigen::MatrixXd::Zero(d, d)};
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) {
      const Complex w = (q * phase_point_operator(d, x, z).matrix).trace() / (double)d;
      if (std::abs(w.imag()) > kConstructionTol)
        throw std::runtime_error("wigner_function: non-real quasi-probability");
      grid.values(x, z) = w.real();
    }
  return grid;
}

// sum |W_{x,z}|; equals 1 exactly when the grid is a probability distribution.
inline double negativity(const WignerGrid& w) { return w.values.cwiseAbs().sum(); }

// Orthonormal basis of the -1 eigenspace of a phase point operator,
// (d-1)/2 vectors, residual-checked.
inline std::vector<Vector> minus_eigenspace(const PhasePointOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix);
  std::vector<Vector> result;
  for (int i = 0; i < a.d; ++i) {
    if (solver.eigenvalues()(i) < 0) {
      Vector v = solver.eigenvectors().col(i);
      if ((a.matrix * v + v).norm() > kAssertTol)
        throw std::runtime_error("minus_eigenspace: eigenvector residual too large");
      result.push_back(std::move(v));
    }
  }
  if ((int)result.size() != (a.d - 1) / 2)
    throw std::runtime_error("minus_eigenspace: unexpected eigenspace dimension");
  return result;
}

// Sum of the grid along the line with slope qi (qi = d for infinite slope)
// and constant c. Equals the Born probability of outcome c in MUB basis qi.
inline double line_marginal(const WignerGrid& w, int qi, int c) {
  const int d = w.d;
  c = mod(c, d);
  double s = 0.0;
  if (qi == q_infinity(d)) {
    for (int z = 0; z < d; ++z) s += w.values(c, z);
  } else {
    for (int x = 0; x < d; ++x) s += w.values(x, mod((long long)qi * x - c, d));
  }
  return s;
}

// Largest deviation of Tr(A_{x,z} Pi_q^k) from delta_{k, line(q,x,z)} over
// all phase points, questions and outcomes: the identity tying grid lines to
// MUB outcomes. Should vanish to machine precision for every odd prime d.
inline double line_projector_identity_error(int d) {
  const MubSystem mub = mub_system(d);
  double worst = 0.0;
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) {
      const Matrix a = phase_point_operator(d, x, z).matrix;
      for (int qi = 0; qi <= d; ++qi) {
        const int line = qi == q_infinity(d) ? x : mod((long long)qi * x - z, d);
        for (int k = 0; k < d; ++k) {
          const Complex t = (a * mub.projector(qi, k)).trace();
          worst = std::max(worst, std::abs(t - Complex(k == line ? 1.0 : 0.0)));
        }
      }
    }
  return worst;
}

inline std::string wigner_to_csv(const WignerGrid& w) {
  std::ostringstream os;
  os.precision(17);
  for (int x = 0; x < w.d; ++x) {
    for (int z = 0; z < w.d; ++z) os << (z ? "," : "") << w.values(x, z);
    os << "\n";
  }
  return os.str();
}

}  // namespace torpedo
