#pragma once

// Qudit operator algebra for prime dimension d: generalized Pauli operators,
// Weyl-Heisenberg displacements, symplectic Clifford unitaries and the
// complete set of d+1 mutually unbiased bases.
//
// Question/basis indexing used throughout the library: an integer qi in
// [0, d] where qi < d denotes the slope-qi direction (eigenbasis of the
// displacement D_{1,qi}) and qi == d denotes the "infinite slope" direction
// (the computational basis, eigenbasis of Z = D_{0,1}).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "torpedo/dits.hpp"
#include "torpedo/linalg.hpp"

namespace torpedo {

inline Complex root_of_unity(int d, long long power) {
  if (d < 2) throw std::invalid_argument("root_of_unity: d must be >= 2");
  return std::polar(1.0, 2.0 * std::numbers::pi * mod(power, d) / d);
}

// X|k> = |k+1 mod d>
inline Matrix pauli_x(int d) {
  if (d < 2) throw std::invalid_argument("pauli_x: d must be >= 2");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(mod(k + 1, d), k) = 1.0;
  return m;
}

// Z|k> = w^k |k>
inline Matrix pauli_z(int d) {
  if (d < 2) throw std::invalid_argument("pauli_z: d must be >= 2");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = root_of_unity(d, k);
  return m;
}

// D_{x,z} = w^{2^{-1} x z} X^x Z^z, for odd prime d.
// Entrywise: D|k> = w^{2^{-1} x z + k z} |k+x>.
inline Matrix displacement(int d, int x, int z) {
  if (d == 2) throw std::invalid_argument("displacement: use qubit_pauli_word for d=2");
  if (!is_prime(d)) throw std::invalid_argument("displacement: d must be an odd prime");
  const int inv2 = mod_inverse(2, d);
  x = mod(x, d);
  z = mod(z, d);
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    m(mod(k + x, d), k) = root_of_unity(d, (long long)inv2 * x * z + (long long)k * z);
  return m;
}

// Plain Pauli word X^x Z^z for qubits (no half-integer phase).
inline Matrix qubit_pauli_word(int x, int z) {
  Matrix m = Matrix::Identity(2, 2);
  if (z) m = pauli_z(2);
  if (x) m = pauli_x(2) * m;
  return m;
}

// 2x2 matrix over Z_d with unit determinant.
struct SymplecticMatrix {
  Dit alpha, beta, gamma, epsilon;

  SymplecticMatrix(int a, int b, int g, int e, int d)
      : alpha(a, d), beta(b, d), gamma(g, d), epsilon(e, d) {
    if (mod((long long)alpha.value * epsilon.value - (long long)beta.value * gamma.value,
            d) != 1)
      throw std::invalid_argument("SymplecticMatrix: det F != 1 mod d");
  }

  int d() const { return alpha.modulus; }

  // (x', z') = F (x, z)
  std::pair<int, int> apply(int x, int z) const {
    const int m = d();
    return {mod((long long)alpha.value * x + beta.value * z, m),
            mod((long long)gamma.value * x + epsilon.value * z, m)};
  }

  SymplecticMatrix inverse() const {
    const int m = d();
    return {epsilon.value, mod(-beta.value, m), mod(-gamma.value, m), alpha.value, m};
  }
};

// Metaplectic representation U_F with U_F D_{x,z} U_F^dag = D_{F(x,z)} up to
// phase, for odd prime d.
inline Matrix symplectic_unitary(const SymplecticMatrix& f) {
  const int d = f.d();
  if (d == 2 || !is_prime(d))
    throw std::invalid_argument("symplectic_unitary: d must be an odd prime");
  const int inv2 = mod_inverse(2, d);
  Matrix u = Matrix::Zero(d, d);
  if (f.beta.value != 0) {
    const int binv = mod_inverse(f.beta.value, d);
    const double scale = 1.0 / std::sqrt((double)d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        long long quad = (long long)f.alpha.value * k * k - 2LL * j * k +
                         (long long)f.epsilon.value * j * j;
        u(j, k) = scale * root_of_unity(d, (long long)inv2 * binv % d * mod(quad, d));
      }
  } else {
    // det F = 1 forces alpha != 0 here.
    for (int k = 0; k < d; ++k) {
      long long quad = (long long)f.alpha.value * f.gamma.value * k * k;
      u(mod((long long)f.alpha.value * k, d), k) =
          root_of_unity(d, (long long)inv2 * mod(quad, d));
    }
  }
  return u;
}

inline int q_infinity(int d) { return d; }

// A complete set of d+1 mutually unbiased bases for prime d.
//
// bases[qi] holds the basis unitary B_qi whose k-th column is the outcome-k
// basis vector; projectors are Pi_qi^k = B_qi |k><k| B_qi^dag. For odd prime
// d the slope bases are B_q = U_{F_q}^dag with F_q = [[q, -1], [1, 0]], which
// fixes outcome labels so that B_q^dag D_{1,q} B_q = Z exactly (outcome k
// carries eigenvalue w^k) and Tr(A_{x,z} Pi_q^k) = delta_{k, qx-z}.
struct MubSystem {
  int d;
  std::vector<Matrix> bases;  // indexed by qi in [0, d]; bases[d] = identity

  Matrix projector(int qi, int k) const {
    const Vector v = bases.at(qi).col(k);
    return v * v.adjoint();
  }

  int num_questions() const { return d + 1; }
};

inline MubSystem mub_system(int d) {
  if (d == 2 || !is_prime(d))
    throw std::invalid_argument("mub_system: d must be an odd prime (use qubit_mub_system)");
  MubSystem sys;
  sys.d = d;
  sys.bases.reserve(d + 1);
  for (int q = 0; q < d; ++q) {
    SymplecticMatrix f(q, d - 1, 1, 0, d);
    sys.bases.push_back(symplectic_unitary(f).adjoint());
  }
  sys.bases.push_back(Matrix::Identity(d, d));
  return sys;
}

// Qubit MUB triple in question order: qi=0 -> X eigenbasis (D_{1,0} = X),
// qi=1 -> Y eigenbasis (XZ is proportional to Y), qi=2 -> computational (Z).
// Outcome k labels the eigenvalue (-1)^k of the defining Pauli.
inline MubSystem qubit_mub_system() {
  MubSystem sys;
  sys.d = 2;
  const double s = 1.0 / std::sqrt(2.0);
  Matrix bx(2, 2), by(2, 2);
  bx << s, s, s, -s;                                   // |+>, |->
  by << s, s, Complex(0, s), Complex(0, -s);           // |+i>, |-i>
  sys.bases = {bx, by, Matrix::Identity(2, 2)};
  return sys;
}

}  // namespace torpedo
