#pragma once

// Transformational picture of the prepare-and-measure protocol: a single
// d-level system initialized to a fixed state, acted on by gates chosen
// from the inputs (x then z) and the question, then read out. Classical
// gates are column-stochastic matrices on the probability simplex; quantum
// gates are unitaries on C^d.

#include <functional>
#include <stdexcept>
#include <vector>

#include "torpedo/qudit_algebra.hpp"
#include "torpedo/tasks.hpp"

namespace torpedo {

using StochasticMatrix = Eigen::MatrixXd;

inline bool is_column_stochastic(const StochasticMatrix& m, double tol = kAssertTol) {
  if (m.rows() != m.cols()) return false;
  for (int c = 0; c < m.cols(); ++c) {
    double sum = 0;
    for (int r = 0; r < m.rows(); ++r) {
      if (m(r, c) < -tol) return false;
      sum += m(r, c);
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

// Column-stochastic permutation matrix of the shift j -> j + a (mod d).
inline StochasticMatrix shift_gate(int d, int a) {
  StochasticMatrix m = StochasticMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m(mod(j + a, d), j) = 1.0;
  return m;
}

inline StochasticMatrix gate_from_function(int d, const std::function<int(int)>& f) {
  StochasticMatrix m = StochasticMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m(mod(f(j), d), j) = 1.0;
  return m;
}

struct TransformationStrategy {
  int d = 0;
  std::vector<StochasticMatrix> gates_x;  // one per first input slot value
  std::vector<StochasticMatrix> gates_z;  // one per second input slot value
  std::vector<StochasticMatrix> gates_q;  // one per question

  void validate() const {
    for (const auto* family : {&gates_x, &gates_z, &gates_q})
      for (const auto& g : *family)
        if (g.rows() != d || !is_column_stochastic(g))
          throw std::invalid_argument("TransformationStrategy: gate is not column-stochastic");
  }
};

inline EmpiricalBehaviour behaviour_from_transformational(const TransformationStrategy& s,
                                                          const RetrievalTask& task) {
  if (s.d != task.d || task.input_sizes.size() != 2 ||
      (int)s.gates_x.size() != task.input_sizes[0] ||
      (int)s.gates_z.size() != task.input_sizes[1] || (int)s.gates_q.size() != task.nq)
    throw std::invalid_argument("behaviour_from_transformational: shape mismatch");
  s.validate();
  Eigen::VectorXd f0 = Eigen::VectorXd::Zero(task.d);
  f0(0) = 1.0;
  EmpiricalBehaviour e = make_behaviour_shape(task);
  for (int x = 0; x < task.input_sizes[0]; ++x)
    for (int z = 0; z < task.input_sizes[1]; ++z) {
      const int input = task.pack_input({x, z});
      const Eigen::VectorXd mid = s.gates_z[z] * (s.gates_x[x] * f0);
      for (int qi = 0; qi < task.nq; ++qi) {
        const Eigen::VectorXd out = s.gates_q[qi] * mid;
        for (int c = 0; c < task.d; ++c) e.at(input, qi, c) = out(c);
      }
    }
  return e;
}

// Rewrites any classical encode/decode pair as gates: the x gate resets the
// register to x, the z gate then samples the message p_E(. | x, z), and the
// question gate samples the answer p_D(. | j, q). Requires both input slots
// to range over Z_d so the register can hold x.
inline TransformationStrategy pam_to_transformational(const ClassicalStrategy& s,
                                                      const RetrievalTask& task) {
  if (task.input_sizes != std::vector<int>{task.d, task.d})
    throw std::invalid_argument("pam_to_transformational: inputs must both range over Z_d");
  if (s.d != task.d || s.nq != task.nq)
    throw std::invalid_argument("pam_to_transformational: strategy does not match task");
  TransformationStrategy t;
  t.d = task.d;
  for (int x = 0; x < task.d; ++x) {
    StochasticMatrix g = StochasticMatrix::Zero(task.d, task.d);
    g.row(x).setOnes();  // reset to |x>
    t.gates_x.push_back(g);
  }
  for (int z = 0; z < task.d; ++z) {
    StochasticMatrix g(task.d, task.d);
    for (int x = 0; x < task.d; ++x)
      for (int j = 0; j < task.d; ++j) g(j, x) = s.p_encode(task.pack_input({x, z}), j);
    t.gates_z.push_back(g);
  }
  for (int qi = 0; qi < task.nq; ++qi) {
    StochasticMatrix g(task.d, task.d);
    for (int j = 0; j < task.d; ++j)
      for (int c = 0; c < task.d; ++c) g(c, j) = s.p_decode(j, qi, c);
    t.gates_q.push_back(g);
  }
  return t;
}

struct CircuitStrategy {
  Vector psi0;
  std::vector<Matrix> gates_x;
  std::vector<Matrix> gates_z;
  std::vector<Matrix> gates_q;
};

inline EmpiricalBehaviour behaviour_from_circuit(const CircuitStrategy& s,
                                                 const RetrievalTask& task) {
  if (task.input_sizes.size() != 2 || (int)s.gates_x.size() != task.input_sizes[0] ||
      (int)s.gates_z.size() != task.input_sizes[1] || (int)s.gates_q.size() != task.nq)
    throw std::invalid_argument("behaviour_from_circuit: shape mismatch");
  for (const auto* family : {&s.gates_x, &s.gates_z, &s.gates_q})
    for (const auto& g : *family)
      if (!is_unitary(g)) throw std::invalid_argument("behaviour_from_circuit: non-unitary gate");
  EmpiricalBehaviour e = make_behaviour_shape(task);
  for (int x = 0; x < task.input_sizes[0]; ++x)
    for (int z = 0; z < task.input_sizes[1]; ++z) {
      const int input = task.pack_input({x, z});
      const Vector mid = s.gates_z[z] * (s.gates_x[x] * s.psi0);
      for (int qi = 0; qi < task.nq; ++qi) {
        const Vector out = s.gates_q[qi] * mid;
        for (int c = 0; c < task.d; ++c) e.at(input, qi, c) = std::norm(out(c));
      }
    }
  return e;
}

namespace detail {

inline Vector dominant_unit_eigenvector(const Matrix& rho, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const int top = (int)rho.rows() - 1;
  if (std::abs(es.eigenvalues()(top) - 1.0) > tol)
    throw std::invalid_argument("pam_to_circuit: state is not pure");
  return es.eigenvectors().col(top);
}

}  // namespace detail

// Rewrites a pure-state Pauli-orbit strategy as a circuit: |psi_{x,z}> must
// equal Z^z X^x |psi_{0,0}> up to phase, and each measurement must be a
// rank-one basis. The reconstruction is checked against the original
// behaviour and rejected on mismatch.
inline CircuitStrategy pam_to_circuit(const QuantumStrategy& s, const RetrievalTask& task) {
  if (s.hermitian_only)
    throw std::invalid_argument("pam_to_circuit: non-positive encodings have no circuit form");
  if (task.input_sizes != std::vector<int>{task.d, task.d})
    throw std::invalid_argument("pam_to_circuit: inputs must both range over Z_d");
  const int d = task.d;
  CircuitStrategy c;
  c.psi0 = detail::dominant_unit_eigenvector(s.states[task.pack_input({0, 0})], kAssertTol);
  const Matrix X = pauli_x(d), Z = pauli_z(d);
  Matrix px = Matrix::Identity(d, d), pz = Matrix::Identity(d, d);
  for (int x = 0; x < d; ++x, px = Matrix(X * px)) c.gates_x.push_back(px);
  for (int z = 0; z < d; ++z, pz = Matrix(Z * pz)) c.gates_z.push_back(pz);
  for (int qi = 0; qi < task.nq; ++qi) {
    Matrix g(d, d);
    for (int k = 0; k < d; ++k)
      g.row(k) = detail::dominant_unit_eigenvector(s.projectors[qi][k], kAssertTol).adjoint();
    if (!is_unitary(g))
      throw std::invalid_argument("pam_to_circuit: measurement is not a rank-one basis");
    c.gates_q.push_back(g);
  }
  const EmpiricalBehaviour rebuilt = behaviour_from_circuit(c, task);
  const EmpiricalBehaviour original = behaviour_from_quantum(s, task);
  for (size_t i = 0; i < rebuilt.table.size(); ++i)
    if (std::abs(rebuilt.table[i] - original.table[i]) > kAssertTol)
      throw std::invalid_argument("pam_to_circuit: states are not a Pauli orbit of psi0");
  return c;
}

// The reversible-gate d=3 protocol: shift gates only, register starts at 0.
// Achieves 33 of the 36 winning constraints (value 11/12).
inline TransformationStrategy reversible_gate_strategy_d3() {
  TransformationStrategy t;
  t.d = 3;
  const int tx[3] = {0, 0, 1};
  const int tz[3] = {0, 2, 1};
  const int tq[4] = {1, 2, 1, 0};  // slopes 0,1,2 then infinity
  for (int x = 0; x < 3; ++x) t.gates_x.push_back(shift_gate(3, tx[x]));
  for (int z = 0; z < 3; ++z) t.gates_z.push_back(shift_gate(3, tz[z]));
  for (int qi = 0; qi < 4; ++qi) t.gates_q.push_back(shift_gate(3, tq[qi]));
  return t;
}

struct TransformationalBound {
  Rational value{0};
  TransformationStrategy best;
};

// Exhausts all deterministic gate assignments (every gate an arbitrary
// function Z_d -> Z_d, or a permutation when reversible_only is set) and
// returns the best achievable value. Only tractable for d = 2, where the
// search space is 4^7 assignments.
inline TransformationalBound brute_force_transformational_bound(const RetrievalTask& task,
                                                                bool reversible_only = false) {
  if (task.input_sizes.size() != 2)
    throw std::invalid_argument("brute_force_transformational_bound: need two input slots");
  const int d = task.d;
  const int n_gates = task.input_sizes[0] + task.input_sizes[1] + task.nq;
  const long long n_fn = (long long)std::llround(std::pow((double)d, d));
  if (std::pow((double)n_fn, n_gates) > 2e7)
    throw std::invalid_argument("brute_force_transformational_bound: search space too large");

  std::vector<StochasticMatrix> atoms;
  for (long long code = 0; code < n_fn; ++code) {
    long long rem = code;
    std::vector<int> f(d);
    std::vector<bool> hit(d, false);
    for (int j = 0; j < d; ++j) {
      f[j] = (int)(rem % d);
      hit[f[j]] = true;
      rem /= d;
    }
    if (reversible_only &&
        !std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }))
      continue;
    atoms.push_back(gate_from_function(d, [&](int j) { return f[j]; }));
  }

  TransformationalBound bound;
  bound.value = Rational(-1);
  std::vector<size_t> pick(n_gates, 0);
  const int nc = task.num_contexts();
  while (true) {
    TransformationStrategy t;
    t.d = d;
    int g = 0;
    for (int x = 0; x < task.input_sizes[0]; ++x) t.gates_x.push_back(atoms[pick[g++]]);
    for (int z = 0; z < task.input_sizes[1]; ++z) t.gates_z.push_back(atoms[pick[g++]]);
    for (int qi = 0; qi < task.nq; ++qi) t.gates_q.push_back(atoms[pick[g++]]);
    const EmpiricalBehaviour e = behaviour_from_transformational(t, task);
    int wins = 0;
    for (int i = 0; i < task.num_inputs(); ++i)
      for (int qi = 0; qi < task.nq; ++qi)
        for (int c = 0; c < d; ++c)
          if (task.wins(i, qi, c) && e.at(i, qi, c) > 0.5) ++wins;
    const Rational value = make_rational(wins, nc);
    if (value > bound.value) {
      bound.value = value;
      bound.best = t;
    }
    int pos = n_gates - 1;
    while (pos >= 0 && ++pick[pos] == atoms.size()) pick[pos--] = 0;
    if (pos < 0) break;
  }
  return bound;
}

}  // namespace torpedo
