#pragma once

// Information-retrieval task definitions (Torpedo, modified Torpedo, RACs),
// strategy representations and empirical-behaviour evaluation.
//
// Inputs are tuples over per-slot alphabets; the flat input index is
// row-major. Questions are indexed qi in [0, nq); for the Torpedo family
// qi < d is the slope-qi question and qi = d is the infinite-slope question.

#include <Eigen/Eigenvalues>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "torpedo/qudit_algebra.hpp"
#include "torpedo/wigner.hpp"

namespace torpedo {

struct RetrievalTask {
  std::string name;
  int d = 0;                    // output alphabet / message dimension
  int nq = 0;                   // number of questions
  std::vector<int> input_sizes; // per-slot alphabet sizes
  // win[input * nq + qi] is a bitmask over answers c in [0, d).
  std::vector<uint32_t> win;

  int num_inputs() const {
    int n = 1;
    for (int s : input_sizes) n *= s;
    return n;
  }
  int num_contexts() const { return num_inputs() * nq; }

  uint32_t winning_mask(int input, int qi) const { return win[input * nq + qi]; }
  bool wins(int input, int qi, int c) const { return winning_mask(input, qi) >> c & 1u; }

  std::vector<int> unpack_input(int input) const {
    std::vector<int> tuple(input_sizes.size());
    for (int s = (int)input_sizes.size() - 1; s >= 0; --s) {
      tuple[s] = input % input_sizes[s];
      input /= input_sizes[s];
    }
    return tuple;
  }
  int pack_input(const std::vector<int>& tuple) const {
    int input = 0;
    for (size_t s = 0; s < input_sizes.size(); ++s) input = input * input_sizes[s] + tuple[s];
    return input;
  }
};

// Forbidden answer of the standard Torpedo question qi at cell (x, z).
inline int torpedo_forbidden(int d, int qi, int x, int z) {
  return qi == q_infinity(d) ? x : mod((long long)qi * x - z, d);
}

inline RetrievalTask torpedo_task(int d) {
  if (!is_prime(d)) throw std::invalid_argument("torpedo_task: d must be prime");
  RetrievalTask t;
  t.name = "torpedo";
  t.d = d;
  t.nq = d + 1;
  t.input_sizes = {d, d};
  t.win.resize(t.num_contexts());
  const uint32_t all = (1u << d) - 1;
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z)
      for (int qi = 0; qi <= d; ++qi)
        t.win[(x * d + z) * t.nq + qi] = all & ~(1u << torpedo_forbidden(d, qi, x, z));
  return t;
}

// Modified game: a third input 0 <= l < (d-1)/2 restricts the infinite-slope
// winning set to {x+l+1, x-l-1}; all other questions are unchanged.
inline RetrievalTask modified_torpedo_task(int d) {
  if (!is_prime(d) || d < 5)
    throw std::invalid_argument("modified_torpedo_task: d must be an odd prime >= 5");
  RetrievalTask t;
  t.name = "modified_torpedo";
  t.d = d;
  t.nq = d + 1;
  const int nl = (d - 1) / 2;
  t.input_sizes = {d, d, nl};
  t.win.resize(t.num_contexts());
  const uint32_t all = (1u << d) - 1;
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z)
      for (int l = 0; l < nl; ++l) {
        const int input = (x * d + z) * nl + l;
        for (int qi = 0; qi < d; ++qi)
          t.win[input * t.nq + qi] = all & ~(1u << torpedo_forbidden(d, qi, x, z));
        t.win[input * t.nq + q_infinity(d)] =
            (1u << mod(x + l + 1, d)) | (1u << mod(x - l - 1, d));
      }
  return t;
}

// (n,1)_d random access code: question qi asks for input dit qi.
inline RetrievalTask qrac_task(int n, int d) {
  if (n < 2) throw std::invalid_argument("qrac_task: n must be >= 2");
  if (!is_prime(d)) throw std::invalid_argument("qrac_task: d must be prime");
  RetrievalTask t;
  t.name = "qrac";
  t.d = d;
  t.nq = n;
  t.input_sizes.assign(n, d);
  t.win.resize(t.num_contexts());
  for (int input = 0; input < t.num_inputs(); ++input) {
    const auto tuple = t.unpack_input(input);
    for (int qi = 0; qi < n; ++qi) t.win[input * n + qi] = 1u << tuple[qi];
  }
  return t;
}

// p(c | input, question) for one task instance.
struct EmpiricalBehaviour {
  int d = 0;
  int nq = 0;
  std::vector<int> input_sizes;
  std::vector<double> table;  // [input][qi][c] row-major
  bool quasi = false;

  int num_inputs() const {
    int n = 1;
    for (int s : input_sizes) n *= s;
    return n;
  }
  double& at(int input, int qi, int c) { return table[(input * nq + qi) * d + c]; }
  double at(int input, int qi, int c) const { return table[(input * nq + qi) * d + c]; }

  void validate() const {
    for (int i = 0; i < num_inputs(); ++i)
      for (int qi = 0; qi < nq; ++qi) {
        double s = 0;
        for (int c = 0; c < d; ++c) {
          if (!quasi && at(i, qi, c) < -kConstructionTol)
            throw std::runtime_error("EmpiricalBehaviour: negative probability");
          s += at(i, qi, c);
        }
        if (std::abs(s - 1.0) > kAssertTol)
          throw std::runtime_error("EmpiricalBehaviour: context not normalized");
      }
  }
};

inline EmpiricalBehaviour make_behaviour_shape(const RetrievalTask& task) {
  EmpiricalBehaviour e;
  e.d = task.d;
  e.nq = task.nq;
  e.input_sizes = task.input_sizes;
  e.table.assign((size_t)task.num_contexts() * task.d, 0.0);
  return e;
}

// Encoding p_E(j | input) and decoding p_D(c | j, q), both conditional
// distributions over Z_d.
struct ClassicalStrategy {
  int d = 0;
  std::vector<double> encode;  // [input][j]
  std::vector<double> decode;  // [j][qi][c]
  int nq = 0;

  double p_encode(int input, int j) const { return encode[input * d + j]; }
  double p_decode(int j, int qi, int c) const { return decode[(j * nq + qi) * d + c]; }
};

// States indexed by input, projective measurements indexed by question.
// hermitian_only marks post-quantum "states" (Hermitian, unit trace, not
// necessarily PSD).
struct QuantumStrategy {
  std::vector<Matrix> states;                 // one per input
  std::vector<std::vector<Matrix>> projectors;  // [qi][c]
  bool hermitian_only = false;
};

inline EmpiricalBehaviour behaviour_from_classical(const ClassicalStrategy& s,
                                                   const RetrievalTask& task) {
  if (s.d != task.d || s.nq != task.nq ||
      (int)s.encode.size() != task.num_inputs() * task.d)
    throw std::invalid_argument("behaviour_from_classical: dimension mismatch");
  EmpiricalBehaviour e = make_behaviour_shape(task);
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c = 0; c < task.d; ++c) {
        double p = 0;
        for (int j = 0; j < task.d; ++j) p += s.p_decode(j, qi, c) * s.p_encode(i, j);
        e.at(i, qi, c) = p;
      }
  e.validate();
  return e;
}

inline EmpiricalBehaviour behaviour_from_quantum(const QuantumStrategy& s,
                                                 const RetrievalTask& task) {
  if ((int)s.states.size() != task.num_inputs() || (int)s.projectors.size() != task.nq)
    throw std::invalid_argument("behaviour_from_quantum: dimension mismatch");
  for (const auto& family : s.projectors) {
    Matrix sum = Matrix::Zero(task.d, task.d);
    for (const auto& p : family) sum += p;
    if (!approx_equal(sum, Matrix::Identity(task.d, task.d), kAssertTol))
      throw std::invalid_argument("behaviour_from_quantum: measurement does not resolve identity");
  }
  EmpiricalBehaviour e = make_behaviour_shape(task);
  bool negative = false;
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c = 0; c < task.d; ++c) {
        const double p = (s.states[i] * s.projectors[qi][c]).trace().real();
        if (p < -kConstructionTol) negative = true;
        e.at(i, qi, c) = p;
      }
  e.quasi = negative;
  e.validate();
  return e;
}

// Winning probability averaged uniformly over inputs and questions.
inline double task_value(const RetrievalTask& task, const EmpiricalBehaviour& e) {
  if (e.d != task.d || e.nq != task.nq || e.input_sizes != task.input_sizes)
    throw std::invalid_argument("task_value: behaviour does not match task");
  double total = 0;
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c = 0; c < task.d; ++c)
        if (task.wins(i, qi, c)) total += e.at(i, qi, c);
  return total / task.num_contexts();
}

// Perfect strategy state |psi_{x,z,l}> = D_{x,z} (|l+1> - |-(l+1)>)/sqrt(2),
// a -1 eigenvector of A_{x,z}.
inline Vector perfect_message_state(int d, int x, int z, int l) {
  if (l < 0 || l >= (d - 1) / 2)
    throw std::invalid_argument("perfect_message_state: l out of range");
  Vector base = (basis_vector(d, l + 1) - basis_vector(d, mod(-(l + 1), d))) / std::sqrt(2.0);
  return displacement(d, x, z) * base;
}

// Perfect Torpedo strategy for odd prime d >= 3: message states from the -1
// eigenspace of the matching phase point operator, measured in the MUBs.
inline QuantumStrategy perfect_torpedo_strategy(int d, int l = 0) {
  if (d == 2 || !is_prime(d))
    throw std::invalid_argument("perfect_torpedo_strategy: d must be an odd prime");
  const MubSystem mub = mub_system(d);
  QuantumStrategy s;
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) {
      const Vector v = perfect_message_state(d, x, z, l);
      s.states.push_back(v * v.adjoint());
    }
  s.projectors.resize(d + 1);
  for (int qi = 0; qi <= d; ++qi)
    for (int c = 0; c < d; ++c) s.projectors[qi].push_back(mub.projector(qi, c));
  return s;
}

// Perfect strategy for the modified game: states indexed by (x, z, l).
inline QuantumStrategy perfect_modified_torpedo_strategy(int d) {
  const RetrievalTask task = modified_torpedo_task(d);
  const MubSystem mub = mub_system(d);
  const int nl = (d - 1) / 2;
  QuantumStrategy s;
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z)
      for (int l = 0; l < nl; ++l) {
        const Vector v = perfect_message_state(d, x, z, l);
        s.states.push_back(v * v.adjoint());
      }
  s.projectors.resize(task.nq);
  for (int qi = 0; qi <= d; ++qi)
    for (int c = 0; c < d; ++c) s.projectors[qi].push_back(mub.projector(qi, c));
  return s;
}

// Frozen question -> basis assignment for the qubit Torpedo strategy: basis
// index equals question index in MubSystem order (slope 0 -> X, slope 1 -> Y,
// infinity -> Z) with identity outcome relabelling. Derived once by
// exhaustive search over the 3! x 2^3 assignments (see the regression test);
// attains the optimal value (1 + 1/sqrt(3))/2.
inline constexpr int kQubitTorpedoBasis[3] = {0, 1, 2};
inline constexpr int kQubitTorpedoRelabel[3] = {0, 0, 0};  // c -> c xor relabel

inline Matrix qubit_optimal_state() {
  Matrix y(2, 2);
  y << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return 0.5 * (Matrix::Identity(2, 2) - (pauli_x(2) + y + pauli_z(2)) / std::sqrt(3.0));
}

inline QuantumStrategy qubit_torpedo_strategy_from_state(
    const std::function<Matrix(int, int)>& state) {
  const MubSystem mub = qubit_mub_system();
  QuantumStrategy s;
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z) s.states.push_back(state(x, z));
  s.projectors.resize(3);
  for (int qi = 0; qi < 3; ++qi)
    for (int c = 0; c < 2; ++c)
      s.projectors[qi].push_back(
          mub.projector(kQubitTorpedoBasis[qi], c ^ kQubitTorpedoRelabel[qi]));
  return s;
}

inline QuantumStrategy qubit_torpedo_strategy() {
  const Matrix rho00 = qubit_optimal_state();
  return qubit_torpedo_strategy_from_state([&](int x, int z) {
    const Matrix w = qubit_pauli_word(x, z);
    return Matrix(w * rho00 * w.adjoint());
  });
}

// Post-quantum qubit strategy: phase-point "states", same measurements.
// Wins the qubit Torpedo game with probability 1; the behaviour is quasi.
inline QuantumStrategy postquantum_qubit_torpedo_strategy() {
  QuantumStrategy s = qubit_torpedo_strategy_from_state(
      [](int x, int z) { return qubit_phase_point(x, z); });
  s.hermitian_only = true;
  return s;
}

// Average success of the (d+1,1)_d RAC of Casaccino et al. for arbitrary
// Hermitian encodings: states indexed by k in Z_d^{d+1}, question qi measured
// in MUB basis qi.
inline double casaccino_qrac_value(int d, const std::function<Matrix(const std::vector<int>&)>& state) {
  const MubSystem mub = mub_system(d);
  const int n = d + 1;
  long long total_inputs = 1;
  for (int i = 0; i < n; ++i) total_inputs *= d;
  double total = 0;
  std::vector<int> k(n, 0);
  for (long long idx = 0; idx < total_inputs; ++idx) {
    long long rem = idx;
    for (int s = n - 1; s >= 0; --s) {
      k[s] = (int)(rem % d);
      rem /= d;
    }
    Matrix proj_sum = Matrix::Zero(d, d);
    for (int qi = 0; qi < n; ++qi) proj_sum += mub.projector(qi, k[qi]);
    total += (state(k) * proj_sum).trace().real();
  }
  return total / ((double)n * (double)total_inputs);
}

// Optimal classical and quantum strategies for the (2,1)_2 RAC.
// Classical: forward the first bit, guess the second (value 3/4).
// Quantum: equatorial states measured in the X/Y bases with outcome label k
// for eigenvalue (-1)^k (value cos^2(pi/8)).
inline std::pair<ClassicalStrategy, QuantumStrategy> qrac21_strategies() {
  const RetrievalTask task = qrac_task(2, 2);
  ClassicalStrategy cs;
  cs.d = 2;
  cs.nq = 2;
  cs.encode.assign(8, 0.0);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2) cs.encode[(x1 * 2 + x2) * 2 + x1] = 1.0;
  cs.decode.assign(8, 0.0);
  for (int j = 0; j < 2; ++j)
    for (int qi = 0; qi < 2; ++qi) cs.decode[(j * 2 + qi) * 2 + j] = 1.0;

  QuantumStrategy qs;
  const MubSystem mub = qubit_mub_system();
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2) {
      Vector v(2);
      v << 1.0, Complex((x1 ? -1.0 : 1.0), (x2 ? -1.0 : 1.0)) / std::sqrt(2.0);
      v /= std::sqrt(2.0);
      qs.states.push_back(v * v.adjoint());
    }
  qs.projectors.resize(2);
  for (int qi = 0; qi < 2; ++qi)
    for (int c = 0; c < 2; ++c)
      qs.projectors[qi].push_back(mub.projector(qi, c));  // qi=0 -> X, qi=1 -> Y
  (void)task;
  return {cs, qs};
}

}  // namespace torpedo
