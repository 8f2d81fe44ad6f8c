#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torpedo/classical_search.hpp"
#include "torpedo/transformational.hpp"

using namespace torpedo;

TEST_CASE("stochastic gate helpers") {
  CHECK(is_column_stochastic(shift_gate(3, 1)));
  CHECK(is_column_stochastic(shift_gate(5, 4)));
  const StochasticMatrix reset = gate_from_function(3, [](int) { return 2; });
  CHECK(is_column_stochastic(reset));
  CHECK(reset(2, 0) == 1.0);
  StochasticMatrix bad = shift_gate(3, 0);
  bad(0, 0) = -0.1;
  CHECK(!is_column_stochastic(bad));
  bad = shift_gate(3, 0);
  bad(1, 0) = 0.5;  // column sums to 1.5
  CHECK(!is_column_stochastic(bad));
  // composition of shifts is the shifted sum
  CHECK((shift_gate(5, 2) * shift_gate(5, 4) - shift_gate(5, 1)).norm() == 0.0);
}

TEST_CASE("reversible-gate d=3 protocol") {
  const RetrievalTask t = torpedo_task(3);
  const TransformationStrategy s = reversible_gate_strategy_d3();
  for (const auto& g : s.gates_q) CHECK(is_column_stochastic(g));
  const EmpiricalBehaviour e = behaviour_from_transformational(s, t);
  CHECK(task_value(t, e) == doctest::Approx(11.0 / 12.0).epsilon(1e-12));
  int won = 0;
  for (int i = 0; i < 9; ++i)
    for (int qi = 0; qi < 4; ++qi)
      for (int c = 0; c < 3; ++c)
        if (t.wins(i, qi, c) && e.at(i, qi, c) > 0.5) ++won;
  CHECK(won == 33);
}

TEST_CASE("classical strategies convert to gate form exactly") {
  for (int d : {2, 3}) {
    const RetrievalTask t = torpedo_task(d);
    const DeterministicEncoding f = d == 2 ? optimal_encoding_d2() : optimal_encoding_d3();
    const ClassicalStrategy cs = classical_strategy_from_encoding(f, t);
    const TransformationStrategy ts = pam_to_transformational(cs, t);
    const EmpiricalBehaviour direct = behaviour_from_classical(cs, t);
    const EmpiricalBehaviour via = behaviour_from_transformational(ts, t);
    for (size_t i = 0; i < direct.table.size(); ++i)
      CHECK(std::abs(direct.table[i] - via.table[i]) < 1e-12);
  }
  // probabilistic strategies convert too
  const RetrievalTask t3 = torpedo_task(3);
  ClassicalStrategy noisy;
  noisy.d = 3;
  noisy.nq = 4;
  noisy.encode.assign(27, 1.0 / 3.0);
  noisy.decode.assign(36, 1.0 / 3.0);
  const EmpiricalBehaviour direct = behaviour_from_classical(noisy, t3);
  const EmpiricalBehaviour via =
      behaviour_from_transformational(pam_to_transformational(noisy, t3), t3);
  for (size_t i = 0; i < direct.table.size(); ++i)
    CHECK(std::abs(direct.table[i] - via.table[i]) < 1e-12);
  CHECK_THROWS(pam_to_transformational(noisy, modified_torpedo_task(5)));
}

TEST_CASE("quantum strategies convert to circuit form") {
  for (int d : {3, 5}) {
    const RetrievalTask t = torpedo_task(d);
    const QuantumStrategy qs = perfect_torpedo_strategy(d);
    const CircuitStrategy c = pam_to_circuit(qs, t);
    for (const auto& g : c.gates_q) CHECK(is_unitary(g));
    const EmpiricalBehaviour direct = behaviour_from_quantum(qs, t);
    const EmpiricalBehaviour via = behaviour_from_circuit(c, t);
    for (size_t i = 0; i < direct.table.size(); ++i)
      CHECK(std::abs(direct.table[i] - via.table[i]) < 1e-9);
  }
  // the qubit strategy is a Pauli orbit of a pure state as well
  const RetrievalTask t2 = torpedo_task(2);
  const QuantumStrategy qs2 = qubit_torpedo_strategy();
  const EmpiricalBehaviour direct = behaviour_from_quantum(qs2, t2);
  const EmpiricalBehaviour via = behaviour_from_circuit(pam_to_circuit(qs2, t2), t2);
  for (size_t i = 0; i < direct.table.size(); ++i)
    CHECK(std::abs(direct.table[i] - via.table[i]) < 1e-9);
  // post-quantum "states" admit no circuit form
  CHECK_THROWS(pam_to_circuit(postquantum_qubit_torpedo_strategy(), t2));
}

TEST_CASE("circuit strategies reject non-unitary gates") {
  const RetrievalTask t = torpedo_task(3);
  CircuitStrategy c = pam_to_circuit(perfect_torpedo_strategy(3), t);
  c.gates_q[0] *= 2.0;
  CHECK_THROWS(behaviour_from_circuit(c, t));
}

TEST_CASE("d=2 brute force over deterministic gates") {
  const RetrievalTask t = torpedo_task(2);
  const TransformationalBound full = brute_force_transformational_bound(t);
  CHECK(full.value == make_rational(3, 4));  // 9 of the 12 constraints
  const EmpiricalBehaviour e = behaviour_from_transformational(full.best, t);
  CHECK(task_value(t, e) == doctest::Approx(0.75).epsilon(1e-12));
  // with reversible gates only, the register is affine in (x, z), so at most
  // one of the three questions can be answered perfectly: 8 of 12
  const TransformationalBound rev = brute_force_transformational_bound(t, true);
  CHECK(rev.value <= full.value);
  CHECK(rev.value == make_rational(2, 3));
  CHECK_THROWS(brute_force_transformational_bound(torpedo_task(5)));
}
