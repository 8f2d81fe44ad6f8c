#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torpedo/contextuality.hpp"

using namespace torpedo;

TEST_CASE("simplex: known small problems") {
  // max x1 + x2 s.t. x1 <= 1, x2 <= 2
  {
    const auto r = simplex_max<Rational>({{1, 0}, {0, 1}}, {1, 1}, {1, 2});
    CHECK(r.objective == Rational(3));
    CHECK(r.y[0] == Rational(1));
    CHECK(r.y[1] == Rational(1));
  }
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> optimum at (4, 0), value 12
  {
    const auto r = simplex_max<Rational>({{1, 1}, {1, 3}}, {3, 2}, {4, 6});
    CHECK(r.objective == Rational(12));
    CHECK(r.x[0] == Rational(4));
    CHECK(r.x[1] == Rational(0));
  }
  // unbounded
  CHECK_THROWS(simplex_max<Rational>({{Rational(-1)}}, {Rational(1)}, {Rational(1)}));
  // duals price the rhs: objective equals y . b
  {
    const auto r = simplex_max<double>({{1, 2}, {3, 1}}, {1.0, 1.0}, {5.0, 7.0}, 1e-12);
    CHECK(r.objective == doctest::Approx(r.y[0] * 5.0 + r.y[1] * 7.0).epsilon(1e-9));
  }
}

TEST_CASE("explicit d=3 model satisfies 33 of 36 constraints") {
  const RetrievalTask t = torpedo_task(3);
  const HiddenVariableModel m = best_noncontextual_model_d3();
  CHECK(total_support_constraints(t) == 36);
  CHECK(count_satisfied_constraints(m, t) == 33);
  // the model's preparation colouring is the optimal classical encoding
  for (int i = 0; i < 9; ++i) {
    int colour = -1;
    for (int k = 0; k < 3; ++k)
      if (m.lambdas[i][k] == 1.0) colour = k;
    CHECK(colour == optimal_encoding_d3().colours[i]);
  }
}

TEST_CASE("33 is the deterministic maximum at d=3") {
  CHECK(deterministic_constraint_maximum(torpedo_task(3)) == 33);
}

TEST_CASE("deterministic vertices induce deterministic behaviours") {
  const RetrievalTask t = torpedo_task(2);
  DeterministicVertex s;
  s.encoding = {0, 0, 1, 1};
  s.decoding.assign(2 * 3, 1);
  const auto e = vertex_behaviour_vector(s, t);
  for (int i = 0; i < t.num_inputs(); ++i)
    for (int qi = 0; qi < t.nq; ++qi) {
      double sum = 0;
      for (int c = 0; c < 2; ++c) {
        const double p = e[((size_t)i * t.nq + qi) * 2 + c];
        CHECK((p == 0.0 || p == 1.0));
        sum += p;
      }
      CHECK(sum == 1.0);
    }
}

TEST_CASE("pricing oracle equals exhaustive vertex minimization at d=2") {
  const RetrievalTask t = torpedo_task(2);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> y(t.num_contexts() * 2);
    for (double& v : y) v = u(rng);
    double brute = std::numeric_limits<double>::infinity();
    for (int fe = 0; fe < 16; ++fe)
      for (int gd = 0; gd < 64; ++gd) {
        DeterministicVertex s;
        s.encoding = {(uint8_t)(fe & 1), (uint8_t)(fe >> 1 & 1), (uint8_t)(fe >> 2 & 1),
                      (uint8_t)(fe >> 3 & 1)};
        s.decoding = {gd & 1, gd >> 1 & 1, gd >> 2 & 1, gd >> 3 & 1, gd >> 4 & 1, gd >> 5 & 1};
        const auto e = vertex_behaviour_vector(s, t);
        double dot = 0;
        for (size_t i = 0; i < e.size(); ++i) dot += y[i] * e[i];
        brute = std::min(brute, dot);
      }
    CHECK(price_min_vertex(t, y).second == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("noncontextual fraction of reference behaviours") {
  const RetrievalTask t3 = torpedo_task(3);
  const EmpiricalBehaviour quantum =
      behaviour_from_quantum(perfect_torpedo_strategy(3), t3);
  const DecompositionResult dq = ncf(quantum, t3);
  CHECK(dq.ncf == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(dq.primal_dual_gap < 1e-7);
  CHECK(dq.feasibility_residual < 1e-9);
  CHECK(strong_contextuality_check(quantum, t3).strong);

  const EmpiricalBehaviour classical = behaviour_from_classical(
      classical_strategy_from_encoding(optimal_encoding_d3(), t3), t3);
  const DecompositionResult dc = ncf(classical, t3);
  CHECK(dc.ncf == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(!strong_contextuality_check(classical, t3).strong);
  double weight_sum = 0;
  for (const auto& [vertex, w] : dc.weights) weight_sum += w;
  CHECK(weight_sum == doctest::Approx(dc.ncf).epsilon(1e-9));
}

TEST_CASE("ncf of a convex mixture is at least the noncontextual weight") {
  const RetrievalTask t3 = torpedo_task(3);
  const EmpiricalBehaviour quantum =
      behaviour_from_quantum(perfect_torpedo_strategy(3), t3);
  const EmpiricalBehaviour classical = behaviour_from_classical(
      classical_strategy_from_encoding(optimal_encoding_d3(), t3), t3);
  EmpiricalBehaviour mix = quantum;
  const double lam = 0.5;
  for (size_t i = 0; i < mix.table.size(); ++i)
    mix.table[i] = lam * classical.table[i] + (1 - lam) * quantum.table[i];
  const DecompositionResult d = ncf(mix, t3);
  CHECK(d.ncf >= lam - 1e-7);
  // residual of the decomposition is itself a (sub)normalized behaviour
  if (!d.residual.empty())
    for (double v : d.residual) CHECK(v >= -1e-7);
}

TEST_CASE("full enumeration and column generation agree at d=2") {
  const RetrievalTask t2 = torpedo_task(2);
  std::vector<EmpiricalBehaviour> probes = {
      behaviour_from_quantum(qubit_torpedo_strategy(), t2),
      behaviour_from_classical(classical_strategy_from_encoding(optimal_encoding_d2(), t2),
                               t2)};
  // a noisy mixture as a third probe
  EmpiricalBehaviour mix = probes[0];
  for (size_t i = 0; i < mix.table.size(); ++i)
    mix.table[i] = 0.7 * probes[0].table[i] + 0.3 * probes[1].table[i];
  probes.push_back(mix);
  for (const auto& e : probes) {
    const DecompositionResult full = ncf_full_enumeration(e, t2);
    const DecompositionResult cg = ncf_column_generation(e, t2);
    CHECK(std::abs(full.ncf - cg.ncf) < 1e-7);
    CHECK(full.primal_dual_gap < 1e-7);
  }
}

TEST_CASE("failure/contextuality trade-off") {
  const RetrievalTask t3 = torpedo_task(3);
  const EmpiricalBehaviour classical = behaviour_from_classical(
      classical_strategy_from_encoding(optimal_encoding_d3(), t3), t3);
  const TheoremBoundReport r = theorem_bound_check(classical, t3, make_rational(11, 12));
  CHECK(r.holds);
  CHECK(r.epsilon == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
  CHECK(r.nu == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(std::abs(r.slack) < 1e-7);  // tight for the optimal classical behaviour
  const EmpiricalBehaviour quantum =
      behaviour_from_quantum(perfect_torpedo_strategy(3), t3);
  CHECK(theorem_bound_check(quantum, t3, make_rational(11, 12)).holds);
}

TEST_CASE("quasi behaviours are rejected by the LP") {
  const RetrievalTask t2 = torpedo_task(2);
  EmpiricalBehaviour quasi = behaviour_from_quantum(qubit_torpedo_strategy(), t2);
  // introduce a genuinely negative entry while keeping the row normalized
  quasi.table[0] -= 1.0;
  quasi.table[1] += 1.0;
  quasi.quasi = true;
  CHECK_THROWS(ncf(quasi, t2));
  CHECK_THROWS(strong_contextuality_check(quasi, t2));
}
