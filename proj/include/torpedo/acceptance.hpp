#pragma once

// The consolidated acceptance suite: ten numbered criteria covering exact
// classical values, perfect quantum strategies, the qubit and post-quantum
// variants, Wigner-function identities, contextuality quantification, the
// transformational protocol, randomized search, and the always-on invariant
// properties. Shared by the acceptance test binary and `torpedo report`.

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "torpedo/classical_search.hpp"
#include "torpedo/contextuality.hpp"
#include "torpedo/tasks.hpp"
#include "torpedo/transformational.hpp"
#include "torpedo/wigner.hpp"

namespace torpedo {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace acceptance_detail {

class Criterion {
 public:
  explicit Criterion(int id, std::string name) {
    result_.id = id;
    result_.name = std::move(name);
    result_.pass = true;
  }

  void check(bool ok, const std::string& what) {
    if (!ok) result_.pass = false;
    if (!detail_.str().empty()) detail_ << "; ";
    detail_ << (ok ? "ok: " : "FAIL: ") << what;
  }

  void check_close(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << got << " (want " << want << " +/- " << tol << ")";
    check(std::abs(got - want) <= tol, os.str());
  }

  CriterionResult finish() {
    result_.detail = detail_.str();
    return result_;
  }

 private:
  CriterionResult result_;
  std::ostringstream detail_;
};

inline Matrix random_pure_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  v.normalize();
  return v * v.adjoint();
}

inline double max_forbidden_probability(const EmpiricalBehaviour& e, const RetrievalTask& task) {
  double worst = 0;
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c = 0; c < task.d; ++c)
        if (!task.wins(i, qi, c)) worst = std::max(worst, std::abs(e.at(i, qi, c)));
  return worst;
}

}  // namespace acceptance_detail

inline CriterionResult criterion_1_exact_classical_values() {
  acceptance_detail::Criterion c(1, "exhaustive classical values");
  const auto t0 = std::chrono::steady_clock::now();
  const auto [v2, w2] = exhaustive_classical_value(torpedo_task(2));
  const auto [v3, w3] = exhaustive_classical_value(torpedo_task(3));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.check(v2 == make_rational(3, 4), "d=2 value " + rational_to_string(v2) + " == 3/4");
  c.check(v3 == make_rational(11, 12), "d=3 value " + rational_to_string(v3) + " == 11/12");
  c.check(encoding_value(w2, torpedo_task(2)).value == v2, "d=2 witness recomputes");
  c.check(encoding_value(w3, torpedo_task(3)).value == v3, "d=3 witness recomputes");
  c.check(secs < 60.0, "runtime " + std::to_string(secs) + "s < 60s");
  return c.finish();
}

inline CriterionResult criterion_2_perfect_quantum() {
  acceptance_detail::Criterion c(2, "perfect quantum strategies d=3,5,7");
  const auto t0 = std::chrono::steady_clock::now();
  for (int d : {3, 5, 7}) {
    const RetrievalTask task = torpedo_task(d);
    const EmpiricalBehaviour e = behaviour_from_quantum(perfect_torpedo_strategy(d), task);
    c.check_close(task_value(task, e), 1.0, 1e-12, "d=" + std::to_string(d) + " value");
    c.check(acceptance_detail::max_forbidden_probability(e, task) <= 1e-12,
            "d=" + std::to_string(d) + " forbidden outcomes <= 1e-12");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.check(secs < 10.0, "runtime " + std::to_string(secs) + "s < 10s");
  return c.finish();
}

inline CriterionResult criterion_3_qubit_value() {
  acceptance_detail::Criterion c(3, "qubit quantum value");
  const RetrievalTask task = torpedo_task(2);
  const double value = task_value(task, behaviour_from_quantum(qubit_torpedo_strategy(), task));
  c.check_close(value, 0.5 * (1.0 + 1.0 / std::sqrt(3.0)), 1e-9, "value");
  return c.finish();
}

inline CriterionResult criterion_4_postquantum() {
  acceptance_detail::Criterion c(4, "post-quantum phase-point strategies");
  const RetrievalTask task = torpedo_task(2);
  const EmpiricalBehaviour e =
      behaviour_from_quantum(postquantum_qubit_torpedo_strategy(), task);
  c.check_close(task_value(task, e), 1.0, 1e-12, "qubit torpedo value");
  double most_negative = 0;
  for (double p : e.table) most_negative = std::min(most_negative, p);
  // Expected red: this sub-check is unattainable.  With two outcomes per
  // question and value exactly 1, every winning entry is forced to 1 and its
  // complement to 0, so the behaviour table cannot contain a negative entry.
  // The negativity of the strategy lives in the encoding operators, whose
  // smallest eigenvalue is (1-sqrt(3))/2; that is verified below.
  c.check(e.quasi && most_negative < -1e-6,
          "behaviour table has a negative entry (min entry " +
              std::to_string(most_negative) +
              "; impossible at value 1 with binary outcomes — negativity is in "
              "the encoding spectrum, not the table)");
  double min_eig = 0;
  for (const Matrix& rho : postquantum_qubit_torpedo_strategy().states) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  c.check_close(min_eig, (1.0 - std::sqrt(3.0)) / 2.0, 1e-9,
                "encoding operators have negative eigenvalue (1-sqrt3)/2");
  const MubSystem mub3 = mub_system(3);
  const double rac = casaccino_qrac_value(3, [&](const std::vector<int>& k) {
    // Hermitian "state" sum_q Pi_q^{k_q} - I: unit trace, and every requested
    // outcome has probability exactly 1 (a phase-point operator whenever the
    // d+1 requested lines are concurrent).
    Matrix rho = -Matrix::Identity(3, 3);
    for (int qi = 0; qi <= 3; ++qi) rho += mub3.projector(qi, k[qi]);
    return rho;
  });
  c.check_close(rac, 1.0, 1e-12, "d=3 RAC value with phase-point encodings");
  return c.finish();
}

inline CriterionResult criterion_5_wigner() {
  acceptance_detail::Criterion c(5, "Wigner function checks");
  // Grid of |psi_{2,0}>: -1/3 at (2,0), 1/6 elsewhere.
  {
    const Vector v = perfect_message_state(3, 2, 0, 0);
    const WignerGrid w = wigner_function(v * v.adjoint(), 3);
    double worst = 0;
    for (int x = 0; x < 3; ++x)
      for (int z = 0; z < 3; ++z) {
        const double want = (x == 2 && z == 0) ? -1.0 / 3.0 : 1.0 / 6.0;
        worst = std::max(worst, std::abs(w.values(x, z) - want));
      }
    c.check(worst <= 1e-12, "psi_{2,0} grid max deviation " + std::to_string(worst));
  }
  std::mt19937_64 rng(7);
  for (int d : {3, 5, 7}) {
    double spec_err = 0;
    for (int x = 0; x < d; ++x)
      for (int z = 0; z < d; ++z) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(phase_point_operator(d, x, z).matrix);
        int plus = 0, minus = 0;
        for (int i = 0; i < d; ++i) {
          const double ev = es.eigenvalues()(i);
          spec_err = std::max(spec_err, std::abs(std::abs(ev) - 1.0));
          (ev > 0 ? plus : minus) += 1;
        }
        if (plus != (d + 1) / 2 || minus != (d - 1) / 2) spec_err = 1.0;
      }
    c.check(spec_err <= 1e-9, "d=" + std::to_string(d) + " phase-point spectra +/-1 with "
                              "multiplicities (d+1)/2, (d-1)/2");
    const MubSystem mub = mub_system(d);
    double marg_err = 0;
    for (int trial = 0; trial < 25; ++trial) {
      const Matrix rho = acceptance_detail::random_pure_state(d, rng);
      const WignerGrid w = wigner_function(rho, d);
      for (int qi = 0; qi <= d; ++qi)
        for (int k = 0; k < d; ++k) {
          const double born = std::real((rho * mub.projector(qi, k)).trace());
          marg_err = std::max(marg_err, std::abs(line_marginal(w, qi, k) - born));
        }
    }
    c.check(marg_err <= 1e-9,
            "d=" + std::to_string(d) + " line marginals match Born probabilities (max err " +
                std::to_string(marg_err) + ")");
  }
  return c.finish();
}

inline CriterionResult criterion_6_qrac_baseline() {
  acceptance_detail::Criterion c(6, "RAC baseline and advantage ratios");
  const RetrievalTask task = qrac_task(2, 2);
  const auto [cs, qs] = qrac21_strategies();
  const auto [cv, cw] = exhaustive_classical_value(task);
  (void)cw;
  c.check(cv == make_rational(3, 4), "(2,1)_2 classical value " + rational_to_string(cv));
  c.check_close(task_value(task, behaviour_from_classical(cs, task)), 0.75, 1e-12,
                "explicit classical strategy value");
  const double qv = task_value(task, behaviour_from_quantum(qs, task));
  const double cos2 = std::cos(M_PI / 8.0) * std::cos(M_PI / 8.0);
  c.check_close(qv, cos2, 1e-9, "(2,1)_2 quantum value vs cos^2(pi/8)");
  // Torpedo advantage ratios theta^Q / theta^C.
  const double ratio2 =
      task_value(torpedo_task(2),
                 behaviour_from_quantum(qubit_torpedo_strategy(), torpedo_task(2))) /
      make_rational(3, 4).get_d();
  const double ratio3 = 1.0 / make_rational(11, 12).get_d();
  // The exact d=2 ratio is (2/3)(1 + 1/sqrt(3)) = 1.05157; the quoted 1.053
  // is the two-decimal rounding 0.79/0.75 and is not reproducible within
  // 1e-3 from the analytic value. Asserted as stated; expected red.
  c.check_close(ratio2, 1.053, 1e-3, "d=2 advantage ratio");
  c.check_close(ratio3, 1.091, 1e-3, "d=3 advantage ratio");
  return c.finish();
}

inline CriterionResult criterion_7_contextuality() {
  acceptance_detail::Criterion c(7, "contextual fraction");
  const RetrievalTask t3 = torpedo_task(3);
  const EmpiricalBehaviour quantum3 =
      behaviour_from_quantum(perfect_torpedo_strategy(3), t3);
  const DecompositionResult q3 = ncf(quantum3, t3);
  c.check_close(q3.ncf, 0.0, 1e-7, "ncf of perfect quantum d=3 behaviour");
  c.check(strong_contextuality_check(quantum3, t3).strong,
          "perfect quantum d=3 behaviour is strongly contextual");
  const EmpiricalBehaviour classical3 = behaviour_from_classical(
      classical_strategy_from_encoding(optimal_encoding_d3(), t3), t3);
  const DecompositionResult c3 = ncf(classical3, t3);
  c.check_close(c3.ncf, 1.0, 1e-7, "ncf of optimal classical d=3 behaviour");
  const HiddenVariableModel model = best_noncontextual_model_d3();
  c.check(count_satisfied_constraints(model, t3) == 33,
          "explicit model satisfies 33 of 36 constraints");
  c.check(total_support_constraints(t3) == 36, "36 support constraints in total");
  c.check(deterministic_constraint_maximum(t3) == 33,
          "exhaustive scan: deterministic maximum is 33");
  const TheoremBoundReport bound = theorem_bound_check(classical3, t3, make_rational(11, 12));
  c.check(bound.holds, "failure/contextuality bound holds");
  c.check_close(bound.epsilon, 1.0 / 12.0, 1e-9, "epsilon of optimal classical d=3");
  c.check_close(bound.slack, 0.0, 1e-7, "bound tight for optimal classical d=3");
  // Solver cross-validation on d=2 behaviours.
  const RetrievalTask t2 = torpedo_task(2);
  const std::vector<EmpiricalBehaviour> probes = {
      behaviour_from_quantum(qubit_torpedo_strategy(), t2),
      behaviour_from_classical(classical_strategy_from_encoding(optimal_encoding_d2(), t2), t2)};
  double worst_gap = 0;
  for (const auto& e : probes)
    worst_gap = std::max(
        worst_gap, std::abs(ncf_full_enumeration(e, t2).ncf - ncf_column_generation(e, t2).ncf));
  c.check(worst_gap <= 1e-7,
          "column generation agrees with full enumeration (max gap " +
              std::to_string(worst_gap) + ")");
  return c.finish();
}

inline CriterionResult criterion_8_transformational() {
  acceptance_detail::Criterion c(8, "transformational protocol");
  const RetrievalTask t3 = torpedo_task(3);
  const EmpiricalBehaviour rev = behaviour_from_transformational(reversible_gate_strategy_d3(), t3);
  c.check_close(task_value(t3, rev), 11.0 / 12.0, 1e-12, "reversible-gate value");
  int won = 0;
  for (int i = 0; i < t3.num_inputs(); ++i)
    for (int qi = 0; qi < t3.nq; ++qi)
      for (int k = 0; k < 3; ++k)
        if (t3.wins(i, qi, k) && rev.at(i, qi, k) > 0.5) ++won;
  c.check(won == 33, "reversible gates win 33 of 36 constraints");
  const auto t0 = std::chrono::steady_clock::now();
  const RetrievalTask t2 = torpedo_task(2);
  const TransformationalBound bound = brute_force_transformational_bound(t2);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.check(bound.value == make_rational(9, 12),
          "d=2 brute force maximum " + rational_to_string(bound.value) + " == 3/4 (9 of 12)");
  c.check(secs < 5.0, "brute force runtime " + std::to_string(secs) + "s < 5s");
  // Round trips: classical strategies through stochastic gates, the quantum
  // strategies through circuits.
  double worst = 0;
  for (const DeterministicEncoding& enc : {optimal_encoding_d2(), optimal_encoding_d3()}) {
    const RetrievalTask task = torpedo_task(enc.d);
    const ClassicalStrategy cs = classical_strategy_from_encoding(enc, task);
    const EmpiricalBehaviour direct = behaviour_from_classical(cs, task);
    const EmpiricalBehaviour via =
        behaviour_from_transformational(pam_to_transformational(cs, task), task);
    for (size_t i = 0; i < direct.table.size(); ++i)
      worst = std::max(worst, std::abs(direct.table[i] - via.table[i]));
  }
  c.check(worst <= 1e-12, "classical PAM -> gates round trip (max err " +
                              std::to_string(worst) + ")");
  worst = 0;
  for (int d : {3, 5}) {
    const RetrievalTask task = torpedo_task(d);
    const QuantumStrategy qs = perfect_torpedo_strategy(d);
    const EmpiricalBehaviour direct = behaviour_from_quantum(qs, task);
    const EmpiricalBehaviour via = behaviour_from_circuit(pam_to_circuit(qs, task), task);
    for (size_t i = 0; i < direct.table.size(); ++i)
      worst = std::max(worst, std::abs(direct.table[i] - via.table[i]));
  }
  c.check(worst <= 1e-9,
          "quantum PAM -> circuit round trip (max err " + std::to_string(worst) + ")");
  return c.finish();
}

// The "finds none" probe for the modified d=5 game runs with a reduced
// budget so the whole suite stays inside its time box; it reports a search
// outcome, not a proof.
inline CriterionResult criterion_9_search(bool quick = false) {
  acceptance_detail::Criterion c(9, "randomized search for perfect colourings");
  const auto t0 = std::chrono::steady_clock::now();
  SearchConfig cfg;  // defaults, seed 42
  if (quick) {
    cfg.restarts = 200;
    cfg.steps_per_restart = 2000;
    cfg.time_limit_seconds = 60.0;
  }
  for (int d : {5, 7}) {
    const RetrievalTask task = torpedo_task(d);
    const SearchResult r = random_search_perfect(task, cfg);
    c.check(r.perfect, "d=" + std::to_string(d) + " perfect colouring found");
    if (r.perfect)
      c.check(verify_perfect(r.best, task) && encoding_value(r.best, task).value == 1,
              "d=" + std::to_string(d) + " witness independently verified");
  }
  SearchConfig modified_cfg;
  modified_cfg.restarts = 100;
  modified_cfg.steps_per_restart = 5000;
  modified_cfg.time_limit_seconds = 120.0;
  const SearchResult none = random_search_perfect(modified_torpedo_task(5), modified_cfg);
  c.check(!none.perfect, "modified d=5: no perfect colouring found (search outcome; best " +
                             rational_to_string(none.best_value) + ")");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.check(secs < 600.0, "runtime " + std::to_string(secs) + "s < 600s");
  return c.finish();
}

inline CriterionResult criterion_10_property_suite() {
  acceptance_detail::Criterion c(10, "invariant property baseline");
  std::mt19937_64 rng(11);
  for (int d : {3, 5, 7}) {
    // Unitarity of displacements and basis unitaries.
    const MubSystem mub = mub_system(d);
    bool unitary = true;
    for (const auto& b : mub.bases) unitary = unitary && is_unitary(b);
    for (int x = 0; x < d; ++x)
      for (int z = 0; z < d; ++z) unitary = unitary && is_unitary(displacement(d, x, z));
    c.check(unitary, "d=" + std::to_string(d) + " operators unitary");
    // Composition D_a D_b = w^{2^{-1}(a_z b_x - a_x b_z)} D_{a+b}.
    const int half = mod_inverse(2, d);
    double comp_err = 0;
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<int> u(0, d - 1);
      const int x1 = u(rng), z1 = u(rng), x2 = u(rng), z2 = u(rng);
      const Matrix lhs = displacement(d, x1, z1) * displacement(d, x2, z2);
      const Matrix rhs = root_of_unity(d, (long long)half * (z1 * x2 - x1 * z2)) *
                         displacement(d, mod(x1 + x2, d), mod(z1 + z2, d));
      comp_err = std::max(comp_err, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    c.check(comp_err <= 1e-9, "d=" + std::to_string(d) + " displacement composition law");
    // Symplectic covariance and Wigner covariance for each slope basis map.
    double cov_err = 0, wig_err = 0;
    const Matrix rho = acceptance_detail::random_pure_state(d, rng);
    const WignerGrid w = wigner_function(rho, d);
    for (int q = 0; q < d; ++q) {
      const SymplecticMatrix f(q, d - 1, 1, 0, d);
      const Matrix uf = symplectic_unitary(f);
      std::uniform_int_distribution<int> u(0, d - 1);
      const int x = u(rng), z = u(rng);
      const auto [fx, fz] = f.apply(x, z);
      cov_err = std::max(cov_err, (uf * displacement(d, x, z) * uf.adjoint() -
                                   displacement(d, fx, fz))
                                      .cwiseAbs()
                                      .maxCoeff());
      const WignerGrid wu = wigner_function(Matrix(uf * rho * uf.adjoint()), d);
      for (int xx = 0; xx < d; ++xx)
        for (int zz = 0; zz < d; ++zz) {
          const auto [mx, mz] = f.apply(xx, zz);
          wig_err = std::max(wig_err, std::abs(wu.values(mx, mz) - w.values(xx, zz)));
        }
    }
    c.check(cov_err <= 1e-9, "d=" + std::to_string(d) + " symplectic covariance");
    c.check(std::abs(w.sum() - 1.0) <= 1e-9 && wig_err <= 1e-9,
            "d=" + std::to_string(d) + " Wigner normalization and covariance");
    // MUB unbiasedness.
    double mub_err = 0;
    for (int q1 = 0; q1 <= d; ++q1)
      for (int q2 = q1 + 1; q2 <= d; ++q2)
        for (int k1 = 0; k1 < d; ++k1)
          for (int k2 = 0; k2 < d; ++k2) {
            const Complex ip =
                (mub.projector(q1, k1) * mub.projector(q2, k2)).trace();
            mub_err = std::max(mub_err, std::abs(std::abs(ip) - 1.0 / d));
          }
    c.check(mub_err <= 1e-9, "d=" + std::to_string(d) + " MUB unbiasedness");
  }
  // LP primal-dual agreement.
  const RetrievalTask t2 = torpedo_task(2);
  const DecompositionResult dec = ncf_full_enumeration(
      behaviour_from_quantum(qubit_torpedo_strategy(), t2), t2);
  c.check(dec.primal_dual_gap <= 1e-7 && dec.feasibility_residual <= 1e-9,
          "LP primal-dual agreement");
  // Behaviour-value linearity.
  {
    const EmpiricalBehaviour e1 = behaviour_from_quantum(qubit_torpedo_strategy(), t2);
    const EmpiricalBehaviour e2 = behaviour_from_classical(
        classical_strategy_from_encoding(optimal_encoding_d2(), t2), t2);
    EmpiricalBehaviour mix = e1;
    const double lam = 0.375;
    for (size_t i = 0; i < mix.table.size(); ++i)
      mix.table[i] = lam * e1.table[i] + (1 - lam) * e2.table[i];
    const double want = lam * task_value(t2, e1) + (1 - lam) * task_value(t2, e2);
    c.check_close(task_value(t2, mix), want, 1e-12, "task value linear in the behaviour");
  }
  return c.finish();
}

inline std::vector<CriterionResult> run_acceptance(bool quick_search = false) {
  return {criterion_1_exact_classical_values(),
          criterion_2_perfect_quantum(),
          criterion_3_qubit_value(),
          criterion_4_postquantum(),
          criterion_5_wigner(),
          criterion_6_qrac_baseline(),
          criterion_7_contextuality(),
          criterion_8_transformational(),
          criterion_9_search(quick_search),
          criterion_10_property_suite()};
}

}  // namespace torpedo
