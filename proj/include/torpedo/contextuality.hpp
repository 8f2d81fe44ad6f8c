#pragma once

// Bounded-memory hidden-variable models and the noncontextual-fraction LP:
//   NCF(e) = max sum_s lambda_s  s.t.  sum_s lambda_s e_s <= e, lambda >= 0
// over deterministic (encoding, decoding) vertices s. Full enumeration with
// exact rational simplex at d=2; column generation with an exhaustive
// pricing scan over encodings at d=3. Strong contextuality is decided by an
// exact integer support scan, not an LP.

#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "torpedo/classical_search.hpp"
#include "torpedo/simplex.hpp"
#include "torpedo/tasks.hpp"

namespace torpedo {

// Preparation distributions lambda_{x,z} and measurement response vectors
// v_q^c over a d-valued hidden variable.
struct HiddenVariableModel {
  int d = 0;
  std::vector<std::vector<double>> lambdas;          // [input] -> prob vector over Z_d
  std::vector<std::vector<std::vector<double>>> v;   // [qi][c] -> response vector
};

// Counts the support constraints v_q^c . lambda_i = 0 (forbidden outcomes
// have zero probability) satisfied by the model, over all contexts.
inline int count_satisfied_constraints(const HiddenVariableModel& m, const RetrievalTask& task) {
  int satisfied = 0;
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c = 0; c < task.d; ++c) {
        if (task.wins(i, qi, c)) continue;
        double dot = 0;
        for (int k = 0; k < task.d; ++k) dot += m.v[qi][c][k] * m.lambdas[i][k];
        if (std::abs(dot) <= kConstructionTol) ++satisfied;
      }
  return satisfied;
}

inline int total_support_constraints(const RetrievalTask& task) {
  int total = 0;
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c = 0; c < task.d; ++c)
        if (!task.wins(i, qi, c)) ++total;
  return total;
}

// The explicit d=3 deterministic model that satisfies 33 of the 36 support
// constraints (the maximum). Basis-vector assignments follow the optimal
// d=3 colouring; question order here is slopes 0,1,2 then infinity.
inline HiddenVariableModel best_noncontextual_model_d3() {
  HiddenVariableModel m;
  m.d = 3;
  auto f = [](int k) {
    std::vector<double> v(3, 0.0);
    v[mod(k, 3)] = 1.0;
    return v;
  };
  m.lambdas.resize(9);
  const int colour[9] = {0, 0, 1,   // (0,0) (0,1) (0,2)
                         1, 0, 2,   // (1,0) (1,1) (1,2)
                         2, 2, 1};  // (2,0) (2,1) (2,2)
  for (int i = 0; i < 9; ++i) m.lambdas[i] = f(colour[i]);
  m.v.resize(4);
  for (int qi = 0; qi < 4; ++qi) m.v[qi].resize(3);
  for (int c = 0; c < 3; ++c) {
    m.v[0][c] = f(c + 2);      // slope 0
    m.v[1][c] = f(c + 2);      // slope 1
    m.v[2][c] = f(2 * c + 1);  // slope 2
    m.v[3][c] = f(2 * c + 2);  // infinity
  }
  return m;
}

// A deterministic strategy vertex of the noncontextual polytope.
struct DeterministicVertex {
  std::vector<uint8_t> encoding;  // colour per input cell
  std::vector<int> decoding;      // [j * nq + qi] -> c
};

inline std::vector<double> vertex_behaviour_vector(const DeterministicVertex& s,
                                                   const RetrievalTask& task) {
  std::vector<double> e((size_t)task.num_contexts() * task.d, 0.0);
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      e[((size_t)i * task.nq + qi) * task.d + s.decoding[s.encoding[i] * task.nq + qi]] = 1.0;
  return e;
}

// Pricing oracle: minimizes y . e_s over all deterministic vertices by
// scanning canonical encodings with a per-(colour, question) greedy argmin
// decoding (colour relabelling cannot change the optimum).
inline std::pair<DeterministicVertex, double> price_min_vertex(const RetrievalTask& task,
                                                               const std::vector<double>& y) {
  DeterministicVertex best;
  double best_total = std::numeric_limits<double>::infinity();
  std::vector<int> decoding(task.d * task.nq);
  for_each_canonical_colouring(task.num_inputs(), task.d, [&](const DeterministicEncoding& f) {
    double total = 0;
    for (int j = 0; j < task.d; ++j)
      for (int qi = 0; qi < task.nq; ++qi) {
        double bestc = std::numeric_limits<double>::infinity();
        int argc = 0;
        for (int c = 0; c < task.d; ++c) {
          double s = 0;
          for (int i = 0; i < task.num_inputs(); ++i)
            if (f.colours[i] == j) s += y[((size_t)i * task.nq + qi) * task.d + c];
          if (s < bestc) {
            bestc = s;
            argc = c;
          }
        }
        total += bestc;
        decoding[j * task.nq + qi] = argc;
      }
    if (total < best_total) {
      best_total = total;
      best = {f.colours, decoding};
    }
  });
  return {best, best_total};
}

// Support scan: maximizes, over deterministic vertices, the number of
// contexts whose chosen outcome lies inside supp(e).
inline std::pair<DeterministicVertex, int> support_max_vertex(
    const RetrievalTask& task, const std::vector<uint32_t>& support_masks) {
  DeterministicVertex best;
  int best_total = -1;
  std::vector<int> decoding(task.d * task.nq);
  for_each_canonical_colouring(task.num_inputs(), task.d, [&](const DeterministicEncoding& f) {
    int total = 0;
    for (int j = 0; j < task.d; ++j)
      for (int qi = 0; qi < task.nq; ++qi) {
        int bestc = -1, argc = 0;
        for (int c = 0; c < task.d; ++c) {
          int s = 0;
          for (int i = 0; i < task.num_inputs(); ++i)
            if (f.colours[i] == j && (support_masks[i * task.nq + qi] >> c & 1u)) ++s;
          if (s > bestc) {
            bestc = s;
            argc = c;
          }
        }
        total += bestc;
        decoding[j * task.nq + qi] = argc;
      }
    if (total > best_total) {
      best_total = total;
      best = {f.colours, decoding};
    }
  });
  return {best, best_total};
}

// All canonical-encoding vertices priced below the threshold, best first,
// at most `cap` of them. Used to add columns in batches.
inline std::vector<std::pair<DeterministicVertex, double>> price_vertices_below(
    const RetrievalTask& task, const std::vector<double>& y, double threshold, size_t cap) {
  std::vector<std::pair<DeterministicVertex, double>> found;
  std::vector<int> decoding(task.d * task.nq);
  for_each_canonical_colouring(task.num_inputs(), task.d, [&](const DeterministicEncoding& f) {
    double total = 0;
    for (int j = 0; j < task.d; ++j)
      for (int qi = 0; qi < task.nq; ++qi) {
        double bestc = std::numeric_limits<double>::infinity();
        int argc = 0;
        for (int c = 0; c < task.d; ++c) {
          double s = 0;
          for (int i = 0; i < task.num_inputs(); ++i)
            if (f.colours[i] == j) s += y[((size_t)i * task.nq + qi) * task.d + c];
          if (s < bestc) {
            bestc = s;
            argc = c;
          }
        }
        total += bestc;
        decoding[j * task.nq + qi] = argc;
      }
    if (total < threshold) found.emplace_back(DeterministicVertex{f.colours, decoding}, total);
  });
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  if (found.size() > cap) found.resize(cap);
  return found;
}

struct StrongContextualityResult {
  bool strong = false;
  DeterministicVertex witness;  // a vertex inside supp(e) when not strong
};

inline StrongContextualityResult strong_contextuality_check(const EmpiricalBehaviour& e,
                                                            const RetrievalTask& task) {
  if (e.quasi) throw std::invalid_argument("strong_contextuality_check: quasi behaviour");
  std::vector<uint32_t> supp((size_t)task.num_contexts(), 0);
  for (int i = 0; i < task.num_inputs(); ++i)
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c = 0; c < task.d; ++c)
        if (e.at(i, qi, c) > kConstructionTol) supp[i * task.nq + qi] |= 1u << c;
  auto [vertex, score] = support_max_vertex(task, supp);
  StrongContextualityResult r;
  r.strong = score < task.num_contexts();
  if (!r.strong) r.witness = vertex;
  return r;
}

// Maximum number of jointly satisfiable support constraints over all
// deterministic bounded-memory models, by exhaustive encoding scan with
// greedy decodings (36 -> 33 for the d=3 Torpedo game).
inline int deterministic_constraint_maximum(const RetrievalTask& task) {
  if (task.d > 3) throw std::invalid_argument("deterministic_constraint_maximum: d too large");
  // Satisfying behaviour(c0|i,qi) = 0 for forbidden c0 is equivalent to the
  // chosen outcome winning; per (colour, question) the greedy choice is the
  // answer losing on fewest cells.
  int per_context_forbidden = 0;  // torpedo-family tasks: constant per context
  int best = -1;
  for_each_canonical_colouring(task.num_inputs(), task.d, [&](const DeterministicEncoding& f) {
    int satisfied = 0;
    for (int j = 0; j < task.d; ++j)
      for (int qi = 0; qi < task.nq; ++qi) {
        int bestc = -1;
        for (int c = 0; c < task.d; ++c) {
          int s = 0;
          for (int i = 0; i < task.num_inputs(); ++i) {
            if (f.colours[i] != j) continue;
            for (int c0 = 0; c0 < task.d; ++c0)
              if (!task.wins(i, qi, c0) && c0 != c) ++s;
          }
          if (s > bestc) bestc = s;
        }
        satisfied += bestc;
      }
    if (satisfied > best) best = satisfied;
  });
  (void)per_context_forbidden;
  return best;
}

struct DecompositionResult {
  double ncf = 0;
  double cf = 1;
  std::vector<std::pair<DeterministicVertex, double>> weights;
  std::vector<double> residual;  // e' of the convex decomposition (empty if ncf ~ 1)
  std::vector<double> dual;      // certificate y(c | i, q) >= 0
  double primal_dual_gap = 0;
  double feasibility_residual = 0;
};

namespace detail {

inline std::vector<double> clamped_behaviour_vector(const EmpiricalBehaviour& e) {
  std::vector<double> b = e.table;
  for (double& v : b)
    if (v < 0) {
      if (v < -kConstructionTol) throw std::invalid_argument("ncf: negative probability");
      v = 0;
    }
  return b;
}

template <class Scalar>
DecompositionResult assemble_result(const std::vector<DeterministicVertex>& vertices,
                                    const SimplexResult<Scalar>& lp,
                                    const std::vector<double>& b, const RetrievalTask& task) {
  DecompositionResult r;
  auto to_double = [](const Scalar& v) {
    if constexpr (std::is_same_v<Scalar, double>)
      return v;
    else
      return v.get_d();
  };
  r.ncf = to_double(lp.objective);
  r.cf = 1.0 - r.ncf;
  const size_t m = b.size();
  std::vector<double> mixture(m, 0.0);
  for (size_t s = 0; s < vertices.size(); ++s) {
    const double w = to_double(lp.x[s]);
    if (w > 1e-12) {
      r.weights.emplace_back(vertices[s], w);
      const auto es = vertex_behaviour_vector(vertices[s], task);
      for (size_t row = 0; row < m; ++row) mixture[row] += w * es[row];
    }
  }
  r.feasibility_residual = 0;
  for (size_t row = 0; row < m; ++row)
    r.feasibility_residual = std::max(r.feasibility_residual, mixture[row] - b[row]);
  if (r.ncf < 1.0 - 1e-12) {
    r.residual.resize(m);
    for (size_t row = 0; row < m; ++row)
      r.residual[row] = (b[row] - mixture[row]) / (1.0 - r.ncf);
  }
  r.dual.resize(m);
  double dual_obj = 0;
  for (size_t row = 0; row < m; ++row) {
    r.dual[row] = to_double(lp.y[row]);
    dual_obj += r.dual[row] * b[row];
  }
  r.primal_dual_gap = std::abs(dual_obj - r.ncf);
  return r;
}

}  // namespace detail

// Full vertex enumeration + exact rational simplex. Only for alphabets small
// enough to enumerate every (encoding, decoding) pair (the d=2 games).
inline DecompositionResult ncf_full_enumeration(const EmpiricalBehaviour& e,
                                                const RetrievalTask& task) {
  if (e.quasi) throw std::invalid_argument("ncf: quasi behaviours are rejected");
  e.validate();
  const int n_in = task.num_inputs();
  double log_count = n_in * std::log((double)task.d) +
                     task.d * task.nq * std::log((double)task.d);
  if (log_count > std::log(2e5))
    throw std::invalid_argument("ncf_full_enumeration: vertex set too large; use column generation");

  std::vector<DeterministicVertex> vertices;
  std::map<std::vector<double>, bool> seen;  // dedupe identical behaviours
  const int n_enc = (int)std::llround(std::pow((double)task.d, n_in));
  const int n_dec = (int)std::llround(std::pow((double)task.d, task.d * task.nq));
  for (int fe = 0; fe < n_enc; ++fe) {
    DeterministicVertex s;
    s.encoding.resize(n_in);
    int rem = fe;
    for (int i = n_in - 1; i >= 0; --i) {
      s.encoding[i] = (uint8_t)(rem % task.d);
      rem /= task.d;
    }
    for (int gd = 0; gd < n_dec; ++gd) {
      s.decoding.assign(task.d * task.nq, 0);
      int r2 = gd;
      for (int k = task.d * task.nq - 1; k >= 0; --k) {
        s.decoding[k] = r2 % task.d;
        r2 /= task.d;
      }
      auto key = vertex_behaviour_vector(s, task);
      if (!seen.emplace(std::move(key), true).second) continue;
      vertices.push_back(s);
    }
  }

  const std::vector<double> b = detail::clamped_behaviour_vector(e);
  std::vector<std::vector<Rational>> columns;
  columns.reserve(vertices.size());
  for (const auto& s : vertices) {
    const auto col = vertex_behaviour_vector(s, task);
    std::vector<Rational> rc(col.size());
    for (size_t i = 0; i < col.size(); ++i) rc[i] = Rational(col[i] > 0.5 ? 1 : 0);
    columns.push_back(std::move(rc));
  }
  std::vector<Rational> rb(b.size()), obj(vertices.size(), Rational(1));
  for (size_t i = 0; i < b.size(); ++i) rb[i] = Rational(b[i]);  // exact from double
  const auto lp = simplex_max<Rational>(columns, obj, rb);
  return detail::assemble_result(vertices, lp, b, task);
}

// Column generation with the exhaustive pricing scan. Handles d <= 3 tasks
// on the d x d grid (the pricing scan enumerates d^(d^2) colourings).
inline DecompositionResult ncf_column_generation(const EmpiricalBehaviour& e,
                                                 const RetrievalTask& task,
                                                 uint64_t seed = 20240917) {
  if (e.quasi) throw std::invalid_argument("ncf: quasi behaviours are rejected");
  e.validate();
  if (task.d > 3 || task.num_inputs() > 9)
    throw std::invalid_argument("ncf_column_generation: pricing scan infeasible beyond d=3");
  const std::vector<double> b = detail::clamped_behaviour_vector(e);
  const size_t m = b.size();

  std::vector<DeterministicVertex> vertices;
  std::map<std::vector<double>, bool> seen;
  auto add_vertex = [&](const DeterministicVertex& s) {
    auto key = vertex_behaviour_vector(s, task);
    if (!seen.emplace(std::move(key), true).second) return false;
    vertices.push_back(s);
    return true;
  };

  // Warm start: the exhaustive classical optimum plus d random vertices.
  {
    const auto [value, witness] = exhaustive_classical_value(task);
    (void)value;
    add_vertex({witness.colours, encoding_value(witness, task).decoding});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> colour(0, task.d - 1);
    for (int k = 0; k < task.d; ++k) {
      DeterministicVertex s;
      s.encoding.resize(task.num_inputs());
      for (auto& cc : s.encoding) cc = (uint8_t)colour(rng);
      s.decoding.resize(task.d * task.nq);
      for (auto& cc : s.decoding) cc = colour(rng);
      add_vertex(s);
    }
  }

  SimplexResult<double> lp;
  // Pricing tolerance is deliberately looser than the simplex tolerance:
  // near the optimum the face typically contains many vertices whose reduced
  // costs hover around zero, and admitting those ties floods the master LP
  // with columns without improving the objective.
  const double kPricingTol = 1e-8;
  double best_objective = -1.0;
  int stalled_rounds = 0;
  bool resolve_needed = false;
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<std::vector<double>> columns;
    columns.reserve(vertices.size());
    for (const auto& s : vertices) columns.push_back(vertex_behaviour_vector(s, task));
    std::vector<double> obj(vertices.size(), 1.0);
    lp = simplex_max<double>(columns, obj, b, 1e-9);
    resolve_needed = false;
    // A vertex with mass on a row where the behaviour is zero can never carry
    // weight, so penalize those rows in the pricing duals: this restricts the
    // oracle to vertices supported inside supp(b) and prevents it from
    // cycling through columns that each clash with a different zero row.
    std::vector<double> y(m);
    for (size_t row = 0; row < m; ++row)
      y[row] = lp.y[row] + (b[row] <= 1e-15 ? 2.0 : 0.0);
    const auto batch = price_vertices_below(task, y, 1.0 - kPricingTol, 48);
    if (batch.empty()) break;  // dual feasible for all vertices
    // Guard against degenerate stalls: bail out if the objective has not
    // improved for many consecutive rounds despite new columns.
    if (lp.objective > best_objective + 1e-11) {
      best_objective = lp.objective;
      stalled_rounds = 0;
    } else if (++stalled_rounds > 30) {
      break;
    }
    // If the pool has grown large, prune columns carrying no weight; they
    // have nonnegative reduced cost under the current duals, so pricing will
    // not immediately re-propose them.  Pruned columns may be re-admitted in
    // a later round, so `seen` tracks the current pool only.
    if (vertices.size() > 4096) {
      std::vector<DeterministicVertex> kept;
      kept.reserve(m + batch.size());
      seen.clear();
      for (size_t i = 0; i < vertices.size(); ++i)
        if (lp.x[i] > 1e-12) {
          seen.emplace(vertex_behaviour_vector(vertices[i], task), true);
          kept.push_back(std::move(vertices[i]));
        }
      vertices = std::move(kept);
      resolve_needed = true;
    }
    bool grew = false;
    for (const auto& [vertex, price] : batch) grew = add_vertex(vertex) || grew;
    if (grew) resolve_needed = true;
    if (!grew && !resolve_needed) break;  // numerically stalled
  }
  if (resolve_needed) {
    // Re-solve over the final column set so the reported solution, duals and
    // certificates are consistent with the vertex list.
    std::vector<std::vector<double>> columns;
    columns.reserve(vertices.size());
    for (const auto& s : vertices) columns.push_back(vertex_behaviour_vector(s, task));
    std::vector<double> obj(vertices.size(), 1.0);
    lp = simplex_max<double>(columns, obj, b, 1e-9);
  }
  return detail::assemble_result(vertices, lp, b, task);
}

// Solver regime per the scalability design: exact full enumeration for d=2,
// column generation for d=3.
inline DecompositionResult ncf(const EmpiricalBehaviour& e, const RetrievalTask& task) {
  if (task.d == 2) return ncf_full_enumeration(e, task);
  if (task.d == 3) return ncf_column_generation(e, task);
  throw std::invalid_argument("ncf: only d in {2,3} is supported");
}

struct TheoremBoundReport {
  double epsilon = 0;  // average failure probability of e
  double nu = 0;       // task hardness 1 - theta_C
  double ncf = 0;
  double slack = 0;    // epsilon - ncf * nu
  bool holds = false;
};

// Checks the failure/contextuality trade-off epsilon >= NCF(e) * nu.
inline TheoremBoundReport theorem_bound_check(const EmpiricalBehaviour& e,
                                              const RetrievalTask& task,
                                              const Rational& theta_c) {
  TheoremBoundReport r;
  r.epsilon = 1.0 - task_value(task, e);
  r.nu = 1.0 - theta_c.get_d();
  r.ncf = ncf(e, task).ncf;
  r.slack = r.epsilon - r.ncf * r.nu;
  r.holds = r.slack >= -kAssertTol;
  return r;
}

}  // namespace torpedo
