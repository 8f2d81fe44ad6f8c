#pragma once

// Exact classical values: deterministic encodings as grid colourings,
// the maximum-over-encodings formula with exact rational arithmetic,
// exhaustive canonical enumeration for d <= 3, and randomized hill climbing
// for perfect strategies at d >= 5.

#include <chrono>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "torpedo/rational.hpp"
#include "torpedo/tasks.hpp"

namespace torpedo {

// A colouring of the input cells with at most d colours, row-major by input
// index (for the standard game: row-major by x, then z).
struct DeterministicEncoding {
  int d = 0;
  std::vector<uint8_t> colours;  // length = task.num_inputs()

  std::string to_string() const {
    std::string s;
    for (uint8_t c : colours) s += char('0' + c);
    return s;
  }
  static DeterministicEncoding from_string(int d, const std::string& s) {
    DeterministicEncoding f{d, {}};
    for (char ch : s) {
      int c = ch - '0';
      if (c < 0 || c >= d) throw std::invalid_argument("encoding digit out of range");
      f.colours.push_back((uint8_t)c);
    }
    return f;
  }

  // Colours first appear in increasing order when scanned left to right.
  bool is_canonical() const {
    int next = 0;
    for (uint8_t c : colours) {
      if (c > next) return false;
      if (c == next) ++next;
    }
    return true;
  }
};

struct EncodingEvaluation {
  Rational value;
  // Induced optimal deterministic decoding, ties broken by smallest c.
  std::vector<int> decoding;  // [j * nq + qi] -> c
};

// Proposition-style exact value: numerator sums, over colour j and question
// qi, the best per-colour winning count max_c |{cells of colour j : c wins}|.
inline EncodingEvaluation encoding_value(const DeterministicEncoding& f,
                                         const RetrievalTask& task) {
  if ((int)f.colours.size() != task.num_inputs() || f.d != task.d)
    throw std::invalid_argument("encoding_value: encoding does not match task");
  long long numerator = 0;
  std::vector<int> decoding(task.d * task.nq, 0);
  std::vector<int> count(task.d);
  for (int j = 0; j < task.d; ++j)
    for (int qi = 0; qi < task.nq; ++qi) {
      std::fill(count.begin(), count.end(), 0);
      for (int i = 0; i < task.num_inputs(); ++i)
        if (f.colours[i] == j)
          for (int c = 0; c < task.d; ++c)
            if (task.wins(i, qi, c)) ++count[c];
      int best_c = 0;
      for (int c = 1; c < task.d; ++c)
        if (count[c] > count[best_c]) best_c = c;
      numerator += count[best_c];
      decoding[j * task.nq + qi] = best_c;
    }
  EncodingEvaluation ev;
  ev.value = make_rational(numerator, (long)task.num_contexts());
  ev.decoding = std::move(decoding);
  return ev;
}

// Deterministic classical strategy assembled from a colouring and its
// induced optimal decoding.
inline ClassicalStrategy classical_strategy_from_encoding(const DeterministicEncoding& f,
                                                          const RetrievalTask& task) {
  const auto ev = encoding_value(f, task);
  ClassicalStrategy s;
  s.d = task.d;
  s.nq = task.nq;
  s.encode.assign((size_t)task.num_inputs() * task.d, 0.0);
  for (int i = 0; i < task.num_inputs(); ++i) s.encode[i * task.d + f.colours[i]] = 1.0;
  s.decode.assign((size_t)task.d * task.nq * task.d, 0.0);
  for (int j = 0; j < task.d; ++j)
    for (int qi = 0; qi < task.nq; ++qi)
      s.decode[(j * task.nq + qi) * task.d + ev.decoding[j * task.nq + qi]] = 1.0;
  return s;
}

// Enumerate canonical colourings (restricted growth strings) of n cells with
// at most d colours.
template <class Fn>
inline void for_each_canonical_colouring(int n, int d, Fn&& fn) {
  DeterministicEncoding f{d, std::vector<uint8_t>(n, 0)};
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == n) {
      fn(const_cast<const DeterministicEncoding&>(f));
      return;
    }
    const int limit = std::min(d - 1, used);  // one fresh colour allowed
    for (int c = 0; c <= limit; ++c) {
      f.colours[i] = (uint8_t)c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 0, 0);
}

// Exhaustive exact optimum over all encodings, quotiented by colour
// relabelling. Returns the value and a lexicographically-smallest witness.
inline std::pair<Rational, DeterministicEncoding> exhaustive_classical_value(
    const RetrievalTask& task) {
  if (task.d > 3)
    throw std::invalid_argument(
        "exhaustive_classical_value: d > 3 is infeasible; use random_search_perfect");
  Rational best(-1);
  DeterministicEncoding witness;
  for_each_canonical_colouring(task.num_inputs(), task.d, [&](const DeterministicEncoding& f) {
    const Rational v = encoding_value(f, task).value;
    if (v > best) {
      best = v;
      witness = f;
    }
  });
  return {best, witness};
}

// Exact check that a colouring wins with probability 1: every (colour,
// question) slot must have an answer winning on all cells of that colour.
inline bool verify_perfect(const DeterministicEncoding& f, const RetrievalTask& task) {
  if ((int)f.colours.size() != task.num_inputs()) return false;
  const uint32_t all = (1u << task.d) - 1;
  for (int j = 0; j < task.d; ++j)
    for (int qi = 0; qi < task.nq; ++qi) {
      uint32_t common = all;
      for (int i = 0; i < task.num_inputs(); ++i)
        if (f.colours[i] == j) common &= task.winning_mask(i, qi);
      if (common == 0) return false;
    }
  return true;
}

struct SearchConfig {
  uint64_t seed = 42;
  int restarts = 10000;
  int steps_per_restart = 10000;
  double time_limit_seconds = 600.0;
  int sideways_cap = 100;  // plateau moves tolerated per restart
};

struct SearchResult {
  DeterministicEncoding best;
  Rational best_value;
  bool perfect = false;
  int restarts_used = 0;
  long long steps_used = 0;
  double wall_seconds = 0.0;
};

namespace detail {

// Incremental hill-climbing state. losing[i][qi] enumerates answers that
// lose on cell i; cnt[j][qi][c] counts cells of colour j on which c loses.
// A slot (j, qi) is satisfied when some c has zero losing count.
struct ClimbState {
  const RetrievalTask& task;
  std::vector<std::vector<std::vector<int>>> losing;  // [i][qi] -> list of c
  std::vector<int> cnt;                               // [j][qi][c]
  std::vector<int> zero_count;                        // [j][qi] -> #c with cnt==0
  std::vector<uint8_t> colours;
  int objective = 0;

  explicit ClimbState(const RetrievalTask& t) : task(t) {
    const int n = t.num_inputs();
    losing.resize(n);
    for (int i = 0; i < n; ++i) {
      losing[i].resize(t.nq);
      for (int qi = 0; qi < t.nq; ++qi)
        for (int c = 0; c < t.d; ++c)
          if (!t.wins(i, qi, c)) losing[i][qi].push_back(c);
    }
  }

  int idx(int j, int qi, int c) const { return (j * task.nq + qi) * task.d + c; }

  void reset(const std::vector<uint8_t>& start) {
    colours = start;
    cnt.assign((size_t)task.d * task.nq * task.d, 0);
    for (int i = 0; i < task.num_inputs(); ++i)
      for (int qi = 0; qi < task.nq; ++qi)
        for (int c : losing[i][qi]) ++cnt[idx(colours[i], qi, c)];
    zero_count.assign((size_t)task.d * task.nq, 0);
    objective = 0;
    for (int j = 0; j < task.d; ++j)
      for (int qi = 0; qi < task.nq; ++qi) {
        int zeros = 0;
        for (int c = 0; c < task.d; ++c)
          if (cnt[idx(j, qi, c)] == 0) ++zeros;
        zero_count[j * task.nq + qi] = zeros;
        if (zeros > 0) ++objective;
      }
  }

  // Recolour cell i to colour b, updating the objective. Returns old colour.
  int recolour(int i, int b) {
    const int a = colours[i];
    if (a == b) return a;
    for (int qi = 0; qi < task.nq; ++qi)
      for (int c : losing[i][qi]) {
        int& ca = cnt[idx(a, qi, c)];
        if (--ca == 0 && ++zero_count[a * task.nq + qi] == 1) ++objective;
        int& cb = cnt[idx(b, qi, c)];
        if (cb++ == 0 && --zero_count[b * task.nq + qi] == 0) --objective;
      }
    colours[i] = (uint8_t)b;
    return a;
  }
};

}  // namespace detail

// Randomized restarts + hill climbing toward a perfect colouring. The
// objective counts (colour, question) slots that are fully avoidable; a
// colouring is perfect when all d * nq slots are satisfied. Deterministic
// given the seed.
inline SearchResult random_search_perfect(const RetrievalTask& task, const SearchConfig& cfg) {
  if (task.d < 5)
    throw std::invalid_argument("random_search_perfect: use exhaustive search for d <= 3");
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  std::mt19937_64 rng(cfg.seed);
  const int n = task.num_inputs();
  const int target = task.d * task.nq;
  std::uniform_int_distribution<int> cell_dist(0, n - 1);
  std::uniform_int_distribution<int> colour_dist(0, task.d - 1);

  detail::ClimbState state(task);
  SearchResult result;
  result.best_value = Rational(-1);
  long long steps = 0;
  bool timed_out = false;

  for (int r = 0; r < cfg.restarts && !timed_out; ++r) {
    result.restarts_used = r + 1;
    std::vector<uint8_t> start(n);
    for (auto& c : start) c = (uint8_t)colour_dist(rng);
    state.reset(start);
    int best_in_restart = state.objective;
    int sideways = 0;
    for (int s = 0; s < cfg.steps_per_restart; ++s) {
      if (state.objective == target) break;
      if ((++steps & 0x3ff) == 0 && elapsed() > cfg.time_limit_seconds) {
        timed_out = true;
        break;
      }
      const int i = cell_dist(rng);
      const int b = colour_dist(rng);
      const int before = state.objective;
      const int a = state.recolour(i, b);
      if (state.objective > before) {
        best_in_restart = state.objective;
      } else if (state.objective == before && sideways < cfg.sideways_cap) {
        ++sideways;
      } else {
        state.recolour(i, a);  // reject
      }
    }
    (void)best_in_restart;
    DeterministicEncoding f{task.d, state.colours};
    const Rational v = encoding_value(f, task).value;
    if (v > result.best_value) {
      result.best_value = v;
      result.best = f;
    }
    if (state.objective == target) {
      if (!verify_perfect(f, task))
        throw std::runtime_error("random_search_perfect: objective/verification mismatch");
      result.perfect = true;
      result.best = f;
      result.best_value = encoding_value(f, task).value;
      break;
    }
  }
  result.steps_used = steps;
  result.wall_seconds = elapsed();
  return result;
}

// Known optimal colourings for the small games (witnesses of the d=2 and
// d=3 optima); the d=3 colouring matches the explicit hidden-variable model
// in contextuality.hpp.
inline DeterministicEncoding optimal_encoding_d2() {
  return DeterministicEncoding::from_string(2, "0001");
}
inline DeterministicEncoding optimal_encoding_d3() {
  return DeterministicEncoding::from_string(3, "001102221");
}

}  // namespace torpedo
