#pragma once

// JSON interchange for the CLI. Question labels are the slopes "0".."d-1"
// plus "inf"; behaviours list one table row per (input, question) context.
// Complex matrices serialize as row-major arrays with interleaved re/im.

#include <json.hpp>

#include "torpedo/classical_search.hpp"
#include "torpedo/contextuality.hpp"
#include "torpedo/tasks.hpp"
#include "torpedo/transformational.hpp"
#include "torpedo/wigner.hpp"

namespace torpedo {

using Json = nlohmann::ordered_json;

inline std::string question_label(int qi, int d) {
  return qi == q_infinity(d) ? "inf" : std::to_string(qi);
}

inline std::vector<std::string> question_labels(int nq, int d) {
  std::vector<std::string> labels;
  for (int qi = 0; qi < nq; ++qi) labels.push_back(question_label(qi, d));
  return labels;
}

inline Json task_to_json(const RetrievalTask& task) {
  Json j;
  j["name"] = task.name;
  j["d"] = task.d;
  j["n"] = task.input_sizes.size();
  j["input_sizes"] = task.input_sizes;
  j["questions"] = question_labels(task.nq, task.d);
  Json rows = Json::array();
  for (int i = 0; i < task.num_inputs(); ++i) {
    for (int qi = 0; qi < task.nq; ++qi) {
      Json row;
      row["input"] = task.unpack_input(i);
      row["question"] = question_label(qi, task.d);
      row["winning_mask"] = task.winning_mask(i, qi);
      rows.push_back(std::move(row));
    }
  }
  j["winning"] = std::move(rows);
  return j;
}

inline Json behaviour_to_json(const EmpiricalBehaviour& e) {
  Json j;
  j["d"] = e.d;
  j["n"] = e.input_sizes.size();
  j["input_sizes"] = e.input_sizes;
  j["questions"] = question_labels(e.nq, e.d);
  Json rows = Json::array();
  for (int i = 0; i < e.num_inputs(); ++i) {
    std::vector<int> tuple(e.input_sizes.size());
    int rem = i;
    for (int s = (int)tuple.size() - 1; s >= 0; --s) {
      tuple[s] = rem % e.input_sizes[s];
      rem /= e.input_sizes[s];
    }
    for (int qi = 0; qi < e.nq; ++qi) {
      Json row;
      row["input"] = tuple;
      row["question"] = question_label(qi, e.d);
      std::vector<double> probs(e.d);
      for (int c = 0; c < e.d; ++c) probs[c] = e.at(i, qi, c);
      row["probs"] = probs;
      rows.push_back(std::move(row));
    }
  }
  j["table"] = std::move(rows);
  j["quasi"] = e.quasi;
  return j;
}

inline EmpiricalBehaviour behaviour_from_json(const Json& j) {
  EmpiricalBehaviour e;
  e.d = j.at("d").get<int>();
  e.input_sizes = j.at("input_sizes").get<std::vector<int>>();
  const auto questions = j.at("questions").get<std::vector<std::string>>();
  e.nq = (int)questions.size();
  e.quasi = j.value("quasi", false);
  e.table.assign((size_t)e.num_inputs() * e.nq * e.d, 0.0);
  auto question_index = [&](const std::string& label) {
    for (int qi = 0; qi < e.nq; ++qi)
      if (questions[qi] == label) return qi;
    throw std::invalid_argument("behaviour_from_json: unknown question label " + label);
  };
  size_t rows_seen = 0;
  for (const auto& row : j.at("table")) {
    const auto tuple = row.at("input").get<std::vector<int>>();
    if (tuple.size() != e.input_sizes.size())
      throw std::invalid_argument("behaviour_from_json: input arity mismatch");
    int input = 0;
    for (size_t s = 0; s < tuple.size(); ++s) {
      if (tuple[s] < 0 || tuple[s] >= e.input_sizes[s])
        throw std::invalid_argument("behaviour_from_json: input out of range");
      input = input * e.input_sizes[s] + tuple[s];
    }
    const int qi = question_index(row.at("question").get<std::string>());
    const auto probs = row.at("probs").get<std::vector<double>>();
    if ((int)probs.size() != e.d)
      throw std::invalid_argument("behaviour_from_json: probs length mismatch");
    for (int c = 0; c < e.d; ++c) e.at(input, qi, c) = probs[c];
    ++rows_seen;
  }
  if (rows_seen != (size_t)e.num_inputs() * e.nq)
    throw std::invalid_argument("behaviour_from_json: incomplete table");
  e.validate();
  return e;
}

inline Json wigner_to_json(const WignerGrid& w) {
  Json j;
  j["d"] = w.d;
  Json rows = Json::array();
  for (int x = 0; x < w.d; ++x) {
    std::vector<double> row(w.d);
    for (int z = 0; z < w.d; ++z) row[z] = w.values(x, z);
    rows.push_back(row);
  }
  j["values"] = std::move(rows);
  j["negativity"] = negativity(w);
  return j;
}

inline Json search_config_to_json(const SearchConfig& cfg) {
  return Json{{"seed", cfg.seed},
              {"restarts", cfg.restarts},
              {"steps_per_restart", cfg.steps_per_restart},
              {"time_limit_seconds", cfg.time_limit_seconds},
              {"sideways_cap", cfg.sideways_cap}};
}

inline Json search_result_to_json(const SearchResult& r, const SearchConfig& cfg) {
  Json j;
  j["config"] = search_config_to_json(cfg);
  j["perfect"] = r.perfect;
  j["best_encoding"] = r.best.to_string();
  j["best_value"] = rational_to_string(r.best_value);
  j["restarts_used"] = r.restarts_used;
  j["steps_used"] = r.steps_used;
  return j;
}

inline std::string decoding_to_string(const std::vector<int>& decoding) {
  std::string s;
  for (int c : decoding) s += (char)('0' + c);
  return s;
}

inline Json decomposition_to_json(const DecompositionResult& r) {
  Json j;
  j["ncf"] = r.ncf;
  j["cf"] = r.cf;
  Json weights = Json::array();
  for (const auto& [vertex, w] : r.weights) {
    std::string enc;
    for (uint8_t c : vertex.encoding) enc += (char)('0' + c);
    weights.push_back(Json{{"encoding", enc},
                           {"decoding", decoding_to_string(vertex.decoding)},
                           {"weight", w}});
  }
  j["weights"] = std::move(weights);
  j["dual"] = r.dual;
  j["checks"] = Json{{"primal_dual_gap", r.primal_dual_gap},
                     {"feasibility_residual", r.feasibility_residual}};
  return j;
}

inline Json matrix_to_json(const Matrix& m) {
  std::vector<double> flat;
  flat.reserve(2 * m.size());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      flat.push_back(m(r, c).real());
      flat.push_back(m(r, c).imag());
    }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re_im", flat}};
}

inline Json real_matrix_to_json(const Eigen::MatrixXd& m) {
  std::vector<double> flat;
  flat.reserve(m.size());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", flat}};
}

inline Json quantum_strategy_to_json(const QuantumStrategy& s) {
  Json j;
  j["hermitian_only"] = s.hermitian_only;
  Json states = Json::array();
  for (const auto& rho : s.states) states.push_back(matrix_to_json(rho));
  j["states"] = std::move(states);
  Json families = Json::array();
  for (const auto& family : s.projectors) {
    Json f = Json::array();
    for (const auto& p : family) f.push_back(matrix_to_json(p));
    families.push_back(std::move(f));
  }
  j["projectors"] = std::move(families);
  return j;
}

inline Json transformation_strategy_to_json(const TransformationStrategy& s) {
  Json j;
  j["d"] = s.d;
  for (const auto& [key, family] :
       {std::pair{"gates_x", &s.gates_x}, {"gates_z", &s.gates_z}, {"gates_q", &s.gates_q}}) {
    Json f = Json::array();
    for (const auto& g : *family) f.push_back(real_matrix_to_json(g));
    j[key] = std::move(f);
  }
  return j;
}

}  // namespace torpedo
