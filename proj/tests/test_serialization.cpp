#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torpedo/serialization.hpp"

using namespace torpedo;

TEST_CASE("behaviour JSON round trip") {
  const RetrievalTask t = torpedo_task(3);
  const EmpiricalBehaviour e = behaviour_from_classical(
      classical_strategy_from_encoding(optimal_encoding_d3(), t), t);
  const Json j = behaviour_to_json(e);
  CHECK(j.at("d") == 3);
  CHECK(j.at("n") == 2);
  CHECK(j.at("questions") == Json::array({"0", "1", "2", "inf"}));
  CHECK(j.at("table").size() == 36);
  CHECK(j.at("quasi") == false);
  const EmpiricalBehaviour back = behaviour_from_json(j);
  CHECK(back.d == e.d);
  CHECK(back.nq == e.nq);
  CHECK(back.input_sizes == e.input_sizes);
  for (size_t i = 0; i < e.table.size(); ++i) CHECK(back.table[i] == e.table[i]);
}

TEST_CASE("behaviour JSON validation") {
  const RetrievalTask t = torpedo_task(2);
  const EmpiricalBehaviour e = behaviour_from_quantum(qubit_torpedo_strategy(), t);
  Json j = behaviour_to_json(e);
  Json truncated = j;
  truncated["table"].erase(0);
  CHECK_THROWS(behaviour_from_json(truncated));
  Json badq = j;
  badq["table"][0]["question"] = "7";
  CHECK_THROWS(behaviour_from_json(badq));
  Json badlen = j;
  badlen["table"][0]["probs"] = Json::array({0.5});
  CHECK_THROWS(behaviour_from_json(badlen));
  Json badinput = j;
  badinput["table"][0]["input"] = Json::array({0, 5});
  CHECK_THROWS(behaviour_from_json(badinput));
  Json missing = j;
  missing.erase("d");
  CHECK_THROWS(behaviour_from_json(missing));
  // unnormalized rows fail validation
  Json unnorm = j;
  unnorm["table"][0]["probs"] = Json::array({0.9, 0.9});
  CHECK_THROWS(behaviour_from_json(unnorm));
}

TEST_CASE("task serialization") {
  const Json j = task_to_json(modified_torpedo_task(5));
  CHECK(j.at("name") == "modified_torpedo");
  CHECK(j.at("input_sizes") == Json::array({5, 5, 2}));
  CHECK(j.at("winning").size() == 50 * 6);
  // the infinite-slope mask has exactly two winning answers
  int found = 0;
  for (const auto& row : j.at("winning"))
    if (row.at("question") == "inf") {
      const uint32_t mask = row.at("winning_mask").get<uint32_t>();
      CHECK(__builtin_popcount(mask) == 2);
      ++found;
    }
  CHECK(found == 50);
}

TEST_CASE("wigner grid serialization") {
  const Vector v = perfect_message_state(3, 2, 0, 0);
  const WignerGrid w = wigner_function(Matrix(v * v.adjoint()), 3);
  const Json j = wigner_to_json(w);
  CHECK(j.at("d") == 3);
  CHECK(j.at("values")[2][0].get<double>() == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(j.at("negativity").get<double>() == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("search result serialization echoes the config") {
  SearchConfig cfg;
  cfg.seed = 7;
  cfg.restarts = 3;
  cfg.steps_per_restart = 500;
  const SearchResult r = random_search_perfect(torpedo_task(5), cfg);
  const Json j = search_result_to_json(r, cfg);
  CHECK(j.at("config").at("seed") == 7);
  CHECK(j.at("config").at("restarts") == 3);
  CHECK(j.at("best_encoding").get<std::string>() == r.best.to_string());
  CHECK(j.at("best_value").get<std::string>() == rational_to_string(r.best_value));
}

TEST_CASE("decomposition serialization") {
  const RetrievalTask t = torpedo_task(2);
  const EmpiricalBehaviour e = behaviour_from_classical(
      classical_strategy_from_encoding(optimal_encoding_d2(), t), t);
  const Json j = decomposition_to_json(ncf_full_enumeration(e, t));
  CHECK(j.at("ncf").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j.at("weights").size() >= 1);
  for (const auto& w : j.at("weights")) {
    CHECK(w.at("encoding").get<std::string>().size() == 4);
    CHECK(w.at("decoding").get<std::string>().size() == 6);
    CHECK(w.at("weight").get<double>() > 0);
  }
  CHECK(j.at("checks").at("primal_dual_gap").get<double>() < 1e-7);
}

TEST_CASE("matrix serialization shapes") {
  const Json j = matrix_to_json(pauli_z(3));
  CHECK(j.at("rows") == 3);
  CHECK(j.at("re_im").size() == 18);
  const Json r = real_matrix_to_json(shift_gate(3, 1));
  CHECK(r.at("entries").size() == 9);
  const Json q = quantum_strategy_to_json(perfect_torpedo_strategy(3));
  CHECK(q.at("states").size() == 9);
  CHECK(q.at("projectors").size() == 4);
  const Json ts = transformation_strategy_to_json(reversible_gate_strategy_d3());
  CHECK(ts.at("gates_q").size() == 4);
}

TEST_CASE("rational strings") {
  CHECK(rational_to_string(make_rational(11, 12)) == "11/12");
  CHECK(rational_to_string(make_rational(6, 8)) == "3/4");
  CHECK(rational_to_string(Rational(1)) == "1");
}
