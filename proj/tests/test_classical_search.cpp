#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torpedo/classical_search.hpp"

using namespace torpedo;

TEST_CASE("encoding strings") {
  const DeterministicEncoding f = DeterministicEncoding::from_string(3, "001102221");
  CHECK(f.to_string() == "001102221");
  CHECK(f.is_canonical());
  CHECK(DeterministicEncoding::from_string(3, "010").is_canonical());
  CHECK(!DeterministicEncoding::from_string(3, "100").is_canonical());
  CHECK(!DeterministicEncoding::from_string(3, "002").is_canonical());
  CHECK_THROWS(DeterministicEncoding::from_string(2, "012"));
}

TEST_CASE("canonical colouring counts") {
  // restricted growth strings: B_n-style counts with at most d blocks
  int count = 0;
  for_each_canonical_colouring(4, 2, [&](const DeterministicEncoding&) { ++count; });
  CHECK(count == 8);
  count = 0;
  for_each_canonical_colouring(9, 3, [&](const DeterministicEncoding& f) {
    CHECK(f.is_canonical());
    ++count;
  });
  CHECK(count == 3281);
}

TEST_CASE("exact values of the known optimal encodings") {
  CHECK(encoding_value(optimal_encoding_d2(), torpedo_task(2)).value == make_rational(3, 4));
  CHECK(encoding_value(optimal_encoding_d3(), torpedo_task(3)).value == make_rational(11, 12));
}

TEST_CASE("exhaustive classical values") {
  CHECK(exhaustive_classical_value(torpedo_task(2)).first == make_rational(3, 4));
  CHECK(exhaustive_classical_value(torpedo_task(3)).first == make_rational(11, 12));
  CHECK(exhaustive_classical_value(qrac_task(2, 2)).first == make_rational(3, 4));
  CHECK_THROWS(exhaustive_classical_value(torpedo_task(5)));
}

TEST_CASE("induced strategy reproduces the encoding value") {
  for (int d : {2, 3}) {
    const RetrievalTask t = torpedo_task(d);
    const DeterministicEncoding f = d == 2 ? optimal_encoding_d2() : optimal_encoding_d3();
    const ClassicalStrategy s = classical_strategy_from_encoding(f, t);
    const double direct = encoding_value(f, t).value.get_d();
    CHECK(task_value(t, behaviour_from_classical(s, t)) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("perfect verification is exact") {
  // no perfect classical strategy exists at d = 3
  CHECK(!verify_perfect(optimal_encoding_d3(), torpedo_task(3)));
  bool any_perfect = false;
  for_each_canonical_colouring(9, 3, [&](const DeterministicEncoding& f) {
    any_perfect = any_perfect || verify_perfect(f, torpedo_task(3));
  });
  CHECK(!any_perfect);
  // regression: a perfect d=5 colouring found by the seeded search
  const DeterministicEncoding f5 =
      DeterministicEncoding::from_string(5, "3303402311241121430430201");
  CHECK(verify_perfect(f5, torpedo_task(5)));
  CHECK(encoding_value(f5, torpedo_task(5)).value == 1);
}

TEST_CASE("randomized search finds perfect colourings and is deterministic") {
  SearchConfig cfg;
  cfg.seed = 42;
  cfg.restarts = 50;
  cfg.steps_per_restart = 5000;
  cfg.time_limit_seconds = 120.0;
  const RetrievalTask t5 = torpedo_task(5);
  const SearchResult a = random_search_perfect(t5, cfg);
  CHECK(a.perfect);
  CHECK(verify_perfect(a.best, t5));
  CHECK(a.best_value == 1);
  const SearchResult b = random_search_perfect(t5, cfg);
  CHECK(b.best.to_string() == a.best.to_string());
  CHECK(b.steps_used == a.steps_used);
  CHECK_THROWS(random_search_perfect(torpedo_task(3), cfg));  // exhaustive regime
}

TEST_CASE("search reports a non-perfect outcome on the modified game") {
  SearchConfig cfg;
  cfg.seed = 42;
  cfg.restarts = 5;
  cfg.steps_per_restart = 2000;
  cfg.time_limit_seconds = 30.0;
  const SearchResult r = random_search_perfect(modified_torpedo_task(5), cfg);
  CHECK(!r.perfect);
  CHECK(r.best_value < 1);
  CHECK(r.best_value > make_rational(1, 2));
}
