#include <doctest.h>

#include <sstream>

#include "capflp/error.hpp"
#include "capflp/io.hpp"

using namespace capflp;

TEST_CASE("instance formats") {
  const auto x = make_instance({0.9, 0, 0.3});
  CHECK(instance_from_json(to_json(x)) == x);
  CHECK(instance_from_csv(instance_to_csv(x)) == x);
  CHECK(parse_instance_text("  [0.5, 0.25]") == make_instance({0.25, 0.5}));
  CHECK(parse_instance_text("position\n0.5\n0.25\n") == make_instance({0.25, 0.5}));
  CHECK_THROWS_AS(parse_instance_text("[0.5, \"a\"]"), Error);
  CHECK_THROWS_AS(parse_instance_text("position\nabc\n"), Error);
  CHECK_THROWS_AS(parse_instance_text("[2.0]"), Error);
  CHECK_THROWS_AS(parse_instance_text("[]"), Error);
}

TEST_CASE("distribution formats") {
  const DistributionSpec specs[] = {UniformDist{}, TriangularDist{}, BetaDist{2, 3},
                                    MixtureDist{{0.5, 0.25, 0.25}, BetaDist{5, 5}}};
  for (const auto& s : specs) CHECK(to_json(distribution_from_json(to_json(s))) == to_json(s));
  CHECK(std::holds_alternative<UniformDist>(parse_distribution("uniform")));
  CHECK(std::holds_alternative<TriangularDist>(parse_distribution("triangular")));
  CHECK(std::holds_alternative<BetaDist>(parse_distribution(R"({"kind":"beta","alpha":2,"beta":2})")));
  CHECK_THROWS_AS(parse_distribution("gaussian"), Error);
  CHECK_THROWS_AS(parse_distribution(R"({"kind":"beta","alpha":-1,"beta":2})"), Error);
}

TEST_CASE("profiles, percentiles, capacities") {
  const StrategyProfile s{0, 0, 1, 1, 1};
  CHECK(to_json(s) == nlohmann::json::parse("[1,1,2,2,2]"));
  CHECK(profile_from_json(to_json(s)) == s);
  CHECK_THROWS_AS(profile_from_json(nlohmann::json::parse("[0, 1]")), Error);

  const PercentileVector v({0.1, 0.9}, {1, 0});
  CHECK(percentile_from_json(to_json(v)) == v);
  CHECK(percentile_from_json(nlohmann::json::parse("[0.25, 0.75]")) == PercentileVector{0.25, 0.75});
  CHECK_THROWS_AS(percentile_from_json(nlohmann::json::parse("[0.75, 0.25]")), Error);

  CHECK(parse_capacities("2,2") == CapacityVector{2, 2});
  CHECK(parse_capacities("[3, 1]") == CapacityVector{3, 1});
  CHECK_THROWS_AS(parse_capacities("2,x"), Error);
  CHECK_THROWS_AS(parse_capacities("2,0"), Error);
}

TEST_CASE("placement and planar formats") {
  const double ys[] = {0.3, 0.5};
  const auto p = line_placement(ys, CapacityVector{2, 2});
  CHECK(placement_from_json(to_json(p)) == p);
  CHECK(to_json(p).at("metric") == "line");

  const auto x = make_planar_instance({{0.1, 0.2}, {0.3, 0.4}});
  const auto back = planar_instance_from_json(to_json(x));
  CHECK(back.points()[1] == Point{0.3, 0.4});
  const PercentileMatrix V({PercentileVector{0, 0.3}, PercentileVector{0, 0}});
  CHECK(percentile_matrix_from_json(to_json(V)).rows()[0] == V.rows()[0]);
  CHECK_THROWS_AS(planar_instance_from_json(nlohmann::json::parse("[[0.1]]")), Error);
}

TEST_CASE("result records") {
  const auto r = to_json(ar_wg(10, 3, 2, 2, 9));
  CHECK(r.at("ratio").get<double>() == doctest::Approx(1.25));
  CHECK(r.contains("case"));
  CHECK(r.at("num").get<double>() / r.at("den").get<double>() == doctest::Approx(1.25));
  CHECK_FALSE(r.contains("approximate"));

  const auto b = to_json(best_wg_vector(10, 2, 2));
  CHECK(b.at("case_label") == "thm5-i");
  CHECK(b.at("indices") == nlohmann::json::parse("[1, 9]"));

}

TEST_CASE("outcome CSV") {
  const auto inst = make_instance({0, 0.3, 0.4, 0.5, 0.9});
  const double ys[] = {0.3, 0.5};
  const StrategyProfile s{0, 0, 0, 1, 1};
  const auto outcome = resolve_outcome(inst, line_placement(ys, CapacityVector{2, 2}), s, PriorityRule::by_index(5));
  std::ostringstream out;
  write_outcome_csv(out, inst.positions(), s, outcome);
  const auto text = out.str();
  CHECK(text.rfind("agent,position,strategy,served,utility\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 6);
  CHECK(text.find("\n1,0,1,") != std::string::npos);
}

TEST_CASE("file helpers") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), Error);
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/file.json", "x"), Error);
}
