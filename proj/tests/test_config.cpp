#include <sstream>

#include "doctest.h"
#include "pricing/config.hpp"

using namespace pricing;

TEST_CASE("defaults are the reference example system") {
  const ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  const PricingProblem p = c.problem();
  CHECK(p.horizon == 3);
  CHECK(p.unsold_cost == 1.0);
  CHECK(p.demand.q2 == 3.0);
  CHECK(std::get<ShiftedBeta>(p.disturbance).gamma == 0.05);
  CHECK(c.seed == 2017);
}

TEST_CASE("emit then parse round-trips every key") {
  ExperimentConfig c;
  c.horizon = 5;
  c.unsold_cost = 0.25;
  c.gamma = 0.1;
  c.q1 = 4.0 / 3.0;
  c.q2 = 8.0 / 3.0;
  c.a_min = 0.1;
  c.grid_size = 101;
  c.n_sim = 77;
  c.olfc_tol = 1e-5;
  c.seed = 18446744073709551615ull;
  c.out = "x.csv";
  c.policy_b = "olfc";
  c.sweep_q1 = {1.0, 2.5};
  c.sweep_q2 = {0.1};
  c.sweep_cases = {{0.25, 0.05}, {1.0, 0.1}};
  std::stringstream ss;
  emit_config(c, ss);
  CHECK(parse_config(ss) == c);
}

TEST_CASE("parser accepts comments and whitespace") {
  std::istringstream in("# header\n  T = 4   # trailing\n\nC=0.5\ndisturbance = degenerate\nw = 1.2\n");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.horizon == 4);
  CHECK(c.unsold_cost == 0.5);
  CHECK(std::get<Degenerate>(c.problem().disturbance).w == 1.2);
}

TEST_CASE("unknown keys and bad values are rejected") {
  ExperimentConfig c;
  CHECK_THROWS_AS(set_config_value(c, "bogus", "1"), ValidationError);
  CHECK_THROWS_AS(set_config_value(c, "T", "three"), ValidationError);
  CHECK_THROWS_AS(set_config_value(c, "T", "3.5"), ValidationError);
  CHECK_THROWS_AS(set_config_value(c, "C", "1x"), ValidationError);
  CHECK_THROWS_AS(set_config_value(c, "sweep_cases", "1;2"), ValidationError);
  std::istringstream no_eq("T 3\n");
  CHECK_THROWS_AS(parse_config(no_eq), ValidationError);
}

TEST_CASE("validation names invalid settings") {
  ExperimentConfig c;
  c.gamma = 0.3;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.a_min = 0.6;
  c.a_max = 0.4;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.policy_b = "greedy";
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.disturbance = "normal";
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-7) == "-2.5e-07");
  const double third = 1.0 / 3.0;
  CHECK(std::stod(format_number(third)) == third);
  CHECK(parse_number_list("1, 2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
  CHECK(parse_cases("0.25:0.05,1:0.1") == std::vector<CostNoise>{{0.25, 0.05}, {1.0, 0.1}});
}
