#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "enumeration_oracle.hpp"
#include "pricing/dp.hpp"

using namespace pricing;

namespace {

PricingProblem one_period_problem() {
  PricingProblem p;
  p.horizon = 1;
  p.unsold_cost = 0.0;
  p.demand = {std::exp(2.0) / 3.0, 3.0};
  p.disturbance = Degenerate{1.0};
  return p;
}

PricingProblem example_problem() {
  PricingProblem p;
  p.demand = {std::exp(2.0) / 3.0, 3.0};
  return p;
}

}  // namespace

TEST_CASE("state grid is equispaced with exact endpoints") {
  const StateGrid g(201);
  CHECK(g.size() == 201);
  CHECK(g[0] == 0.0);
  CHECK(g[200] == 1.0);
  for (int i = 1; i < g.size(); ++i) CHECK(g[i] - g[i - 1] == doctest::Approx(0.005));
  CHECK_THROWS_AS(StateGrid(1), ValidationError);
}

TEST_CASE("interpolate") {
  const StateGrid g(11);
  std::vector<double> ident(g.points().begin(), g.points().end());
  CHECK(interpolate(g, ident, 0.37) == doctest::Approx(0.37).epsilon(1e-15));

  std::vector<double> row(11);
  for (int i = 0; i < 11; ++i) row[static_cast<std::size_t>(i)] = std::sin(3.0 * i) + i * i;
  for (int i = 0; i < 11; ++i) CHECK(interpolate(g, row, g[i]) == row[static_cast<std::size_t>(i)]);

  const StateGrid two(2);
  const std::vector<double> ends = {0.0, -1.0};
  CHECK(interpolate(two, ends, 0.25) == doctest::Approx(-0.25));

  CHECK_THROWS_AS(interpolate(g, row, -1e-9), std::domain_error);
  CHECK_THROWS_AS(interpolate(g, row, 1.0 + 1e-9), std::domain_error);
}

TEST_CASE("nodal exactness on a large grid") {
  const StateGrid g(201);
  std::vector<double> row(201);
  for (int i = 0; i < 201; ++i) row[static_cast<std::size_t>(i)] = std::cos(0.1 * i);
  for (int i = 0; i < 201; ++i) REQUIRE(interpolate(g, row, g[i]) == row[static_cast<std::size_t>(i)]);
}

TEST_CASE("expected stage value: one period with w = 1") {
  const PricingProblem p = one_period_problem();
  const StateGrid g(201);
  std::vector<double> terminal(201, 0.0);  // C = 0
  DisturbanceSamples one{{1.0}, {1.0}};
  // q(1/3) = e/3 < 1, so the value is (1/3) q(1/3) = e/9.
  CHECK(expected_stage_value(p, 1.0, 1.0 / 3.0, one, terminal, g) ==
        doctest::Approx(std::exp(1.0) / 9.0).epsilon(1e-12));
}

TEST_CASE("expected stage value at zero stock is the next-row value at 0") {
  PricingProblem p = example_problem();
  const StateGrid g(11);
  std::vector<double> next(11);
  for (int i = 0; i < 11; ++i) next[static_cast<std::size_t>(i)] = 0.3 - i * 0.01;
  Rng rng = make_stream(1, {});
  const auto samples = expectation_samples(p.disturbance, 50, rng);
  for (double a : {0.0, 0.5, 1.0})
    CHECK(expected_stage_value(p, 0.0, a, samples, next, g) == doctest::Approx(0.3));
}

TEST_CASE("expected stage value with a single sample matches step + interpolate") {
  PricingProblem p = example_problem();
  p.unsold_cost = 0.7;
  const StateGrid g(41);
  std::vector<double> next(41);
  for (int i = 0; i < 41; ++i) next[static_cast<std::size_t>(i)] = -0.7 * g[i] + 0.1 * std::sin(5 * g[i]);
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double s = u(gen);
    const double a = u(gen);
    const double w = 0.5 + u(gen);
    const DisturbanceSamples one{{w}, {1.0}};
    const StepResult r = step(s, a, w, p.demand);
    const double direct = r.revenue + interpolate(g, next, r.next_stock);
    CHECK(expected_stage_value(p, s, a, one, next, g) == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("maximise_on_interval finds interior and boundary optima") {
  const auto interior = maximise_on_interval([](double a) { return -(a - 0.3337) * (a - 0.3337); },
                                             {0.0, 1.0}, 51, 30);
  CHECK(interior.argmax == doctest::Approx(0.3337).epsilon(1e-6));
  const auto edge = maximise_on_interval([](double a) { return a; }, {0.2, 0.9}, 11, 20);
  CHECK(edge.argmax == 0.9);
  // ties: lowest price wins
  const auto flat = maximise_on_interval([](double) { return 1.0; }, {0.0, 1.0}, 11, 20);
  CHECK(flat.argmax == 0.0);
}

TEST_CASE("argmax is stable under a common additive shift") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double c1 = u(gen), c2 = u(gen), c3 = u(gen), shift = 10.0 * u(gen);
    auto f = [&](double a) { return c1 * std::sin(7 * a + c2) + c3 * a; };
    const auto base = maximise_on_interval(f, {0.0, 1.0}, 101, 20);
    const auto moved = maximise_on_interval([&](double a) { return f(a) + shift; }, {0.0, 1.0}, 101, 20);
    CHECK(base.argmax == doctest::Approx(moved.argmax).epsilon(1e-9));
  }
}

TEST_CASE("solve_bellman: analytic one-period optimum") {
  SolverConfig cfg;
  cfg.grid_size = 201;
  cfg.price_grid = 401;
  const ValuePolicyTable table = solve_bellman(one_period_problem(), cfg);
  CHECK(std::abs(table.value(200, 0) - std::exp(1.0) / 9.0) < 1e-3);
  CHECK(std::abs(table.policy(200, 0) - 1.0 / 3.0) < 5e-3);
}

TEST_CASE("solve_bellman: terminal row, bounds, zero-stock row") {
  PricingProblem p = example_problem();
  SolverConfig cfg;
  cfg.grid_size = 51;
  cfg.price_grid = 51;
  cfg.n_exp = 200;
  const ValuePolicyTable table = solve_bellman(p, cfg);
  const StateGrid& g = table.grid();
  for (int i = 0; i < g.size(); ++i) {
    CHECK(table.value(i, p.horizon) == -p.unsold_cost * g[i]);
    for (int t = 0; t < p.horizon; ++t) {
      CHECK(table.value(i, t) >= -p.unsold_cost * g[i] - 1e-12);
      CHECK(table.value(i, t) <= g[i] + 1e-12);
      CHECK(p.prices.contains(table.policy(i, t)));
    }
  }
  for (int t = 0; t <= p.horizon; ++t) CHECK(table.value(0, t) == 0.0);
}

TEST_CASE("solve_bellman is deterministic for a seed") {
  PricingProblem p = example_problem();
  SolverConfig cfg;
  cfg.grid_size = 31;
  cfg.price_grid = 31;
  cfg.n_exp = 100;
  cfg.seed = 77;
  CHECK(solve_bellman(p, cfg) == solve_bellman(p, cfg));
  SolverConfig other = cfg;
  other.seed = 78;
  CHECK_FALSE(solve_bellman(p, cfg) == solve_bellman(p, other));
}

TEST_CASE("solve_bellman matches exhaustive enumeration on grid-landing instances") {
  std::mt19937_64 gen(20171);
  for (int trial = 0; trial < 10; ++trial) {
    const oracle::GridInstance inst = oracle::random_instance(gen);
    SolverConfig cfg;
    cfg.grid_size = inst.grid_size;
    cfg.price_grid = static_cast<int>(inst.price_grid.size());
    cfg.refine_iters = 0;
    const ValuePolicyTable table = solve_bellman(inst.problem, cfg);
    const StateGrid& g = table.grid();
    for (int i = 0; i < g.size(); ++i) {
      CHECK(table.value(i, 1) ==
            doctest::Approx(oracle::last_period_value(inst.problem, inst.price_grid, g[i])).epsilon(1e-10));
      CHECK(std::abs(table.value(i, 0) -
                     oracle::two_period_value(inst.problem, inst.price_grid, g[i])) < 1e-10);
    }
  }
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.grid_size = 1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.price_grid = 1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.n_exp = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.refine_iters = -1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
