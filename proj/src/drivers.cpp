#include "pricing/drivers.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

#include "pricing/sim.hpp"

namespace pricing {

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) throw std::runtime_error("non-finite value in output");
  return format_number(x);
}

void write_histogram(const Histogram& h, const std::string& prefix, std::ostream& out) {
  out << prefix << "_edges:";
  for (double e : h.edges) out << ' ' << num(e);
  out << '\n' << prefix << "_counts:";
  for (std::size_t c : h.counts) out << ' ' << c;
  out << '\n';
}

struct SweepCell {
  double cost;
  double gamma;
  double q1;
  double q2;
};

}  // namespace

std::unique_ptr<Policy> make_policy(const std::string& name, const ExperimentConfig& cfg,
                                    std::shared_ptr<const ValuePolicyTable> table) {
  const PricingProblem p = cfg.problem();
  if (name == "bellman") {
    if (!table)
      table = std::make_shared<const ValuePolicyTable>(solve_bellman(p, cfg.solver()));
    return std::make_unique<BellmanPolicy>(std::move(table));
  }
  if (name == "cec") return std::make_unique<CecPolicy>(p);
  if (name == "olfc") return std::make_unique<OlfcPolicy>(p, cfg.olfc());
  throw ValidationError("unknown policy '" + name + "'");
}

void write_solve_csv(const PricingProblem& p, const ValuePolicyTable& table,
                     std::ostream& csv) {
  const int horizon = table.horizon();
  csv << 's';
  for (int t = 0; t <= horizon; ++t) csv << ",v_t" << t;
  for (int t = 0; t < horizon; ++t) csv << ",aB_t" << t;
  for (int t = 0; t < horizon; ++t) csv << ",aC_t" << t;
  csv << '\n';
  const StateGrid& grid = table.grid();
  for (int i = 0; i < grid.size(); ++i) {
    csv << num(grid[i]);
    for (int t = 0; t <= horizon; ++t) csv << ',' << num(table.value(i, t));
    for (int t = 0; t < horizon; ++t) csv << ',' << num(table.policy(i, t));
    for (int t = 0; t < horizon; ++t) csv << ',' << num(cec_price(p, t, grid[i]));
    csv << '\n';
  }
}

void run_solve(const ExperimentConfig& cfg, std::ostream& csv) {
  cfg.validate();
  const PricingProblem p = cfg.problem();
  const ValuePolicyTable table = solve_bellman(p, cfg.solver());
  std::ostringstream buf;
  write_solve_csv(p, table, buf);
  csv << buf.str();
}

void run_simulate(const ExperimentConfig& cfg, const std::string& policy_name,
                  std::ostream& csv, std::ostream& summary) {
  cfg.validate();
  const PricingProblem p = cfg.problem();
  const auto policy = make_policy(policy_name, cfg);
  const std::vector<PathRecord> paths = simulate_many(p, *policy, cfg.n_sim, cfg.seed);

  std::ostringstream out;
  out << "path_id";
  for (int t = 0; t < p.horizon; ++t) out << ",a_t" << t;
  out << ",profit\n";
  std::vector<double> profits;
  profits.reserve(paths.size());
  for (std::size_t k = 0; k < paths.size(); ++k) {
    out << k;
    for (double a : paths[k].prices) out << ',' << num(a);
    out << ',' << num(paths[k].profit) << '\n';
    profits.push_back(paths[k].profit);
  }

  std::ostringstream sum;
  const Estimate e = mean_and_standard_error(profits);
  sum << "policy: " << policy->name() << '\n'
      << "n: " << profits.size() << '\n'
      << "mean_profit: " << num(e.mean) << '\n'
      << "se_profit: " << num(e.standard_error) << '\n'
      << "q05_profit: " << num(quantile(profits, 0.05)) << '\n'
      << "median_profit: " << num(quantile(profits, 0.5)) << '\n'
      << "q95_profit: " << num(quantile(profits, 0.95)) << '\n';
  for (int t = 0; t < p.horizon; ++t) {
    std::vector<double> prices;
    prices.reserve(paths.size());
    for (const auto& r : paths) prices.push_back(r.prices[static_cast<std::size_t>(t)]);
    sum << "price_t" << t << ": q05 " << num(quantile(prices, 0.05)) << " median "
        << num(quantile(prices, 0.5)) << " q95 " << num(quantile(prices, 0.95)) << '\n';
  }
  write_histogram(histogram(profits, kProfitBins), "profit_hist", sum);

  csv << out.str();
  summary << sum.str();
}

void write_stats(const ComparisonStats& st, std::ostream& summary) {
  summary << "n: " << st.n << '\n'
          << "mean_a: " << num(st.mean_a) << '\n'
          << "se_a: " << num(st.se_a) << '\n'
          << "mean_b: " << num(st.mean_b) << '\n'
          << "se_b: " << num(st.se_b) << '\n'
          << "meanDiff: " << num(st.mean_diff) << '\n'
          << "seDiff: " << num(st.se_diff) << '\n'
          << "q05: " << num(st.q05) << '\n'
          << "median: " << num(st.median) << '\n'
          << "q95: " << num(st.q95) << '\n'
          << "relL2: " << num(st.rel_l2) << '\n'
          << "fracABetter: " << num(st.frac_a_better) << '\n'
          << "fracBBetter: " << num(st.frac_b_better) << '\n'
          << "excluded: " << st.excluded << '\n';
}

void run_compare(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& summary) {
  cfg.validate();
  if (cfg.policy_a == cfg.policy_b && cfg.policy_a != "bellman")
    throw ValidationError("compare: policies must differ");
  const PricingProblem p = cfg.problem();
  std::shared_ptr<const ValuePolicyTable> table;
  if (cfg.policy_a == "bellman" || cfg.policy_b == "bellman")
    table = std::make_shared<const ValuePolicyTable>(solve_bellman(p, cfg.solver()));
  const auto a = make_policy(cfg.policy_a, cfg, table);
  const auto b = make_policy(cfg.policy_b, cfg, table);
  const ComparisonSamples samples = paired_compare(p, *a, *b, cfg.n_sim, cfg.seed);
  const ComparisonStats st = summarise(samples);

  std::ostringstream out;
  out << "path_id,profit_A,profit_B,diff\n";
  std::vector<double> diff(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    diff[k] = samples.profits_a[k] - samples.profits_b[k];
    out << k << ',' << num(samples.profits_a[k]) << ',' << num(samples.profits_b[k]) << ','
        << num(diff[k]) << '\n';
  }
  std::ostringstream sum;
  sum << "policy_a: " << samples.label_a << '\n' << "policy_b: " << samples.label_b << '\n';
  write_stats(st, sum);
  write_histogram(histogram(diff, kDifferenceBins), "diff_hist", sum);

  csv << out.str();
  summary << sum.str();
}

void run_sweep(const ExperimentConfig& cfg, std::ostream& csv) {
  cfg.validate();
  if (cfg.sweep_q1.empty() || cfg.sweep_q2.empty() || cfg.sweep_cases.empty())
    throw ValidationError("sweep: q1 grid, q2 grid and (C, gamma) cases must be non-empty");
  if (cfg.policy_b != "cec" && cfg.policy_b != "olfc")
    throw ValidationError("sweep: policy B must be 'cec' or 'olfc'");

  std::vector<SweepCell> cells;
  for (const auto& cn : cfg.sweep_cases)
    for (double q1 : cfg.sweep_q1)
      for (double q2 : cfg.sweep_q2) cells.push_back({cn.cost, cn.gamma, q1, q2});

  std::vector<std::string> rows(cells.size());
  const int n = static_cast<int>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < n; ++c) {
    const SweepCell& cell = cells[static_cast<std::size_t>(c)];
    std::ostringstream row;
    row << num(cell.cost) << ',' << num(cell.gamma) << ',' << num(cell.q1) << ','
        << num(cell.q2) << ',';
    try {
      ExperimentConfig local = cfg;
      local.unsold_cost = cell.cost;
      local.gamma = cell.gamma;
      local.q1 = cell.q1;
      local.q2 = cell.q2;
      Rng derive = make_stream(cfg.seed, {static_cast<std::uint64_t>(c)});
      local.seed = derive();
      local.validate();
      const PricingProblem p = local.problem();
      const auto table =
          std::make_shared<const ValuePolicyTable>(solve_bellman(p, local.solver()));
      const BellmanPolicy bellman(table);
      const auto other = make_policy(local.policy_b, local);
      const ComparisonStats st =
          summarise(paired_compare(p, bellman, *other, local.n_sim, local.seed));
      std::ostringstream vals;
      vals << num(st.rel_l2) << ',' << num(st.q05) << ',' << num(st.median) << ','
           << num(st.q95) << ',' << num(st.frac_b_better) << ',';
      row << vals.str();
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      row << ",,,,," << msg;
    }
    rows[static_cast<std::size_t>(c)] = row.str();
  }

  std::ostringstream out;
  out << "C,gamma,q1,q2,relL2,q05,median,q95,fracBetter,error\n";
  for (const auto& r : rows) out << r << '\n';
  csv << out.str();
}

}  // namespace pricing
