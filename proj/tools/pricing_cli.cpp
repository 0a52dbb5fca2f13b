// Command-line front end: solve | simulate | compare | sweep.
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 runtime or
// numerical failure.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "pricing/config.hpp"
#include "pricing/drivers.hpp"

namespace {

struct Overrides {
  std::string config_path;
  // flag name -> config key, filled by CLI11
  std::map<std::string, std::optional<std::string>> values;
};

const std::pair<const char*, const char*> kFlags[] = {
    {"--seed", "seed"},        {"--out", "out"},           {"--nsim", "nsim"},
    {"--nexp", "nexp"},        {"--policy-a", "policy_a"}, {"--policy-b", "policy_b"},
    {"--T", "T"},              {"--C", "C"},               {"--gamma", "gamma"},
    {"--q1", "q1"},            {"--q2", "q2"},             {"--a-min", "a_min"},
    {"--a-max", "a_max"},      {"--K", "K"},               {"--M", "M"},
    {"--refine-iters", "refine_iters"},                    {"--nsaa", "nsaa"},
    {"--multistart", "multistart"},                        {"--olfc-tol", "olfc_tol"},
    {"--olfc-max-iters", "olfc_max_iters"},                {"--threads", "threads"},
    {"--disturbance", "disturbance"},                      {"--w", "w"},
    {"--q1-grid", "sweep_q1"}, {"--q2-grid", "sweep_q2"},  {"--cases", "sweep_cases"},
};

pricing::ExperimentConfig build_config(const Overrides& ov) {
  pricing::ExperimentConfig cfg;
  if (!ov.config_path.empty()) cfg = pricing::load_config(ov.config_path);
  for (const auto& [flag, key] : kFlags) {
    const auto& v = ov.values.at(flag);
    if (v) pricing::set_config_value(cfg, key, *v);
  }
  cfg.validate();
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic pricing: Bellman, CEC and OLFC policies"};
  app.require_subcommand(1);
  Overrides ov;
  app.add_option("--config", ov.config_path, "key = value configuration file");
  for (const auto& [flag, key] : kFlags) {
    auto& slot = ov.values[flag];
    app.add_option_function<std::string>(
        flag, [&slot](const std::string& v) { slot = v; },
        std::string("override config key '") + key + "'");
  }

  auto* solve = app.add_subcommand("solve", "solve the Bellman equation, write value/policy CSV");
  auto* simulate = app.add_subcommand("simulate", "simulate one policy, write per-path CSV");
  std::string sim_policy = "bellman";
  simulate->add_option("policy", sim_policy, "bellman | cec | olfc")
      ->check(CLI::IsMember({"bellman", "cec", "olfc"}));
  auto* compare = app.add_subcommand("compare", "paired comparison of two policies");
  std::string cmp_a;
  std::string cmp_b;
  compare->add_option("policy_a", cmp_a, "reference policy (default bellman)");
  compare->add_option("policy_b", cmp_b, "compared policy (default cec)");
  auto* sweep = app.add_subcommand("sweep", "relative L2 heatmap over q1 x q2 per (C, gamma)");
  app.fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    pricing::ExperimentConfig cfg = build_config(ov);
    if (*solve) {
      const std::string path = cfg.out.empty() ? "solve.csv" : cfg.out;
      std::ostringstream csv;
      pricing::run_solve(cfg, csv);
      auto out = open_output(path);
      out << csv.str();
      finish(out, path);
      std::cout << "wrote: " << path << '\n';
    } else if (*simulate) {
      const std::string path = cfg.out.empty() ? "simulate_" + sim_policy + ".csv" : cfg.out;
      std::ostringstream csv;
      std::ostringstream summary;
      pricing::run_simulate(cfg, sim_policy, csv, summary);
      auto out = open_output(path);
      out << csv.str();
      finish(out, path);
      std::cout << summary.str() << "wrote: " << path << '\n';
    } else if (*compare) {
      if (!cmp_a.empty()) cfg.policy_a = cmp_a;
      if (!cmp_b.empty()) cfg.policy_b = cmp_b;
      cfg.validate();
      const std::string path = cfg.out.empty() ? "compare.csv" : cfg.out;
      std::ostringstream csv;
      std::ostringstream summary;
      pricing::run_compare(cfg, csv, summary);
      auto out = open_output(path);
      out << csv.str();
      finish(out, path);
      std::cout << summary.str() << "wrote: " << path << '\n';
    } else if (*sweep) {
      const std::string path = cfg.out.empty() ? "sweep.csv" : cfg.out;
      std::ostringstream csv;
      pricing::run_sweep(cfg, csv);
      auto out = open_output(path);
      out << csv.str();
      finish(out, path);
      std::cout << "wrote: " << path << '\n';
    }
  } catch (const pricing::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
