#include "pricing/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pricing {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ValidationError("config: cannot parse value '" + value + "' for key '" + key + "'");
}

template <typename T>
T parse_scalar(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, text);
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

template <typename T>
std::string join(const std::vector<T>& xs, char sep, auto&& fmt) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += sep;
    out += fmt(xs[k]);
  }
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_scalar<double>("list", part));
  return out;
}

std::vector<CostNoise> parse_cases(const std::string& text) {
  std::vector<CostNoise> out;
  for (const auto& part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) bad_value("sweep_cases", part);
    out.push_back({parse_scalar<double>("sweep_cases", part.substr(0, colon)),
                   parse_scalar<double>("sweep_cases", part.substr(colon + 1))});
  }
  return out;
}

void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  if (k == "T") c.horizon = parse_scalar<int>(k, value);
  else if (k == "C") c.unsold_cost = parse_scalar<double>(k, value);
  else if (k == "gamma") c.gamma = parse_scalar<double>(k, value);
  else if (k == "disturbance") c.disturbance = trim(value);
  else if (k == "w") c.degenerate_w = parse_scalar<double>(k, value);
  else if (k == "q1") c.q1 = parse_scalar<double>(k, value);
  else if (k == "q2") c.q2 = parse_scalar<double>(k, value);
  else if (k == "a_min") c.a_min = parse_scalar<double>(k, value);
  else if (k == "a_max") c.a_max = parse_scalar<double>(k, value);
  else if (k == "K") c.grid_size = parse_scalar<int>(k, value);
  else if (k == "M") c.price_grid = parse_scalar<int>(k, value);
  else if (k == "nexp") c.n_exp = parse_scalar<int>(k, value);
  else if (k == "refine_iters") c.refine_iters = parse_scalar<int>(k, value);
  else if (k == "nsim") c.n_sim = parse_scalar<int>(k, value);
  else if (k == "nsaa") c.n_saa = parse_scalar<int>(k, value);
  else if (k == "multistart") c.multistart = parse_scalar<int>(k, value);
  else if (k == "olfc_tol") c.olfc_tol = parse_scalar<double>(k, value);
  else if (k == "olfc_max_iters") c.olfc_max_iters = parse_scalar<int>(k, value);
  else if (k == "seed") c.seed = parse_scalar<std::uint64_t>(k, value);
  else if (k == "threads") c.threads = parse_scalar<int>(k, value);
  else if (k == "out") c.out = trim(value);
  else if (k == "policy_a") c.policy_a = trim(value);
  else if (k == "policy_b") c.policy_b = trim(value);
  else if (k == "sweep_q1") c.sweep_q1 = parse_number_list(value);
  else if (k == "sweep_q2") c.sweep_q2 = parse_number_list(value);
  else if (k == "sweep_cases") c.sweep_cases = parse_cases(value);
  else throw ValidationError("config: unknown key '" + k + "'");
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  return parse_config(in);
}

void emit_config(const ExperimentConfig& c, std::ostream& out) {
  auto num = [](double x) { return format_number(x); };
  out << "T = " << c.horizon << '\n'
      << "C = " << num(c.unsold_cost) << '\n'
      << "gamma = " << num(c.gamma) << '\n'
      << "disturbance = " << c.disturbance << '\n'
      << "w = " << num(c.degenerate_w) << '\n'
      << "q1 = " << num(c.q1) << '\n'
      << "q2 = " << num(c.q2) << '\n'
      << "a_min = " << num(c.a_min) << '\n'
      << "a_max = " << num(c.a_max) << '\n'
      << "K = " << c.grid_size << '\n'
      << "M = " << c.price_grid << '\n'
      << "nexp = " << c.n_exp << '\n'
      << "refine_iters = " << c.refine_iters << '\n'
      << "nsim = " << c.n_sim << '\n'
      << "nsaa = " << c.n_saa << '\n'
      << "multistart = " << c.multistart << '\n'
      << "olfc_tol = " << num(c.olfc_tol) << '\n'
      << "olfc_max_iters = " << c.olfc_max_iters << '\n'
      << "seed = " << c.seed << '\n'
      << "threads = " << c.threads << '\n'
      << "out = " << c.out << '\n'
      << "policy_a = " << c.policy_a << '\n'
      << "policy_b = " << c.policy_b << '\n'
      << "sweep_q1 = " << join(c.sweep_q1, ',', num) << '\n'
      << "sweep_q2 = " << join(c.sweep_q2, ',', num) << '\n'
      << "sweep_cases = "
      << join(c.sweep_cases, ',',
              [&](const CostNoise& cn) { return num(cn.cost) + ":" + num(cn.gamma); })
      << '\n';
}

PricingProblem ExperimentConfig::problem() const {
  PricingProblem p;
  p.horizon = horizon;
  p.unsold_cost = unsold_cost;
  p.prices = {a_min, a_max};
  p.demand = {q1, q2};
  if (disturbance == "degenerate") {
    p.disturbance = Degenerate{degenerate_w};
  } else {
    p.disturbance = ShiftedBeta{gamma};
  }
  return p;
}

SolverConfig ExperimentConfig::solver() const {
  return {grid_size, price_grid, n_exp, refine_iters, seed};
}

OlfcConfig ExperimentConfig::olfc() const {
  return {n_saa, olfc_tol, olfc_max_iters, multistart, seed};
}

void ExperimentConfig::validate() const {
  if (disturbance != "beta" && disturbance != "degenerate")
    throw ValidationError("config: disturbance must be 'beta' or 'degenerate'");
  problem().validate();
  solver().validate();
  olfc().validate();
  if (n_sim < 2) throw ValidationError("config: nsim must be at least 2");
  if (threads < 0) throw ValidationError("config: threads must be non-negative");
  for (const auto* name : {&policy_a, &policy_b})
    if (*name != "bellman" && *name != "cec" && *name != "olfc")
      throw ValidationError("config: unknown policy '" + *name + "'");
}

}  // namespace pricing
