#include "pricing/policies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pricing {

namespace {

constexpr double kImprovement = 1e-12;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
constexpr int kLineScanPoints = 11;

void check_epoch(const PricingProblem& p, int t, double s) {
  if (t < 0 || t >= p.horizon) throw std::out_of_range("policy: t outside 0..T-1");
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("policy: stock outside [0, 1]");
}

// Golden-section search for the maximum of g on [a, b] down to width tol.
ScalarMax golden(const std::function<double(double)>& g, double a, double b, double tol,
                 ScalarMax best) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = g(x2);
    }
  }
  if (f1 > best.value + kImprovement) best = {x1, f1};
  if (f2 > best.value + kImprovement) best = {x2, f2};
  return best;
}

// Maximises g on [lo, hi]: coarse scan, then golden section in the bracket
// around the best scan point until it is narrower than tol.
ScalarMax line_maximise(const std::function<double(double)>& g, double lo, double hi,
                        double tol) {
  const double h = (hi - lo) / (kLineScanPoints - 1);
  ScalarMax best{lo, g(lo)};
  int best_j = 0;
  for (int j = 1; j < kLineScanPoints; ++j) {
    const double x = j == kLineScanPoints - 1 ? hi : lo + j * h;
    const double v = g(x);
    if (v > best.value + kImprovement) {
      best = {x, v};
      best_j = j;
    }
  }
  const double a = std::max(lo, lo + (best_j - 1) * h);
  const double b = std::min(hi, lo + (best_j + 1) * h);
  return golden(g, a, b, tol, best);
}

// Local search for max of g near 0 (g(0) = g0): step out from +-h, growing
// by the golden ratio while g improves, then golden-section the bracket.
ScalarMax local_line_maximise(const std::function<double(double)>& g, double g0,
                              double h, double tol) {
  ScalarMax best{0.0, g0};
  double dir = 1.0;
  double fwd = g(h);
  if (!(fwd > g0 + kImprovement)) {
    const double back = g(-h);
    if (!(back > g0 + kImprovement)) return golden(g, -h, h, tol, best);
    dir = -1.0;
    fwd = back;
  }
  double prev = 0.0;
  double cur = dir * h;
  double f_cur = fwd;
  best = {cur, f_cur};
  double step = h;
  for (int expand = 0; expand < 40; ++expand) {
    step /= kInvPhi;
    const double next = cur + dir * step;
    const double f_next = g(next);
    if (!(f_next > f_cur + kImprovement)) {
      return golden(g, std::min(prev, next), std::max(prev, next), tol, best);
    }
    prev = cur;
    cur = next;
    f_cur = f_next;
    best = {cur, f_cur};
  }
  return best;
}

// Powell's conjugate-direction ascent on the box, started from x. The first
// sweep line-searches each coordinate globally over the price interval; later
// sweeps search locally along the current direction set, where the net
// displacement of each sweep replaces the direction of largest gain.
OlfcSolution powell_ascent(const PricingProblem& p, const OlfcConfig& cfg, double s,
                           const SaaPaths& paths, std::vector<double> x) {
  const PriceInterval box = p.prices;
  const std::size_t n = x.size();
  double fx = olfc_objective(p, s, x, paths);
  std::vector<double> trial(n);
  auto along = [&](const std::vector<double>& base, const std::vector<double>& u) {
    return [&, base, u](double lambda) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = box.clamp(base[j] + lambda * u[j]);
      return olfc_objective(p, s, trial, paths);
    };
  };
  auto move = [&](const std::vector<double>& u, double lambda) {
    for (std::size_t j = 0; j < n; ++j) x[j] = box.clamp(x[j] + lambda * u[j]);
  };

  for (std::size_t j = 0; j < n; ++j) {
    trial = x;
    const ScalarMax m = line_maximise(
        [&](double a) {
          trial[j] = a;
          return olfc_objective(p, s, trial, paths);
        },
        box.lo, box.hi, cfg.tol);
    if (m.value > fx + kImprovement) {
      x[j] = m.argmax;
      fx = m.value;
    }
  }

  std::vector<std::vector<double>> dirs;
  auto reset_dirs = [&] {
    dirs.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) dirs[j][j] = 1.0;
  };
  reset_dirs();
  double h = std::max(4.0 * cfg.tol, 0.01 * (box.hi - box.lo));

  for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
    const std::vector<double> start = x;
    double largest_gain = 0.0;
    std::size_t largest_dir = 0;
    for (std::size_t d = 0; d < n; ++d) {
      const ScalarMax m = local_line_maximise(along(x, dirs[d]), fx, h, cfg.tol);
      if (m.value > fx + kImprovement) {
        if (m.value - fx > largest_gain) {
          largest_gain = m.value - fx;
          largest_dir = d;
        }
        move(dirs[d], m.argmax);
        fx = m.value;
      }
    }

    std::vector<double> disp(n);
    double step_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      disp[j] = x[j] - start[j];
      step_max = std::max(step_max, std::abs(disp[j]));
    }
    if (step_max < cfg.tol) return {std::move(x), fx, sweep};

    if (n > 1) {
      for (double& v : disp) v /= step_max;
      const ScalarMax m = local_line_maximise(along(x, disp), fx, h, cfg.tol);
      if (m.value > fx + kImprovement) {
        move(disp, m.argmax);
        fx = m.value;
      }
      if (sweep % static_cast<int>(n + 1) == 0) {
        reset_dirs();
      } else {
        dirs.erase(dirs.begin() + static_cast<std::ptrdiff_t>(largest_dir));
        dirs.push_back(std::move(disp));
      }
    }
    h = std::max(4.0 * cfg.tol, 0.5 * step_max);
  }
  std::ostringstream os;
  os << "olfc: no convergence after " << cfg.max_iters << " sweeps";
  throw OlfcNonConvergence(os.str(), std::move(x));
}

}  // namespace

BellmanPolicy::BellmanPolicy(std::shared_ptr<const ValuePolicyTable> table)
    : table_(std::move(table)) {}

double BellmanPolicy::price(int t, double s, std::uint64_t) const {
  return bellman_price(*table_, t, s);
}

double bellman_price(const ValuePolicyTable& table, int t, double s) {
  if (t < 0 || t >= table.horizon()) throw std::out_of_range("bellman: t outside 0..T-1");
  return table.prices().clamp(interpolate(table.grid(), table.policy_row(t), s));
}

double cec_objective(const PricingProblem& p, int t, double s, double a, double w_hat) {
  const double per_period = s / static_cast<double>(p.horizon - t);
  return (a + p.unsold_cost) * std::min(per_period, demand(p.demand, a) * w_hat);
}

double cec_price(const PricingProblem& p, int t, double s) {
  check_epoch(p, t, s);
  if (s == 0.0) return p.prices.hi;
  const double q1 = p.demand.q1;
  const double q2 = p.demand.q2;
  const double sell_out = std::log(q1 * static_cast<double>(p.horizon - t) / s) / q2;
  const double revenue_peak = 1.0 / q2 - p.unsold_cost;
  return p.prices.clamp(std::max(sell_out, revenue_peak));
}

CecPolicy::CecPolicy(PricingProblem problem, CecEstimate estimate)
    : problem_(std::move(problem)), estimate_(estimate) {
  problem_.validate();
  if (!(estimate_.w_hat > 0.0)) throw ValidationError("cec: w_hat must be positive");
}

double CecPolicy::price(int t, double s, std::uint64_t) const {
  if (estimate_.w_hat == 1.0) return cec_price(problem_, t, s);
  check_epoch(problem_, t, s);
  if (s == 0.0) return problem_.prices.hi;
  return maximise_on_interval(
             [&](double a) { return cec_objective(problem_, t, s, a, estimate_.w_hat); },
             problem_.prices, 2001, 40)
      .argmax;
}

void OlfcConfig::validate() const {
  if (n_saa < 1) throw ValidationError("olfc: nSaa must be at least 1");
  if (!(tol > 0.0)) throw ValidationError("olfc: tolerance must be positive");
  if (max_iters < 1) throw ValidationError("olfc: maxIters must be at least 1");
  if (multistart < 1) throw ValidationError("olfc: multistart must be at least 1");
}

SaaPaths draw_saa_paths(const PricingProblem& p, const OlfcConfig& cfg, int t,
                        std::uint64_t path_id) {
  SaaPaths paths;
  paths.length = p.horizon - t;
  if (is_deterministic(p.disturbance)) {
    Rng unused = make_stream(0, {});
    const double w = sample_disturbance(p.disturbance, unused);
    paths.values.assign(static_cast<std::size_t>(paths.length), w);
    paths.weights = {1.0};
    return paths;
  }
  Rng rng = make_stream(cfg.seed, {tag(StreamTag::kOlfcEpoch), path_id,
                                   static_cast<std::uint64_t>(t)});
  const auto n = static_cast<std::size_t>(cfg.n_saa);
  paths.values.resize(n * static_cast<std::size_t>(paths.length));
  for (auto& w : paths.values) w = sample_disturbance(p.disturbance, rng);
  paths.weights.assign(n, 1.0 / static_cast<double>(n));
  return paths;
}

double olfc_objective(const PricingProblem& p, double s, std::span<const double> prices,
                      const SaaPaths& paths) {
  const std::size_t n = prices.size();
  double q[64];
  std::vector<double> q_heap;
  double* qs = q;
  if (n > 64) {
    q_heap.resize(n);
    qs = q_heap.data();
  }
  for (std::size_t j = 0; j < n; ++j) qs[j] = demand(p.demand, prices[j]);

  double total = 0.0;
  for (std::size_t k = 0; k < paths.count(); ++k) {
    const std::span<const double> w = paths.row(k);
    double stock = s;
    double profit = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double sold = std::min(stock, qs[j] * w[j]);
      profit += prices[j] * sold;
      stock -= sold;
    }
    total += paths.weights[k] * (profit - p.unsold_cost * stock);
  }
  return total;
}

OlfcSolution olfc_optimise(const PricingProblem& p, const OlfcConfig& cfg, int t,
                           double s, const SaaPaths& paths, std::uint64_t path_id) {
  const auto n = static_cast<std::size_t>(p.horizon - t);
  OlfcSolution best =
      powell_ascent(p, cfg, s, paths, std::vector<double>(n, cec_price(p, t, s)));
  if (cfg.multistart > 1) {
    Rng rng = make_stream(cfg.seed, {tag(StreamTag::kOlfcStart), path_id,
                                     static_cast<std::uint64_t>(t)});
    std::uniform_real_distribution<double> u(p.prices.lo, p.prices.hi);
    for (int m = 1; m < cfg.multistart; ++m) {
      std::vector<double> x0(n);
      for (auto& a : x0) a = u(rng);
      OlfcSolution candidate = powell_ascent(p, cfg, s, paths, std::move(x0));
      if (candidate.objective > best.objective + kImprovement) best = std::move(candidate);
    }
  }
  return best;
}

double olfc_price(const PricingProblem& p, const OlfcConfig& cfg, int t, double s,
                  std::uint64_t path_id) {
  check_epoch(p, t, s);
  if (s == 0.0) return p.prices.hi;
  const SaaPaths paths = draw_saa_paths(p, cfg, t, path_id);
  return p.prices.clamp(olfc_optimise(p, cfg, t, s, paths, path_id).prices.front());
}

OlfcPolicy::OlfcPolicy(PricingProblem problem, OlfcConfig cfg)
    : problem_(std::move(problem)), cfg_(cfg) {
  problem_.validate();
  cfg_.validate();
}

double OlfcPolicy::price(int t, double s, std::uint64_t path_id) const {
  return olfc_price(problem_, cfg_, t, s, path_id);
}

}  // namespace pricing
