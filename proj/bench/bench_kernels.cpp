// Wall-clock comparison of the OpenMP kernels against their serial
// references on the default example system. Also checks that the outputs are
// identical.

#include <chrono>
#include <cstdio>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pricing/config.hpp"
#include "pricing/sim.hpp"

using namespace pricing;

namespace {

template <class Fn>
double best_of(int reps, Fn fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main() {
  const ExperimentConfig cfg;
  const PricingProblem p = cfg.problem();
  const SolverConfig solver = cfg.solver();
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);

  ValuePolicyTable par = solve_bellman(p, solver);
  ValuePolicyTable ser = solve_bellman_reference(p, solver);
  const double t_par = best_of(3, [&] { par = solve_bellman(p, solver); });
  const double t_ser = best_of(3, [&] { ser = solve_bellman_reference(p, solver); });
  std::printf("solve_bellman  K=%d M=%d nexp=%d: parallel %.3f s, serial %.3f s, speedup %.2fx, %s\n",
              solver.grid_size, solver.price_grid, solver.n_exp, t_par, t_ser, t_ser / t_par,
              par == ser ? "identical" : "DIFFERENT");
  const bool solve_same = par == ser;

  auto table = std::make_shared<const ValuePolicyTable>(std::move(par));
  const BellmanPolicy a(table);
  const CecPolicy b(p);
  ComparisonSamples cp;
  ComparisonSamples cs;
  const int n = 100000;
  const double c_par = best_of(3, [&] { cp = paired_compare(p, a, b, n, cfg.seed); });
  const double c_ser = best_of(3, [&] { cs = paired_compare_reference(p, a, b, n, cfg.seed); });
  std::printf("paired_compare nsim=%d: parallel %.3f s, serial %.3f s, speedup %.2fx, %s\n", n, c_par,
              c_ser, c_ser / c_par, cp == cs ? "identical" : "DIFFERENT");
  return solve_same && cp == cs ? 0 : 1;
}
