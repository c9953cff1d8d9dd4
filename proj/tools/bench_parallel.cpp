// Compares the serial reference enumeration against the OpenMP path on
// generated instances and reports speedups. Both must return identical
// costs; a mismatch aborts.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mdsdvrp/solvers.hpp"

using namespace mdsdvrp;

namespace {

double run(const char* solver, const MetricInstance& inst, bool parallel, Cost* cost) {
  SolveOptions opts;
  opts.parallel = parallel;
  auto t0 = std::chrono::steady_clock::now();
  SolverResult res = run_solver(solver, inst, opts);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!res.ok()) {
    std::fprintf(stderr, "%s failed: %s\n", solver, res.diagnostic.c_str());
    std::exit(1);
  }
  *cost = res.cost;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif
  std::printf("%-6s %-28s %10s %10s %8s\n", "solver", "instance", "serial(s)", "omp(s)",
              "speedup");

  struct Case {
    const char* solver;
    int n, k;
    Demand Q;
    std::uint64_t seed;
  };
  const Case cases[] = {
      {"alg1", 12, 2, 10, 7},
      {"alg1", 12, 3, 10, 8},
      {"alg2", 10, 6, 8, 9},
      {"alg3", 30, 2, 30, 10},
      {"alg3", 50, 2, 50, 11},
      {"alg5", 12, 3, 12, 12},
  };
  for (const Case& c : cases) {
    MetricInstance inst =
        generate_instance(c.seed, c.n, c.k, c.Q, 1, c.Q, FleetPolicy::with_slack(c.Q / 2));
    double ts = 0, tp = 0;
    Cost cs = 0, cp = 0;
    for (int r = 0; r < reps; ++r) {
      ts += run(c.solver, inst, false, &cs);
      tp += run(c.solver, inst, true, &cp);
    }
    if (cs != cp) {
      std::fprintf(stderr, "cost mismatch: serial %lld vs parallel %lld\n", cs, cp);
      return 1;
    }
    char name[64];
    std::snprintf(name, sizeof name, "n=%d k=%d Q=%lld seed=%llu", c.n, c.k,
                  (long long)c.Q, (unsigned long long)c.seed);
    std::printf("%-6s %-28s %10.3f %10.3f %7.2fx\n", c.solver, name, ts / reps, tp / reps,
                ts / tp);
  }
  return 0;
}
