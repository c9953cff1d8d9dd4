#pragma once

#include <string>
#include <vector>

#include "mdsdvrp/mdtsp.hpp"
#include "mdsdvrp/transform.hpp"

namespace mdsdvrp {

struct SolveOptions {
  const MdTspSolver* mdtsp = nullptr;  // default: forest2
  Rat eps{1, 2};                       // bi-factor solvers only; must be > 0
  long long max_iters = 0;             // 0 = unlimited enumeration
  bool parallel = true;                // OpenMP over enumeration iterations
};

struct SolverResult {
  Solution solution;
  Cost cost = 0;
  Rat claimed_ratio{0, 1};
  bool has_ratio = false;  // false: heuristic, no certified ratio
  Rat gamma{1, 1};
  long long iterations_run = 0;
  bool guarantee_void = false;  // enumeration truncated by max_iters
  long long transforms_run = 0;
  TransformCertificate winner_cert;  // certificate of the returned iteration
  bool has_winner_cert = false;
  std::string diagnostic;  // non-empty: no solution was produced

  bool ok() const { return diagnostic.empty(); }
};

// XP enumeration of customer edge sets |E_J| <= k-1 over the MD-TSP cover.
SolverResult alg1(const MetricInstance& inst, const SolveOptions& opts = {});

// FPT enumeration of partitions of the MD-TSP cycles with a doubled-edge
// Eulerian extension per part.
SolverResult alg2(const MetricInstance& inst, const SolveOptions& opts = {});

// Dummy depot demand enumeration + mod-Q cycle cover; ratio 5.
SolverResult alg3(const MetricInstance& inst, const SolveOptions& opts = {});

// Bi-factor (gamma = 1+eps) via a CMD-VRP heuristic and per-depot
// re-partition. The default plug-in carries no certified ratio.
SolverResult alg4(const MetricInstance& inst, const SolveOptions& opts = {});

// Bi-factor (5, 1+eps): demand scaling + alg3 + integral reassignment.
SolverResult alg5(const MetricInstance& inst, const SolveOptions& opts = {});

// Scaling parameters used by alg5: demands become ceil(q/delta) and the
// capacity becomes scaled_Q. scaled_Q * delta never exceeds the largest
// integer load allowed at gamma = 1+eps.
struct Alg5Scaling {
  Rat delta;
  Demand scaled_Q = 0;
  bool direct = false;  // floor((1+eps)Q) == Q: alg3 runs unscaled
};
Alg5Scaling alg5_scaling(const MetricInstance& inst, const Rat& eps);

// Single depot: Christofides tour + tour partition; ratio 2.5.
SolverResult sdvrp(const MetricInstance& inst, const SolveOptions& opts = {});

SolverResult run_solver(const std::string& name, const MetricInstance& inst,
                        const SolveOptions& opts = {});

inline const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {"alg1", "alg2", "alg3",
                                                 "alg4", "alg5", "sdvrp"};
  return names;
}

}  // namespace mdsdvrp
