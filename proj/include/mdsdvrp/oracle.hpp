#pragma once

#include <map>

#include "mdsdvrp/solvers.hpp"

namespace mdsdvrp {

struct OracleRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  int max_n = 5;
  Demand max_Q = 6;
  Demand max_m = 4;
  Demand max_q_factor = 2;  // demands up to max_q_factor * Q

  // Reads MDSDVRP_ORACLE_LIMITS="n,Q,m,qfactor" when set.
  static OracleLimits from_env();
};

struct OracleResult {
  Cost opt_cost = 0;
  Solution witness;
  long long explored = 0;  // candidate structures examined
};

// True optimum by enumerating per-vehicle customer subsets with visit
// orders from Held-Karp; the demand split per structure is an integral
// transportation feasibility problem. Refuses instances over the limits.
OracleResult solve_exact(const MetricInstance& inst, const OracleLimits& limits = {});

struct VrpLowerBounds {
  Rat radial;       // sum(2 lambda_v c(u,v)) / Q
  Cost tour_bound;  // cost of the given spanning cycle
};

VrpLowerBounds vrp_lower_bounds(const MetricInstance& inst, int depot,
                                const std::map<int, Demand>& lambda,
                                const std::vector<int>& cycle_customers);

struct RatioAudit {
  Cost opt = 0;
  Rat ratio{1, 1};
  bool finite = true;       // false: positive cost over zero optimum
  bool within_claim = false;
};

// ratio = cost/OPT (1 when both are zero); within_claim compares against
// the solver's claimed ratio with exact rational arithmetic.
RatioAudit audit_ratio(const MetricInstance& inst, const SolverResult& result,
                       const OracleLimits& limits = {});

}  // namespace mdsdvrp
