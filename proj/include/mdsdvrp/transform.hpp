#pragma once

#include <optional>

#include "mdsdvrp/flow.hpp"
#include "mdsdvrp/graph.hpp"
#include "mdsdvrp/partition.hpp"

namespace mdsdvrp {

struct TransformInput {
  ComponentSet cover;  // cycle cover over all of V
  // Dummy depot demands (Alg.3 mode): depots are treated as customers
  // with these demands and are left inside the emitted tours.
  std::optional<std::vector<Demand>> dummy;
};

struct TransformCertificate {
  Cost cover_cost = 0;
  Cost flow_opt = 0;
  Cost solution_cost = 0;
  bool bound_ok = false;      // c(T) <= 2 c(C) + 2 flowOPT
  long long ell = 0;          // vehicles the cover requires
  long long vehicles_used = 0;
  bool vehicles_ok = false;   // vehicles_used == ell
  bool depot_caps_ok = false; // per-depot usage <= r_u
};

struct TransformResult {
  Solution solution;
  TransformCertificate cert;
};

// Algorithm: shortcut depots out of the cycles (unless in dummy mode),
// peel trivial paths and extract capacity-Q paths per cycle, assign
// paths to depots by min-cost max-flow, emit trivial and doubled-path
// tours. Uses exactly ell(cover) vehicles. The certificate inequalities
// are verified on every invocation and a violation throws.
TransformResult transform(const MetricInstance& inst, const TransformInput& input);

// Recomputes the certificate for a solution previously produced by
// transform on the same input.
TransformCertificate transform_cost_certificate(const MetricInstance& inst,
                                                const TransformInput& input,
                                                const Solution& sol);

}  // namespace mdsdvrp
