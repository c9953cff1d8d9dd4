#pragma once

#include <map>
#include <vector>

#include "mdsdvrp/graph.hpp"

namespace mdsdvrp {

struct ExtractedPath {
  std::vector<int> verts;          // path order; singleton for trivial paths
  std::map<int, Demand> assign;    // positive assignments only
  long long load = 1;              // vehicles consumed; > 1 only for trivial paths

  Demand total() const {
    Demand s = 0;
    for (auto& [v, a] : assign) s += a;
    return s;
  }
};

struct PeelResult {
  std::vector<ExtractedPath> trivial;  // one entry per customer with q >= Q
  std::map<int, Demand> residual;      // q mod Q for every input customer
};

// Splits off full-capacity loads: customer v with q_v >= Q yields a
// trivial path with load floor(q_v/Q) standing for that many capacity-Q
// vehicles; q mod Q remains.
PeelResult peel_trivial(const std::map<int, Demand>& demands, Demand Q);

// Greedy path extraction along a cycle (residuals < Q). Produces exactly
// ceil(sum/Q) paths; all but possibly the last carry exactly Q; adjacent
// paths overlap in at most the split customer.
std::vector<ExtractedPath> extract_paths(const std::vector<int>& cycle,
                                         const std::map<int, Demand>& residual, Demand Q);

struct PartitionResult {
  std::vector<Tour> tours;  // vehicle ids unset (-1); seq and lambda filled
  Cost cost = 0;
  long long tour_count = 0;  // == ceil(sum lambda / Qp)
  int best_start = 0;
};

// Tour partition for one depot: pads the total to a multiple of Qp with a
// dummy customer at the depot, peels full loads, then extracts paths from
// every rotation of the residual cycle and keeps the cheapest tour set.
// The cost bound c(tours) <= c(C_u) + sum(2 lambda_i c(u,v_i))/Qp is
// asserted on every call.
PartitionResult partition_cycle_tours(const MetricInstance& inst, int depot,
                                       const std::vector<int>& cycle_customers,
                                       const std::map<int, Demand>& lambda, Demand Qp);

}  // namespace mdsdvrp
