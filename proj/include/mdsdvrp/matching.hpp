#pragma once

#include <functional>
#include <vector>

#include "mdsdvrp/graph.hpp"

namespace mdsdvrp {

struct Matching {
  std::vector<Edge> edges;  // vertex-disjoint, spans the input set
  Cost total_cost = 0;
};

// Exact minimum-cost perfect matching on the complete graph over
// `vertices` (blossom algorithm, O(|vertices|^3), integer duals).
// Throws ContractError if |vertices| is odd.
Matching min_cost_perfect_matching(const std::vector<int>& vertices,
                                   const std::function<Cost(int, int)>& cost);

inline Matching min_cost_perfect_matching(const MetricInstance& inst,
                                          const std::vector<int>& vertices) {
  return min_cost_perfect_matching(
      vertices, [&inst](int a, int b) { return inst.c(a, b); });
}

}  // namespace mdsdvrp
