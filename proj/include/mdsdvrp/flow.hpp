#pragma once

#include <vector>

#include "mdsdvrp/instance.hpp"

namespace mdsdvrp {

constexpr long long kUnboundedCap = -1;

struct FlowNetwork {
  struct Arc {
    int from = 0;
    int to = 0;
    long long cap = 0;  // kUnboundedCap for unbounded
    Cost cost = 0;      // fixed-point, >= 0
  };
  int num_nodes = 0;
  int source = 0;
  int sink = 0;
  std::vector<Arc> arcs;

  int add_node() { return num_nodes++; }
  void add_arc(int from, int to, long long cap, Cost cost) {
    arcs.push_back({from, to, cap, cost});
  }
};

struct FlowResult {
  std::vector<long long> flow;  // per arc, aligned with net.arcs
  long long max_flow = 0;
  Cost total_cost = 0;
};

// Min-cost max-flow via successive shortest paths with potentials.
// Requires non-negative arc costs; all flows are integral.
FlowResult min_cost_max_flow(const FlowNetwork& net);

}  // namespace mdsdvrp
