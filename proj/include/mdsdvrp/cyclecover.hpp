#pragma once

#include "mdsdvrp/graph.hpp"

namespace mdsdvrp {

// Minimum-cost spanning forest in which every tree contains exactly one
// depot: contract all depots into one super-vertex, take an MST, then
// un-contract. Components come back one-depot-per-tree.
ComponentSet depot_spanning_forest(const MetricInstance& inst);

// Cycle cover in which every cycle's total demand (customers plus the
// given dummy depot demands) is divisible by Q. Primal-dual constrained
// forest for f(S) = [demand(S) mod Q != 0], then tree doubling and
// shortcutting. The divisibility postcondition is checked on every call.
//
// Requires 0 <= depot_dummy[u] < Q and total demand divisible by Q.
ComponentSet modq_cycle_cover(const MetricInstance& inst,
                              const std::vector<Demand>& depot_dummy);

// Cheapest parity-preserving edge set joining a group of vertex-disjoint
// even-degree components into one: a spanning tree over the components
// built from minimum crossing edges, each used twice (a doubled edge
// keeps every degree even). Returns the multiset, 2(|parts|-1) edges.
std::vector<Edge> doubled_connecting_edges(const MetricInstance& inst,
                                           const std::vector<Component>& parts);

}  // namespace mdsdvrp
