#pragma once

#include <utility>
#include <vector>

#include "mdsdvrp/instance.hpp"

namespace mdsdvrp {

using Edge = std::pair<int, int>;  // stored with first <= second

inline Edge make_edge(int a, int b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

struct Component {
  std::vector<int> vertices;  // sorted, unique
  std::vector<Edge> edges;    // multiset; empty for a trivial component
};

// Vertex-disjoint components. When tagged as a cycle cover each component
// is a single vertex or a simple cycle (a doubled edge counts as the
// 2-cycle u-v-u).
struct ComponentSet {
  enum Kind { kGeneric, kCycleCover };
  Kind kind = kGeneric;
  std::vector<Component> comps;

  Cost cost(const MetricInstance& inst) const {
    Cost s = 0;
    for (auto& c : comps)
      for (auto& e : c.edges) s += inst.c(e.first, e.second);
    return s;
  }
};

// Splits an edge multiset over the given vertex universe into connected
// components; isolated vertices become trivial components.
ComponentSet components_from_edges(int num_vertices, const std::vector<Edge>& edges);

// Closed walk over an even-degree connected multigraph, each edge used
// exactly once. Starts at the smallest vertex; deterministic.
// Throws ContractError on odd degrees or a disconnected component.
std::vector<int> eulerian_tour(const Component& comp);

// Skips repeated vertices of a closed walk, keeping the first visit of
// every vertex in `keep` (in walk order). Returns the cycle as a vertex
// sequence without the closing repeat. Asserts cost(cycle) <= cost(walk).
std::vector<int> shortcut_walk(const MetricInstance& inst, const std::vector<int>& walk,
                               const std::vector<int>& keep);

// Cycle component from a cyclic vertex sequence (size 1 = trivial).
Component cycle_component(const std::vector<int>& cycle_verts);

// Canonical vertex order of a cycle component: starts at the smallest
// vertex, second element is its smaller neighbour.
std::vector<int> cycle_sequence(const Component& comp);

// Shortcuts every component of an Eulerian component set into a cycle.
ComponentSet to_cycle_cover(const MetricInstance& inst, const ComponentSet& cs);

// ceil(total customer demand / Q); depot-only components give 0.
// `dummy` optionally assigns demands to depot vertices (Alg.3 mode).
long long lower_ell(const Component& comp, const MetricInstance& inst,
                    const std::vector<Demand>* dummy = nullptr);
long long lower_ell(const ComponentSet& cs, const MetricInstance& inst,
                    const std::vector<Demand>* dummy = nullptr);

}  // namespace mdsdvrp
