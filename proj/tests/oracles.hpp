// Independent brute-force oracles used by the unit and acceptance suites.
// Everything here is deliberately naive: enumeration only, no shared code
// with the library algorithms under test.
#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "mdsdvrp/instance.hpp"
#include "mdsdvrp/flow.hpp"
#include "mdsdvrp/graph.hpp"

namespace oracles {

using namespace mdsdvrp;

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

// deterministic RNG for tests; engine output only
struct TestRng {
  std::mt19937_64 eng;
  explicit TestRng(std::uint64_t seed) : eng(seed) {}
  long long range(long long lo, long long hi) {  // inclusive
    return lo + (long long)(eng() % (std::uint64_t)(hi - lo + 1));
  }
};

// ---- matching ----

// exhaustive recursion over all pairings
inline Cost brute_matching_recursive(std::vector<int>& vs,
                                     const std::function<Cost(int, int)>& cost) {
  if (vs.empty()) return 0;
  int a = vs[0];
  Cost best = kInf;
  for (size_t i = 1; i < vs.size(); ++i) {
    int b = vs[i];
    std::vector<int> rest;
    for (size_t j = 1; j < vs.size(); ++j)
      if (j != i) rest.push_back(vs[j]);
    best = std::min(best, cost(a, b) + brute_matching_recursive(rest, cost));
  }
  return best;
}

// bitmask DP over subsets (the cross-check the acceptance suite uses)
inline Cost dp_matching(const std::vector<int>& vs,
                        const std::function<Cost(int, int)>& cost) {
  int n = (int)vs.size();
  std::vector<Cost> dp(1 << n, kInf);
  dp[0] = 0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    int i = 0;
    while (!(mask >> i & 1)) ++i;
    for (int j = i + 1; j < n; ++j)
      if (mask >> j & 1) {
        int rest = mask ^ (1 << i) ^ (1 << j);
        if (dp[rest] != kInf)
          dp[mask] = std::min(dp[mask], dp[rest] + cost(vs[i], vs[j]));
      }
  }
  return dp[(1 << n) - 1];
}

// ---- min-cost max-flow ----

struct BruteFlowResult {
  long long max_flow = 0;
  Cost min_cost = 0;
};

// exhaustive enumeration of integral arc flows with conservation pruning
inline BruteFlowResult brute_mcmf(const FlowNetwork& net) {
  int n = net.num_nodes;
  int A = (int)net.arcs.size();
  // a node's balance is final once the last arc touching it is assigned
  std::vector<int> last_touch(n, -1);
  for (int a = 0; a < A; ++a) {
    last_touch[net.arcs[a].from] = std::max(last_touch[net.arcs[a].from], a);
    last_touch[net.arcs[a].to] = std::max(last_touch[net.arcs[a].to], a);
  }
  std::vector<long long> bal(n, 0);
  std::vector<long long> flow(A, 0);
  long long rem_source_cap = 0;
  for (auto& a : net.arcs)
    if (a.from == net.source) rem_source_cap += a.cap == kUnboundedCap ? 1000 : a.cap;

  BruteFlowResult best;
  best.max_flow = -1;
  long long value = 0;
  Cost cost = 0;

  auto rec = [&](auto&& self, int a, long long src_left) -> void {
    if (a == A) {
      for (int v = 0; v < n; ++v)
        if (v != net.source && v != net.sink && bal[v] != 0) return;
      if (value > best.max_flow || (value == best.max_flow && cost < best.min_cost)) {
        best.max_flow = value;
        best.min_cost = cost;
      }
      return;
    }
    if (value + src_left < best.max_flow) return;  // cannot reach the best value
    const auto& arc = net.arcs[a];
    long long cap = arc.cap == kUnboundedCap ? 1000 : arc.cap;
    long long here_src = arc.from == net.source ? cap : 0;
    for (long long f = 0; f <= cap; ++f) {
      flow[a] = f;
      bal[arc.from] -= f;
      bal[arc.to] += f;
      bool vf = arc.from == net.source || arc.from == net.sink ||
                last_touch[arc.from] != a || bal[arc.from] == 0;
      bool vt = arc.to == net.source || arc.to == net.sink || last_touch[arc.to] != a ||
                bal[arc.to] == 0;
      if (vf && vt) {
        if (arc.from == net.source) value += f;
        cost += f * arc.cost;
        self(self, a + 1, src_left - here_src);
        if (arc.from == net.source) value -= f;
        cost -= f * arc.cost;
      }
      bal[arc.from] += f;
      bal[arc.to] -= f;
    }
    flow[a] = 0;
  };
  rec(rec, 0, rem_source_cap);
  return best;
}

// ---- exact TSP / MD-TSP ----

// cheapest hamiltonian cycle through `verts` (first vertex fixed)
inline Cost exact_tsp_cycle(const MetricInstance& inst, const std::vector<int>& verts) {
  if (verts.size() <= 1) return 0;
  if (verts.size() == 2) return 2 * inst.c(verts[0], verts[1]);
  std::vector<int> rest(verts.begin() + 1, verts.end());
  std::sort(rest.begin(), rest.end());
  Cost best = kInf;
  do {
    Cost c = inst.c(verts[0], rest.front()) + inst.c(rest.back(), verts[0]);
    for (size_t i = 0; i + 1 < rest.size(); ++i) c += inst.c(rest[i], rest[i + 1]);
    best = std::min(best, c);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

// optimal MD-TSP cost by assigning customers to depots exhaustively
inline Cost brute_mdtsp_cost(const MetricInstance& inst) {
  long long combos = 1;
  for (int i = 0; i < inst.n; ++i) combos *= inst.k;
  Cost best = kInf;
  for (long long code = 0; code < combos; ++code) {
    long long c2 = code;
    std::vector<std::vector<int>> groups(inst.k);
    for (int i = 0; i < inst.n; ++i) {
      groups[c2 % inst.k].push_back(inst.k + i);
      c2 /= inst.k;
    }
    Cost total = 0;
    for (int u = 0; u < inst.k; ++u) {
      std::vector<int> verts = {u};
      verts.insert(verts.end(), groups[u].begin(), groups[u].end());
      total += exact_tsp_cycle(inst, verts);
    }
    best = std::min(best, total);
  }
  return best;
}

// ---- depot spanning forest ----

inline Cost mst_cost(const MetricInstance& inst, const std::vector<int>& verts) {
  if (verts.size() <= 1) return 0;
  int n = (int)verts.size();
  std::vector<bool> used(n, false);
  std::vector<Cost> key(n, kInf);
  used[0] = true;
  Cost total = 0;
  for (int v = 1; v < n; ++v) key[v] = inst.c(verts[0], verts[v]);
  for (int s = 1; s < n; ++s) {
    int pick = -1;
    for (int v = 1; v < n; ++v)
      if (!used[v] && (pick == -1 || key[v] < key[pick])) pick = v;
    used[pick] = true;
    total += key[pick];
    for (int v = 1; v < n; ++v)
      if (!used[v]) key[v] = std::min(key[v], inst.c(verts[pick], verts[v]));
  }
  return total;
}

// best depot-respecting spanning forest by exhaustive customer assignment
inline Cost brute_depot_forest_cost(const MetricInstance& inst) {
  long long combos = 1;
  for (int i = 0; i < inst.n; ++i) combos *= inst.k;
  Cost best = kInf;
  for (long long code = 0; code < combos; ++code) {
    long long c2 = code;
    std::vector<std::vector<int>> groups(inst.k);
    for (int i = 0; i < inst.n; ++i) {
      groups[c2 % inst.k].push_back(inst.k + i);
      c2 /= inst.k;
    }
    Cost total = 0;
    for (int u = 0; u < inst.k; ++u) {
      std::vector<int> verts = {u};
      verts.insert(verts.end(), groups[u].begin(), groups[u].end());
      total += mst_cost(inst, verts);
    }
    best = std::min(best, total);
  }
  return best;
}

// ---- mod-Q cycle covers ----

// cheapest cycle cover where every part's demand is divisible by Q;
// enumerates set partitions and optimal cycles per part
inline Cost brute_modq_cover_cost(const MetricInstance& inst,
                                  const std::vector<Demand>& dummy) {
  int V = inst.num_vertices();
  std::vector<Demand> dem(V);
  for (int v = 0; v < V; ++v)
    dem[v] = (inst.is_depot(v) ? dummy[v] : inst.demand_of(v)) % inst.Q;

  std::vector<int> part(V, 0);
  Cost best = kInf;
  auto eval = [&](int blocks) {
    std::vector<std::vector<int>> groups(blocks);
    for (int v = 0; v < V; ++v) groups[part[v]].push_back(v);
    Cost total = 0;
    for (auto& g : groups) {
      Demand s = 0;
      for (int v : g) s = (s + dem[v]) % inst.Q;
      if (s != 0) return;
      if (g.size() == 2) total += 2 * inst.c(g[0], g[1]);
      else if (g.size() > 2) total += exact_tsp_cycle(inst, g);
      if (total >= best) return;
    }
    best = std::min(best, total);
  };
  auto rec = [&](auto&& self, int v, int blocks) -> void {
    if (v == V) {
      eval(blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      part[v] = b;
      self(self, v + 1, std::max(blocks, b + 1));
    }
  };
  rec(rec, 0, 0);
  return best;
}

// ---- tour partition (unit-expanded iterated tour partition) ----

// min over all unit starts of slicing the expanded cycle into capacity
// chunks; duplicates of one customer sit at distance zero by identity
inline Cost brute_best_split_cost(const MetricInstance& inst, int depot,
                                  const std::vector<int>& cycle,
                                  const std::map<int, Demand>& lambda, Demand Qp) {
  Demand total = 0;
  for (auto& [v, a] : lambda) total += a;
  if (total == 0) return 0;
  Demand pad = (Qp - total % Qp) % Qp;
  std::vector<int> units;  // vertex per demand unit; depot id stands for the dummy
  for (Demand i = 0; i < pad; ++i) units.push_back(depot);
  for (int v : cycle) {
    auto it = lambda.find(v);
    if (it == lambda.end()) continue;
    for (Demand i = 0; i < it->second; ++i) units.push_back(v);
  }
  long long t = (long long)units.size();
  Cost best = kInf;
  for (long long start = 0; start < t; ++start) {
    Cost c = 0;
    for (long long chunk = 0; chunk < t / Qp; ++chunk) {
      long long first = chunk * Qp;
      int prev = -1;
      for (long long i = 0; i < Qp; ++i) {
        int v = units[(start + first + i) % t];
        if (prev == -1) c += inst.c(depot, v);
        else c += inst.c(prev, v);
        prev = v;
      }
      c += inst.c(prev, depot);
    }
    best = std::min(best, c);
  }
  return best;
}

// ---- tiny instance builders ----

// generate_instance needs one vehicle per depot; pad the slack when the
// drawn demands are too small to justify k vehicles
inline MetricInstance gen_valid(std::uint64_t seed, int n, int k, Demand Q, Demand qlo,
                                Demand qhi, Demand slack) {
  try {
    return generate_instance(seed, n, k, Q, qlo, qhi, FleetPolicy::with_slack(slack));
  } catch (const GenerationError&) {
    return generate_instance(seed, n, k, Q, qlo, qhi,
                             FleetPolicy::with_slack(slack + (Demand)k * Q));
  }
}

inline MetricInstance make_instance(int k, int n, Demand Q, std::vector<Demand> fleet,
                                    std::vector<Demand> demand,
                                    std::vector<std::vector<Cost>> cost) {
  MetricInstance inst;
  inst.k = k;
  inst.n = n;
  inst.Q = Q;
  inst.fleet = std::move(fleet);
  inst.demand = std::move(demand);
  inst.cost = std::move(cost);
  return inst;
}

// complete metric from points on a line (distance = |a-b|)
inline MetricInstance line_instance(int k, int n, Demand Q, std::vector<Demand> fleet,
                                    std::vector<Demand> demand, std::vector<Cost> pos) {
  int V = k + n;
  std::vector<std::vector<Cost>> c(V, std::vector<Cost>(V, 0));
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) c[i][j] = std::llabs(pos[i] - pos[j]);
  return make_instance(k, n, Q, std::move(fleet), std::move(demand), std::move(c));
}

}  // namespace oracles
