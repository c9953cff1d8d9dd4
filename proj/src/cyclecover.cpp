#include "mdsdvrp/cyclecover.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace mdsdvrp {

ComponentSet depot_spanning_forest(const MetricInstance& inst) {
  if (inst.k < 1) throw ContractError("depot_spanning_forest: k >= 1 required");
  // vertex 0 is the contracted super-depot, then the n customers
  int nn = inst.n + 1;
  std::vector<Cost> super_cost(inst.n);
  std::vector<int> super_arg(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    int v = inst.k + i;
    Cost best = inst.c(0, v);
    int arg = 0;
    for (int u = 1; u < inst.k; ++u)
      if (inst.c(u, v) < best) {
        best = inst.c(u, v);
        arg = u;
      }
    super_cost[i] = best;
    super_arg[i] = arg;
  }
  auto w = [&](int a, int b) -> Cost {
    if (a > b) std::swap(a, b);
    if (a == 0) return super_cost[b - 1];
    return inst.c(inst.k + a - 1, inst.k + b - 1);
  };

  // Prim from the super-vertex; ties resolved by smaller parent id then
  // smaller vertex id so the forest is deterministic.
  std::vector<bool> in_tree(nn, false);
  std::vector<Cost> key(nn, std::numeric_limits<Cost>::max());
  std::vector<int> parent(nn, -1);
  in_tree[0] = true;
  for (int b = 1; b < nn; ++b) {
    key[b] = w(0, b);
    parent[b] = 0;
  }
  std::vector<Edge> forest_edges;
  for (int step = 1; step < nn; ++step) {
    int pick = -1;
    for (int v = 1; v < nn; ++v)
      if (!in_tree[v] && (pick == -1 || key[v] < key[pick])) pick = v;
    in_tree[pick] = true;
    int cust = inst.k + pick - 1;
    int par = parent[pick] == 0 ? super_arg[pick - 1] : inst.k + parent[pick] - 1;
    forest_edges.push_back(make_edge(par, cust));
    for (int v = 1; v < nn; ++v)
      if (!in_tree[v]) {
        Cost c = w(pick, v);
        if (c < key[v] || (c == key[v] && pick < parent[v])) {
          key[v] = c;
          parent[v] = pick;
        }
      }
  }
  return components_from_edges(inst.num_vertices(), forest_edges);
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
};

}  // namespace

std::vector<Edge> doubled_connecting_edges(const MetricInstance& inst,
                                           const std::vector<Component>& parts) {
  std::vector<Edge> out;
  if (parts.size() < 2) return out;
  std::vector<bool> connected(parts.size(), false);
  connected[0] = true;
  for (size_t step = 1; step < parts.size(); ++step) {
    Cost best = std::numeric_limits<Cost>::max();
    int bx = -1, by = -1;
    size_t bidx = 0;
    for (size_t ci = 0; ci < parts.size(); ++ci) {
      if (!connected[ci]) continue;
      for (size_t cj = 0; cj < parts.size(); ++cj) {
        if (connected[cj]) continue;
        for (int x : parts[ci].vertices)
          for (int y : parts[cj].vertices) {
            Edge e = make_edge(x, y);
            Cost c = inst.c(e.first, e.second);
            if (c < best || (c == best && (bx == -1 || e < make_edge(bx, by)))) {
              best = c;
              bx = e.first;
              by = e.second;
              bidx = cj;
            }
          }
      }
    }
    connected[bidx] = true;
    out.push_back(make_edge(bx, by));
    out.push_back(make_edge(bx, by));
  }
  return out;
}

ComponentSet modq_cycle_cover(const MetricInstance& inst,
                              const std::vector<Demand>& depot_dummy) {
  int V = inst.num_vertices();
  Demand Q = inst.Q;
  if ((int)depot_dummy.size() != inst.k)
    throw ContractError("modq_cycle_cover: dummy demand vector must cover all depots");
  std::vector<Demand> dem(V);
  Demand total_mod = 0;
  for (int v = 0; v < V; ++v) {
    Demand d = inst.is_depot(v) ? depot_dummy[v] : inst.demand_of(v);
    if (inst.is_depot(v) && (d < 0 || d >= Q))
      throw ContractError("modq_cycle_cover: dummy demand out of [0,Q)");
    dem[v] = ((d % Q) + Q) % Q;
    total_mod = (total_mod + dem[v]) % Q;
  }
  if (total_mod != 0)
    throw ContractError("modq_cycle_cover: total demand not divisible by Q");

  // Growth phase. Component duals advance on a shared clock; vertex
  // accumulations are dyadic rationals kept as cpp_int numerators over a
  // running power-of-two denominator, so all event comparisons are exact.
  Dsu dsu(V);
  std::vector<Demand> comp_dem = dem;  // valid at roots
  std::vector<BigInt> acc(V, 0);
  BigInt scale_den = 1;  // acc[v] / scale_den is the dual mass around v
  int n_comps = V;
  auto active = [&](int root) { return comp_dem[root] % Q != 0; };

  std::vector<Edge> grown;  // in addition order
  for (;;) {
    bool any_active = false;
    for (int v = 0; v < V && !any_active; ++v)
      if (dsu.find(v) == v && active(v)) any_active = true;
    if (!any_active || n_comps == 1) break;

    // next tight edge: min slack/rate, ties by lexicographic edge
    bool found = false;
    BigInt best_slack = 0;
    int best_rate = 1, bi = -1, bj = -1;
    for (int i = 0; i < V; ++i)
      for (int j = i + 1; j < V; ++j) {
        int ri = dsu.find(i), rj = dsu.find(j);
        if (ri == rj) continue;
        int rate = (active(ri) ? 1 : 0) + (active(rj) ? 1 : 0);
        if (rate == 0) continue;
        BigInt slack = BigInt(inst.c(i, j)) * scale_den - acc[i] - acc[j];
        if (slack < 0) slack = 0;
        if (!found || slack * best_rate < best_slack * rate) {
          found = true;
          best_slack = slack;
          best_rate = rate;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;  // isolated active component cannot happen on a complete graph

    if (best_rate == 2 && (best_slack & 1) != 0) {
      for (auto& a : acc) a <<= 1;
      scale_den <<= 1;
      best_slack <<= 1;
    }
    BigInt eps = best_slack / best_rate;
    for (int v = 0; v < V; ++v)
      if (active(dsu.find(v))) acc[v] += eps;

    int ri = dsu.find(bi), rj = dsu.find(bj);
    Demand merged = (comp_dem[ri] + comp_dem[rj]) % Q;
    dsu.p[ri] = rj;
    comp_dem[rj] = merged;
    --n_comps;
    grown.push_back(make_edge(bi, bj));
  }

  // Prune in reverse addition order: drop an edge whenever both sides of
  // the split it creates have demand divisible by Q.
  std::vector<bool> alive(grown.size(), true);
  for (int e = (int)grown.size() - 1; e >= 0; --e) {
    std::vector<std::vector<int>> adj(V);
    for (int i = 0; i < (int)grown.size(); ++i)
      if (alive[i] && i != e) {
        adj[grown[i].first].push_back(grown[i].second);
        adj[grown[i].second].push_back(grown[i].first);
      }
    auto side_dem = [&](int start) {
      Demand s = 0;
      std::vector<int> stack = {start};
      std::vector<bool> seen(V, false);
      seen[start] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        s = (s + dem[v]) % Q;
        for (int w2 : adj[v])
          if (!seen[w2]) {
            seen[w2] = true;
            stack.push_back(w2);
          }
      }
      return s;
    };
    if (side_dem(grown[e].first) == 0 && side_dem(grown[e].second) == 0) alive[e] = false;
  }
  std::vector<Edge> forest;
  for (int i = 0; i < (int)grown.size(); ++i)
    if (alive[i]) forest.push_back(grown[i]);

  // Double every tree, trace the Eulerian walk and shortcut to a cycle.
  ComponentSet trees = components_from_edges(V, forest);
  ComponentSet cover;
  cover.kind = ComponentSet::kCycleCover;
  for (auto& t : trees.comps) {
    if (t.vertices.size() == 1) {
      cover.comps.push_back(t);
      continue;
    }
    Component doubled = t;
    doubled.edges.insert(doubled.edges.end(), t.edges.begin(), t.edges.end());
    std::sort(doubled.edges.begin(), doubled.edges.end());
    auto walk = eulerian_tour(doubled);
    cover.comps.push_back(cycle_component(shortcut_walk(inst, walk, t.vertices)));
  }

  for (auto& c : cover.comps) {
    Demand s = 0;
    for (int v : c.vertices) s = (s + dem[v]) % Q;
    if (s != 0)
      throw ContractError("modq_cycle_cover: produced a cycle with demand not divisible by Q");
  }
  return cover;
}

}  // namespace mdsdvrp
