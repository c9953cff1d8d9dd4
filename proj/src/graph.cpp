#include "mdsdvrp/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mdsdvrp {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

ComponentSet components_from_edges(int num_vertices, const std::vector<Edge>& edges) {
  Dsu dsu(num_vertices);
  for (auto& e : edges) dsu.unite(e.first, e.second);
  std::map<int, int> root_to_idx;
  ComponentSet cs;
  for (int v = 0; v < num_vertices; ++v) {
    int r = dsu.find(v);
    auto [it, fresh] = root_to_idx.emplace(r, (int)cs.comps.size());
    if (fresh) cs.comps.emplace_back();
    cs.comps[it->second].vertices.push_back(v);
  }
  for (auto& e : edges) cs.comps[root_to_idx[dsu.find(e.first)]].edges.push_back(e);
  for (auto& c : cs.comps) std::sort(c.edges.begin(), c.edges.end());
  return cs;
}

std::vector<int> eulerian_tour(const Component& comp) {
  if (comp.vertices.empty()) throw ContractError("eulerian_tour: empty component");
  if (comp.edges.empty()) {
    if (comp.vertices.size() > 1) throw ContractError("eulerian_tour: disconnected");
    return {comp.vertices[0], comp.vertices[0]};
  }
  // local indexing
  std::map<int, int> idx;
  for (size_t i = 0; i < comp.vertices.size(); ++i) idx[comp.vertices[i]] = (int)i;
  int n = (int)comp.vertices.size();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge id)
  for (int ei = 0; ei < (int)comp.edges.size(); ++ei) {
    auto it1 = idx.find(comp.edges[ei].first);
    auto it2 = idx.find(comp.edges[ei].second);
    if (it1 == idx.end() || it2 == idx.end())
      throw ContractError("eulerian_tour: edge endpoint outside component");
    adj[it1->second].push_back({it2->second, ei});
    adj[it2->second].push_back({it1->second, ei});
  }
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() % 2 != 0) throw ContractError("eulerian_tour: odd degree vertex");
    std::sort(adj[v].begin(), adj[v].end());
  }
  // Hierholzer
  std::vector<size_t> next(n, 0);
  std::vector<bool> used(comp.edges.size(), false);
  std::vector<int> stack = {0}, walk;
  while (!stack.empty()) {
    int v = stack.back();
    while (next[v] < adj[v].size() && used[adj[v][next[v]].second]) ++next[v];
    if (next[v] == adj[v].size()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      auto [w, ei] = adj[v][next[v]];
      used[ei] = true;
      stack.push_back(w);
    }
  }
  if (walk.size() != comp.edges.size() + 1)
    throw ContractError("eulerian_tour: disconnected component");
  std::reverse(walk.begin(), walk.end());
  std::vector<int> out;
  out.reserve(walk.size());
  for (int v : walk) out.push_back(comp.vertices[v]);
  return out;
}

std::vector<int> shortcut_walk(const MetricInstance& inst, const std::vector<int>& walk,
                               const std::vector<int>& keep) {
  if (walk.size() < 2 || walk.front() != walk.back())
    throw ContractError("shortcut_walk: walk must be closed");
  std::vector<bool> keep_mask(inst.num_vertices(), false), seen(inst.num_vertices(), false);
  for (int v : keep) keep_mask[v] = true;
  std::vector<int> cycle;
  for (int v : walk)
    if (keep_mask[v] && !seen[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
  for (int v : keep)
    if (!seen[v]) throw ContractError("shortcut_walk: keep vertex not on walk");

  Cost walk_cost = 0;
  for (size_t i = 0; i + 1 < walk.size(); ++i) walk_cost += inst.c(walk[i], walk[i + 1]);
  Cost cyc_cost = 0;
  for (size_t i = 0; i < cycle.size(); ++i)
    cyc_cost += inst.c(cycle[i], cycle[(i + 1) % cycle.size()]);
  if (cycle.size() == 1) cyc_cost = 0;
  if (cyc_cost > walk_cost)
    throw ContractError("shortcut_walk: cost increased; costs are not metric");
  return cycle;
}

Component cycle_component(const std::vector<int>& cycle_verts) {
  Component c;
  c.vertices = cycle_verts;
  std::sort(c.vertices.begin(), c.vertices.end());
  if (cycle_verts.size() >= 2) {
    for (size_t i = 0; i < cycle_verts.size(); ++i)
      c.edges.push_back(make_edge(cycle_verts[i], cycle_verts[(i + 1) % cycle_verts.size()]));
    std::sort(c.edges.begin(), c.edges.end());
  }
  return c;
}

std::vector<int> cycle_sequence(const Component& comp) {
  if (comp.vertices.size() == 1) return {comp.vertices[0]};
  if (comp.vertices.size() == 2) return {comp.vertices[0], comp.vertices[1]};
  std::map<int, std::vector<int>> adj;
  for (auto& e : comp.edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (auto& [v, nb] : adj) {
    if (nb.size() != 2) throw ContractError("cycle_sequence: not a simple cycle");
    std::sort(nb.begin(), nb.end());
  }
  int start = comp.vertices[0];
  std::vector<int> seq = {start, adj[start][0]};
  while ((int)seq.size() < (int)comp.vertices.size()) {
    auto& nb = adj[seq.back()];
    int prev = seq[seq.size() - 2];
    seq.push_back(nb[0] == prev ? nb[1] : nb[0]);
  }
  return seq;
}

ComponentSet to_cycle_cover(const MetricInstance& inst, const ComponentSet& cs) {
  ComponentSet out;
  out.kind = ComponentSet::kCycleCover;
  for (auto& comp : cs.comps) {
    if (comp.vertices.size() == 1 || comp.edges.empty()) {
      if (comp.vertices.size() > 1) throw ContractError("to_cycle_cover: disconnected");
      out.comps.push_back({comp.vertices, {}});
      continue;
    }
    auto walk = eulerian_tour(comp);
    auto cyc = shortcut_walk(inst, walk, comp.vertices);
    out.comps.push_back(cycle_component(cyc));
  }
  return out;
}

long long lower_ell(const Component& comp, const MetricInstance& inst,
                    const std::vector<Demand>* dummy) {
  Demand total = 0;
  for (int v : comp.vertices) {
    if (inst.is_customer(v)) total += inst.demand_of(v);
    else if (dummy) total += (*dummy)[v];
  }
  return (total + inst.Q - 1) / inst.Q;
}

long long lower_ell(const ComponentSet& cs, const MetricInstance& inst,
                    const std::vector<Demand>* dummy) {
  long long s = 0;
  for (auto& c : cs.comps) s += lower_ell(c, inst, dummy);
  return s;
}

}  // namespace mdsdvrp
