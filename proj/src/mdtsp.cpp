#include "mdsdvrp/mdtsp.hpp"

#include <algorithm>
#include <limits>

#include "mdsdvrp/cyclecover.hpp"

namespace mdsdvrp {

void check_mdtsp_cover(const MetricInstance& inst, const ComponentSet& cover) {
  if ((int)cover.comps.size() != inst.k)
    throw ContractError("mdtsp cover: expected exactly k cycles");
  std::vector<int> seen(inst.num_vertices(), 0);
  for (auto& c : cover.comps) {
    int depots = 0;
    for (int v : c.vertices) {
      ++seen[v];
      if (inst.is_depot(v)) ++depots;
    }
    if (depots != 1) throw ContractError("mdtsp cover: cycle must contain exactly one depot");
  }
  for (int v = 0; v < inst.num_vertices(); ++v)
    if (seen[v] != 1) throw ContractError("mdtsp cover: vertex not covered exactly once");
}

namespace {

class Forest2 : public MdTspSolver {
 public:
  std::string name() const override { return "forest2"; }
  Rat claimed_ratio() const override { return Rat(2); }
  ComponentSet solve(const MetricInstance& inst) const override {
    ComponentSet forest = depot_spanning_forest(inst);
    ComponentSet cover;
    cover.kind = ComponentSet::kCycleCover;
    cover.comps.resize(inst.k);
    for (auto& tree : forest.comps) {
      int depot = -1;
      for (int v : tree.vertices)
        if (inst.is_depot(v)) depot = v;
      if (depot < 0) throw ContractError("forest2: tree without depot");
      if (tree.vertices.size() == 1) {
        cover.comps[depot] = tree;
        continue;
      }
      Component doubled = tree;
      doubled.edges.insert(doubled.edges.end(), tree.edges.begin(), tree.edges.end());
      std::sort(doubled.edges.begin(), doubled.edges.end());
      auto walk = eulerian_tour(doubled);
      cover.comps[depot] = cycle_component(shortcut_walk(inst, walk, tree.vertices));
    }
    check_mdtsp_cover(inst, cover);
    return cover;
  }
};

class ExactMdTsp : public MdTspSolver {
 public:
  explicit ExactMdTsp(int limit) : limit_(limit) {}
  std::string name() const override { return "exact"; }
  Rat claimed_ratio() const override { return Rat(1); }
  ComponentSet solve(const MetricInstance& inst) const override {
    return solve_mdtsp_exact(inst, limit_);
  }

 private:
  int limit_;
};

}  // namespace

ComponentSet solve_mdtsp_exact(const MetricInstance& inst, int limit) {
  if (inst.num_vertices() > limit)
    throw ContractError("solve_mdtsp_exact: instance has " +
                        std::to_string(inst.num_vertices()) + " vertices, limit is " +
                        std::to_string(limit));
  int n = inst.n, k = inst.k;
  int full = 1 << n;
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  auto cust = [&](int i) { return inst.k + i; };

  // held-karp closed-tour cost per depot and customer subset
  std::vector<std::vector<Cost>> tour(k, std::vector<Cost>(full, 0));
  std::vector<std::vector<std::vector<Cost>>> path(
      k, std::vector<std::vector<Cost>>(full, std::vector<Cost>(n, kInf)));
  for (int u = 0; u < k; ++u) {
    auto& p = path[u];
    for (int i = 0; i < n; ++i) p[1 << i][i] = inst.c(u, cust(i));
    for (int S = 1; S < full; ++S)
      for (int j = 0; j < n; ++j) {
        if (!(S >> j & 1) || p[S][j] == kInf) continue;
        for (int t = 0; t < n; ++t) {
          if (S >> t & 1) continue;
          Cost nd = p[S][j] + inst.c(cust(j), cust(t));
          if (nd < p[S | 1 << t][t]) p[S | 1 << t][t] = nd;
        }
      }
    for (int S = 1; S < full; ++S) {
      Cost best = kInf;
      for (int j = 0; j < n; ++j)
        if ((S >> j & 1) && p[S][j] != kInf)
          best = std::min(best, p[S][j] + inst.c(cust(j), u));
      tour[u][S] = best;
    }
  }

  // cheapest split of the customer set among the k depots
  std::vector<std::vector<Cost>> f(k + 1, std::vector<Cost>(full, kInf));
  std::vector<std::vector<int>> choice(k + 1, std::vector<int>(full, 0));
  f[0][0] = 0;
  for (int u = 0; u < k; ++u)
    for (int S = 0; S < full; ++S) {
      if (f[u][S] == kInf) continue;
      int rest = (full - 1) ^ S;
      for (int T = rest;; T = (T - 1) & rest) {
        Cost nd = f[u][S] + tour[u][T];
        if (nd < f[u + 1][S | T]) {
          f[u + 1][S | T] = nd;
          choice[u + 1][S | T] = T;
        }
        if (T == 0) break;
      }
    }

  // reconstruct subsets, then held-karp orders
  ComponentSet cover;
  cover.kind = ComponentSet::kCycleCover;
  cover.comps.resize(k);
  int S = full - 1;
  for (int u = k - 1; u >= 0; --u) {
    int T = choice[u + 1][S];
    S ^= T;
    if (T == 0) {
      cover.comps[u] = Component{{u}, {}};
      continue;
    }
    // walk the path DP backwards
    std::vector<int> order;
    int end = -1;
    for (int j = 0; j < n; ++j)
      if ((T >> j & 1) && path[u][T][j] != kInf &&
          path[u][T][j] + inst.c(cust(j), u) == tour[u][T]) {
        end = j;
        break;
      }
    int cur = T, j = end;
    while (j >= 0) {
      order.push_back(cust(j));
      int prevS = cur ^ (1 << j);
      int pj = -1;
      if (prevS == 0) break;
      for (int t = 0; t < n; ++t)
        if ((prevS >> t & 1) && path[u][prevS][t] != kInf &&
            path[u][prevS][t] + inst.c(cust(t), cust(j)) == path[u][cur][j]) {
          pj = t;
          break;
        }
      cur = prevS;
      j = pj;
    }
    std::reverse(order.begin(), order.end());
    std::vector<int> cyc = {u};
    cyc.insert(cyc.end(), order.begin(), order.end());
    cover.comps[u] = cycle_component(cyc);
  }
  check_mdtsp_cover(inst, cover);
  return cover;
}

const MdTspSolver& mdtsp_forest2() {
  static Forest2 s;
  return s;
}

const MdTspSolver& mdtsp_exact(int limit) {
  static ExactMdTsp s10(10);
  if (limit == 10) return s10;
  static ExactMdTsp s16(16);
  return s16;
}

const MdTspSolver* mdtsp_by_name(const std::string& name) {
  if (name == "forest2") return &mdtsp_forest2();
  if (name == "exact") return &mdtsp_exact();
  return nullptr;
}

}  // namespace mdsdvrp
