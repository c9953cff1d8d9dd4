#include "mdsdvrp/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace mdsdvrp {

namespace {
constexpr Cost kInfCost = std::numeric_limits<Cost>::max() / 4;
constexpr long long kInfFlow = std::numeric_limits<long long>::max() / 4;
}  // namespace

FlowResult min_cost_max_flow(const FlowNetwork& net) {
  int n = net.num_nodes;
  if (net.source < 0 || net.source >= n || net.sink < 0 || net.sink >= n)
    throw ContractError("min_cost_max_flow: bad terminals");
  struct Res {
    int to;
    long long cap;
    Cost cost;
    int rev;
    int arc_id;  // -1 for reverse arcs
  };
  std::vector<std::vector<Res>> adj(n);
  for (int i = 0; i < (int)net.arcs.size(); ++i) {
    const auto& a = net.arcs[i];
    if (a.cost < 0) throw ContractError("min_cost_max_flow: negative arc cost");
    if (a.cap != kUnboundedCap && a.cap < 0)
      throw ContractError("min_cost_max_flow: negative capacity");
    long long cap = a.cap == kUnboundedCap ? kInfFlow : a.cap;
    adj[a.from].push_back({a.to, cap, a.cost, (int)adj[a.to].size(), i});
    adj[a.to].push_back({a.from, 0, -a.cost, (int)adj[a.from].size() - 1, -1});
  }

  FlowResult res;
  res.flow.assign(net.arcs.size(), 0);
  if (net.source == net.sink) return res;

  // costs are non-negative, so zero potentials are valid initially
  std::vector<Cost> pot(n, 0), dist(n);
  std::vector<int> pv(n), pe(n);
  std::vector<bool> done(n);

  for (;;) {
    std::fill(dist.begin(), dist.end(), kInfCost);
    std::fill(done.begin(), done.end(), false);
    dist[net.source] = 0;
    using QE = std::pair<Cost, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    pq.push({0, net.source});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (done[v]) continue;
      done[v] = true;
      for (int ei = 0; ei < (int)adj[v].size(); ++ei) {
        const Res& e = adj[v][ei];
        if (e.cap <= 0 || done[e.to]) continue;
        Cost nd = d + e.cost + pot[v] - pot[e.to];
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          pv[e.to] = v;
          pe[e.to] = ei;
          pq.push({nd, e.to});
        }
      }
    }
    if (dist[net.sink] >= kInfCost) break;
    for (int v = 0; v < n; ++v)
      if (dist[v] < kInfCost) pot[v] += dist[v];

    long long push = kInfFlow;
    for (int v = net.sink; v != net.source; v = pv[v])
      push = std::min(push, adj[pv[v]][pe[v]].cap);
    for (int v = net.sink; v != net.source; v = pv[v]) {
      Res& e = adj[pv[v]][pe[v]];
      e.cap -= push;
      adj[v][e.rev].cap += push;
    }
    res.max_flow += push;
  }

  for (int v = 0; v < n; ++v)
    for (const Res& e : adj[v])
      if (e.arc_id >= 0) {
        const auto& a = net.arcs[e.arc_id];
        long long orig = a.cap == kUnboundedCap ? kInfFlow : a.cap;
        res.flow[e.arc_id] = orig - e.cap;
        res.total_cost += res.flow[e.arc_id] * a.cost;
      }
  return res;
}

}  // namespace mdsdvrp
