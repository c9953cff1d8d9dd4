#include "mdsdvrp/partition.hpp"

#include <algorithm>
#include <limits>

namespace mdsdvrp {

PeelResult peel_trivial(const std::map<int, Demand>& demands, Demand Q) {
  if (Q < 1) throw ContractError("peel_trivial: Q must be >= 1");
  PeelResult out;
  for (auto& [v, q] : demands) {
    if (q < 0) throw ContractError("peel_trivial: negative demand");
    if (q >= Q) {
      ExtractedPath p;
      p.verts = {v};
      p.load = q / Q;
      p.assign[v] = (q / Q) * Q;
      out.trivial.push_back(std::move(p));
    }
    out.residual[v] = q % Q;
  }
  return out;
}

std::vector<ExtractedPath> extract_paths(const std::vector<int>& cycle,
                                         const std::map<int, Demand>& residual, Demand Q) {
  std::vector<Demand> q;
  q.reserve(cycle.size());
  for (int v : cycle) {
    auto it = residual.find(v);
    Demand qv = it == residual.end() ? 0 : it->second;
    if (qv < 0 || qv >= Q)
      throw ContractError("extract_paths: residual demand must satisfy 0 <= q < Q");
    q.push_back(qv);
  }
  Demand left = 0;
  for (Demand x : q) left += x;

  std::vector<ExtractedPath> out;
  size_t start = 0;
  while (left > 0) {
    Demand target = std::min(Q, left);
    Demand got = 0;
    size_t end = start;
    for (;; ++end) {
      if (end >= cycle.size())
        throw ContractError("extract_paths: ran past the cycle end");
      got += q[end];
      if (got >= target) break;
    }
    ExtractedPath p;
    p.verts.assign(cycle.begin() + start, cycle.begin() + end + 1);
    Demand before = got - q[end];
    for (size_t i = start; i < end; ++i) {
      if (q[i] > 0) p.assign[cycle[i]] = q[i];
      q[i] = 0;
    }
    Demand last = target - before;
    if (last > 0) p.assign[cycle[end]] = last;
    q[end] -= last;
    left -= target;
    start = end;
    out.push_back(std::move(p));
  }
  return out;
}

PartitionResult partition_cycle_tours(const MetricInstance& inst, int depot,
                                       const std::vector<int>& cycle_customers,
                                       const std::map<int, Demand>& lambda, Demand Qp) {
  if (Qp < 1) throw ContractError("partition_cycle_tours: Qp must be >= 1");
  constexpr int kDummy = -1;  // stands at the depot, zero distance to it
  auto dist = [&](int a, int b) {
    if (a == kDummy) a = depot;
    if (b == kDummy) b = depot;
    return inst.c(a, b);
  };

  PartitionResult res;
  Demand total = 0;
  for (auto& [v, a] : lambda) {
    if (a < 0) throw ContractError("partition_cycle_tours: negative demand");
    total += a;
  }
  if (total == 0) return res;

  // full-capacity loads leave as trivial tours
  PeelResult peel = peel_trivial(lambda, Qp);
  for (auto& tp : peel.trivial) {
    int v = tp.verts[0];
    for (long long i = 0; i < tp.load; ++i) {
      Tour t;
      t.vehicle = -1;
      t.depot = depot;
      t.seq = {depot, v, depot};
      t.lambda[v] = Qp;
      res.tours.push_back(std::move(t));
    }
  }

  // residual cycle with the padding dummy in the depot's slot
  Demand pad = (Qp - total % Qp) % Qp;
  std::vector<int> cyc;
  std::map<int, Demand> rq;
  if (pad > 0) {
    cyc.push_back(kDummy);
    rq[kDummy] = pad;
  }
  for (int v : cycle_customers) {
    auto it = peel.residual.find(v);
    if (it != peel.residual.end() && it->second > 0) {
      cyc.push_back(v);
      rq[v] = it->second;
    }
  }

  if (!cyc.empty()) {
    int t2 = (int)cyc.size();
    Cost best_cost = std::numeric_limits<Cost>::max();
    int best_start = 0;
    std::vector<ExtractedPath> best_paths;
    for (int s = 0; s < t2; ++s) {
      std::vector<int> rot(cyc.begin() + s, cyc.end());
      rot.insert(rot.end(), cyc.begin(), cyc.begin() + s);
      auto paths = extract_paths(rot, rq, Qp);
      Cost c = 0;
      for (auto& p : paths) {
        int prev = -2;  // -2: nothing yet
        for (int v : p.verts) {
          if (!p.assign.count(v)) continue;  // exhausted split vertex
          c += prev == -2 ? dist(depot, v) : dist(prev, v);
          prev = v;
        }
        c += dist(prev, depot);
      }
      if (c < best_cost) {
        best_cost = c;
        best_start = s;
        best_paths = std::move(paths);
      }
    }
    res.best_start = best_start;
    for (auto& p : best_paths) {
      Tour t;
      t.vehicle = -1;
      t.depot = depot;
      t.seq.push_back(depot);
      // an exhausted split vertex contributes nothing to this tour;
      // shortcut it (and the dummy) out of the emitted sequence
      for (int v : p.verts)
        if (v != kDummy && p.assign.count(v)) t.seq.push_back(v);
      t.seq.push_back(depot);
      for (auto& [v, a] : p.assign)
        if (v != kDummy) t.lambda[v] = a;
      if (t.seq.size() >= 3) res.tours.push_back(std::move(t));
    }
  }

  res.tour_count = (long long)res.tours.size();
  long long want = (total + Qp - 1) / Qp;
  if (res.tour_count != want)
    throw ContractError("partition_cycle_tours: tour count " +
                        std::to_string(res.tour_count) + " != ceil(total/Qp) = " +
                        std::to_string(want));

  for (auto& t : res.tours) res.cost += tour_cost(inst, t);

  // cost <= c(C_u) + sum(2 lambda_i c(u,v_i)) / Qp, checked exactly
  Cost cycle_cost = 0;
  if (!cycle_customers.empty()) {
    cycle_cost += inst.c(depot, cycle_customers.front());
    for (size_t i = 0; i + 1 < cycle_customers.size(); ++i)
      cycle_cost += inst.c(cycle_customers[i], cycle_customers[i + 1]);
    cycle_cost += inst.c(cycle_customers.back(), depot);
  }
  __int128 radial = 0;
  for (auto& [v, a] : lambda) radial += (__int128)2 * a * inst.c(depot, v);
  if ((__int128)res.cost * Qp > (__int128)cycle_cost * Qp + radial)
    throw ContractError("partition_cycle_tours: cost bound violated");
  return res;
}

}  // namespace mdsdvrp
