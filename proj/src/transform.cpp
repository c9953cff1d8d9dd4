#include "mdsdvrp/transform.hpp"

#include <algorithm>
#include <limits>

namespace mdsdvrp {

namespace {

struct Prepared {
  std::vector<ExtractedPath> trivial;  // across all cycles, customer id order
  std::vector<ExtractedPath> paths;    // across all cycles, cycle then path order
  long long ell = 0;
  Cost cover_cost = 0;
};

Prepared prepare(const MetricInstance& inst, const TransformInput& input) {
  const ComponentSet& cover = input.cover;
  if (cover.kind != ComponentSet::kCycleCover)
    throw ContractError("transform: input must be a cycle cover");
  const std::vector<Demand>* dummy = input.dummy ? &*input.dummy : nullptr;
  if (dummy && (int)dummy->size() != inst.k)
    throw ContractError("transform: dummy demands must cover all depots");

  std::vector<bool> covered(inst.num_vertices(), false);
  for (auto& c : cover.comps)
    for (int v : c.vertices) {
      if (covered[v]) throw ContractError("transform: vertex covered twice");
      covered[v] = true;
    }
  for (int v = 0; v < inst.num_vertices(); ++v)
    if (!covered[v]) throw ContractError("transform: cover does not span V");

  auto served = [&](int v) { return inst.is_customer(v) || dummy != nullptr; };
  auto demand = [&](int v) -> Demand {
    return inst.is_customer(v) ? inst.demand_of(v) : (*dummy)[v];
  };

  Prepared prep;
  prep.cover_cost = cover.cost(inst);
  prep.ell = lower_ell(cover, inst, dummy);
  if (prep.ell > inst.total_fleet())
    throw ContractError("transform: cover needs " + std::to_string(prep.ell) +
                        " vehicles but only " + std::to_string(inst.total_fleet()) +
                        " exist");

  for (auto& comp : cover.comps) {
    std::vector<int> seq = cycle_sequence(comp);
    std::vector<int> members;
    for (int v : seq)
      if (served(v)) members.push_back(v);
    if (members.empty()) continue;

    std::map<int, Demand> dem;
    for (int v : members) dem[v] = demand(v);
    PeelResult peel = peel_trivial(dem, inst.Q);
    for (auto& tp : peel.trivial) prep.trivial.push_back(tp);
    for (auto& p : extract_paths(members, peel.residual, inst.Q))
      prep.paths.push_back(std::move(p));
  }
  std::sort(prep.trivial.begin(), prep.trivial.end(),
            [](const ExtractedPath& a, const ExtractedPath& b) {
              return a.verts[0] < b.verts[0];
            });
  return prep;
}

struct AssignmentFlow {
  FlowNetwork net;
  FlowResult flow;
  // arc ids: arc_trivial[i][u] and arc_path[i][u]
  std::vector<std::vector<int>> arc_trivial, arc_path;
};

AssignmentFlow assignment_flow(const MetricInstance& inst, const Prepared& prep) {
  AssignmentFlow out;
  FlowNetwork& net = out.net;
  net.source = net.add_node();
  net.sink = net.add_node();
  std::vector<int> depot_node(inst.k);
  for (int u = 0; u < inst.k; ++u) {
    depot_node[u] = net.add_node();
    net.add_arc(depot_node[u], net.sink, inst.fleet[u], 0);
  }
  out.arc_trivial.assign(prep.trivial.size(), std::vector<int>(inst.k, -1));
  out.arc_path.assign(prep.paths.size(), std::vector<int>(inst.k, -1));
  for (size_t i = 0; i < prep.trivial.size(); ++i) {
    int node = net.add_node();
    net.add_arc(net.source, node, prep.trivial[i].load, 0);
    int v = prep.trivial[i].verts[0];
    for (int u = 0; u < inst.k; ++u) {
      out.arc_trivial[i][u] = (int)net.arcs.size();
      net.add_arc(node, depot_node[u], kUnboundedCap, inst.c(v, u));
    }
  }
  for (size_t i = 0; i < prep.paths.size(); ++i) {
    int node = net.add_node();
    net.add_arc(net.source, node, 1, 0);
    for (int u = 0; u < inst.k; ++u) {
      Cost best = std::numeric_limits<Cost>::max();
      for (int v : prep.paths[i].verts) best = std::min(best, inst.c(v, u));
      out.arc_path[i][u] = (int)net.arcs.size();
      net.add_arc(node, depot_node[u], kUnboundedCap, best);
    }
  }
  out.flow = min_cost_max_flow(net);
  if (out.flow.max_flow != prep.ell)
    throw ContractError("transform: assignment flow " + std::to_string(out.flow.max_flow) +
                        " != ell = " + std::to_string(prep.ell));
  return out;
}

}  // namespace

TransformResult transform(const MetricInstance& inst, const TransformInput& input) {
  Prepared prep = prepare(inst, input);
  TransformResult res;
  res.cert.cover_cost = prep.cover_cost;
  res.cert.ell = prep.ell;
  if (prep.ell == 0) {
    res.cert.bound_ok = res.cert.vehicles_ok = res.cert.depot_caps_ok = true;
    return res;
  }

  AssignmentFlow af = assignment_flow(inst, prep);
  res.cert.flow_opt = af.flow.total_cost;

  auto bases = vehicle_bases(inst);
  std::vector<long long> next_vehicle(inst.k);
  for (int u = 0; u < inst.k; ++u) next_vehicle[u] = bases[u];

  for (int u = 0; u < inst.k; ++u) {
    for (size_t i = 0; i < prep.trivial.size(); ++i) {
      long long x = af.flow.flow[af.arc_trivial[i][u]];
      int v = prep.trivial[i].verts[0];
      for (long long c = 0; c < x; ++c) {
        Tour t;
        t.vehicle = next_vehicle[u]++;
        t.depot = u;
        t.seq = {u, v, u};
        t.lambda[v] = inst.Q;
        res.solution.tours.push_back(std::move(t));
      }
    }
    for (size_t i = 0; i < prep.paths.size(); ++i) {
      if (af.flow.flow[af.arc_path[i][u]] != 1) continue;
      const ExtractedPath& p = prep.paths[i];
      // cheapest connection customer; the doubled walk is shortcut so the
      // tour runs from it to the far end, then back over the near side
      size_t pin = 0;
      for (size_t j = 1; j < p.verts.size(); ++j)
        if (inst.c(p.verts[j], u) < inst.c(p.verts[pin], u)) pin = j;
      Tour t;
      t.vehicle = next_vehicle[u]++;
      t.depot = u;
      t.seq.push_back(u);
      for (size_t j = pin; j < p.verts.size(); ++j) t.seq.push_back(p.verts[j]);
      for (size_t j = pin; j-- > 0;) t.seq.push_back(p.verts[j]);
      t.seq.push_back(u);
      t.lambda = p.assign;

      Cost path_cost = 0;
      for (size_t j = 0; j + 1 < p.verts.size(); ++j)
        path_cost += inst.c(p.verts[j], p.verts[j + 1]);
      if (tour_cost(inst, t) > 2 * (path_cost + inst.c(p.verts[pin], u)))
        throw ContractError("transform: doubled-path tour exceeds its bound");
      res.solution.tours.push_back(std::move(t));
    }
  }

  res.cert.solution_cost = solution_cost(inst, res.solution);
  res.cert.vehicles_used = (long long)res.solution.tours.size();
  res.cert.vehicles_ok = res.cert.vehicles_used == prep.ell;
  res.cert.depot_caps_ok = true;
  std::vector<long long> used(inst.k, 0);
  for (auto& t : res.solution.tours) ++used[t.depot];
  for (int u = 0; u < inst.k; ++u)
    if (used[u] > inst.fleet[u]) res.cert.depot_caps_ok = false;
  res.cert.bound_ok =
      res.cert.solution_cost <= 2 * res.cert.cover_cost + 2 * res.cert.flow_opt;
  if (!res.cert.bound_ok || !res.cert.vehicles_ok || !res.cert.depot_caps_ok)
    throw ContractError("transform: certificate violated");
  return res;
}

TransformCertificate transform_cost_certificate(const MetricInstance& inst,
                                                const TransformInput& input,
                                                const Solution& sol) {
  Prepared prep = prepare(inst, input);
  TransformCertificate cert;
  cert.cover_cost = prep.cover_cost;
  cert.ell = prep.ell;
  cert.solution_cost = solution_cost(inst, sol);
  cert.vehicles_used = (long long)sol.tours.size();
  cert.vehicles_ok = cert.vehicles_used == prep.ell;
  if (prep.ell > 0) cert.flow_opt = assignment_flow(inst, prep).flow.total_cost;
  cert.bound_ok = cert.solution_cost <= 2 * cert.cover_cost + 2 * cert.flow_opt;
  std::vector<long long> used(inst.k, 0);
  for (auto& t : sol.tours) ++used[t.depot];
  cert.depot_caps_ok = true;
  for (int u = 0; u < inst.k; ++u)
    if (used[u] > inst.fleet[u]) cert.depot_caps_ok = false;
  return cert;
}

}  // namespace mdsdvrp
