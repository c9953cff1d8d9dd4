#include "mdsdvrp/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <numeric>
#include <set>

#include "mdsdvrp/cyclecover.hpp"
#include "mdsdvrp/matching.hpp"

namespace mdsdvrp {

namespace {

struct Candidate {
  bool valid = false;
  Cost cost = 0;
  Solution solution;
  TransformCertificate cert;
  bool has_cert = false;
};

// Deterministic min-reduction over enumeration iterations: candidates are
// ordered by (cost, iteration index), so the result does not depend on
// thread count or scheduling.
template <typename Fn>
std::pair<Candidate, long long> enumerate_min(long long count, bool parallel, Fn&& eval) {
  Candidate best;
  long long best_idx = -1;
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < count; ++i) {
    Candidate c;
    try {
      c = eval(i);
    } catch (...) {
#pragma omp critical
      {
        if (!err) err = std::current_exception();
      }
      continue;
    }
    if (!c.valid) continue;
#pragma omp critical
    {
      if (best_idx < 0 || c.cost < best.cost || (c.cost == best.cost && i < best_idx)) {
        best = std::move(c);
        best_idx = i;
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return {std::move(best), best_idx};
}

const MdTspSolver& pick_mdtsp(const SolveOptions& opts) {
  return opts.mdtsp ? *opts.mdtsp : mdtsp_forest2();
}

SolverResult empty_result(Rat claimed, bool has_ratio, Rat gamma) {
  SolverResult res;
  res.claimed_ratio = claimed;
  res.has_ratio = has_ratio;
  res.gamma = gamma;
  return res;
}

void finalize(SolverResult& res, const MetricInstance& inst) {
  if (!res.ok()) return;
  res.cost = solution_cost(inst, res.solution);
  AuditReport rep = check_solution(inst, res.solution, res.gamma);
  if (!rep.feasible)
    throw ContractError("solver produced an infeasible solution: " +
                        rep.violations[0].code + " (" + rep.violations[0].detail + ")");
}

std::vector<Edge> cover_edges(const ComponentSet& cs) {
  std::vector<Edge> out;
  for (auto& c : cs.comps) out.insert(out.end(), c.edges.begin(), c.edges.end());
  return out;
}

Demand cycle_demand(const MetricInstance& inst, const Component& c) {
  Demand s = 0;
  for (int v : c.vertices)
    if (inst.is_customer(v)) s += inst.demand_of(v);
  return s;
}

// Removes dummy depot customers from the interiors of emitted tours.
void strip_depot_dummies(const MetricInstance& inst, Solution& sol) {
  Solution out;
  for (auto& t : sol.tours) {
    Tour nt;
    nt.vehicle = t.vehicle;
    nt.depot = t.depot;
    nt.seq.push_back(t.depot);
    for (size_t i = 1; i + 1 < t.seq.size(); ++i)
      if (inst.is_customer(t.seq[i])) nt.seq.push_back(t.seq[i]);
    nt.seq.push_back(t.depot);
    for (auto& [v, a] : t.lambda)
      if (inst.is_customer(v)) nt.lambda[v] = a;
    if (nt.seq.size() >= 3) out.tours.push_back(std::move(nt));
  }
  sol = std::move(out);
}

}  // namespace

SolverResult alg1(const MetricInstance& inst, const SolveOptions& opts) {
  const MdTspSolver& mdtsp = pick_mdtsp(opts);
  SolverResult res = empty_result(Rat(2) * mdtsp.claimed_ratio() + Rat(3), true, Rat(1));
  if (inst.n == 0) return res;

  ComponentSet B = mdtsp.solve(inst);
  std::vector<Edge> b_edges = cover_edges(B);
  std::set<Edge> b_set(b_edges.begin(), b_edges.end());
  Demand m = inst.total_fleet();

  std::vector<Edge> cust_edges;
  for (int i = inst.k; i < inst.num_vertices(); ++i)
    for (int j = i + 1; j < inst.num_vertices(); ++j) cust_edges.push_back({i, j});
  int E = (int)cust_edges.size();

  // all edge subsets of size 0..k-1 in (size, lex) order
  std::vector<std::vector<int>> tuples;
  bool truncated = false;
  for (int sz = 0; sz <= inst.k - 1 && !truncated; ++sz) {
    std::vector<int> idx(sz);
    std::iota(idx.begin(), idx.end(), 0);
    if (sz > E) break;
    for (;;) {
      if (opts.max_iters > 0 && (long long)tuples.size() >= opts.max_iters) {
        truncated = true;
        break;
      }
      tuples.push_back(idx);
      int p = sz - 1;
      while (p >= 0 && idx[p] == E - sz + p) --p;
      if (p < 0) break;
      ++idx[p];
      for (int t = p + 1; t < sz; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  res.iterations_run = (long long)tuples.size();
  res.guarantee_void = truncated;

  std::atomic<long long> transforms{0};
  auto eval = [&](long long ti) -> Candidate {
    Candidate cand;
    std::vector<Edge> ej;
    for (int id : tuples[ti]) {
      if (b_set.count(cust_edges[id])) return cand;  // must be disjoint from E(B)
      ej.push_back(cust_edges[id]);
    }
    std::vector<Edge> eb = b_edges;
    eb.insert(eb.end(), ej.begin(), ej.end());
    ComponentSet comps = components_from_edges(inst.num_vertices(), eb);
    if (lower_ell(comps, inst) > m) return cand;

    std::vector<int> degree(inst.num_vertices(), 0);
    for (auto& e : eb) {
      ++degree[e.first];
      ++degree[e.second];
    }
    std::vector<int> odd;
    for (int v = 0; v < inst.num_vertices(); ++v)
      if (degree[v] % 2 == 1) odd.push_back(v);
    if (!odd.empty()) {
      Matching M = min_cost_perfect_matching(inst, odd);
      eb.insert(eb.end(), M.edges.begin(), M.edges.end());
    }
    ComponentSet cover = to_cycle_cover(inst, components_from_edges(inst.num_vertices(), eb));
    TransformResult tr = transform(inst, {cover, std::nullopt});
    ++transforms;
    cand.valid = true;
    cand.cost = tr.cert.solution_cost;
    cand.solution = std::move(tr.solution);
    cand.cert = tr.cert;
    cand.has_cert = true;
    return cand;
  };

  auto [best, best_idx] = enumerate_min((long long)tuples.size(), opts.parallel, eval);
  res.transforms_run = transforms.load();
  if (best_idx < 0) {
    res.diagnostic =
        "alg1: every enumerated edge set failed the vehicle filter "
        "(the MD-TSP normalization forces ell > m for all candidates)";
    return res;
  }
  res.solution = std::move(best.solution);
  res.winner_cert = best.cert;
  res.has_winner_cert = true;
  finalize(res, inst);
  return res;
}

SolverResult alg2(const MetricInstance& inst, const SolveOptions& opts) {
  const MdTspSolver& mdtsp = pick_mdtsp(opts);
  SolverResult res = empty_result(Rat(2) * mdtsp.claimed_ratio() + Rat(3), true, Rat(1));
  if (inst.n == 0) return res;

  ComponentSet B = mdtsp.solve(inst);
  Demand m = inst.total_fleet();
  std::vector<Demand> cyc_dem(inst.k);
  for (int i = 0; i < inst.k; ++i) cyc_dem[i] = cycle_demand(inst, B.comps[i]);

  // partitions of the k cycles via restricted growth strings, surviving
  // the per-part vehicle bound
  std::vector<std::vector<int>> partitions;  // rgs per survivor
  bool truncated = false;
  std::vector<int> rgs(inst.k, 0);
  for (;;) {
    int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<Demand> block_dem(blocks, 0);
    for (int i = 0; i < inst.k; ++i) block_dem[rgs[i]] += cyc_dem[i];
    long long need = 0;
    for (Demand d : block_dem) need += (d + inst.Q - 1) / inst.Q;
    if (need <= m) {
      if (opts.max_iters > 0 && (long long)partitions.size() >= opts.max_iters) {
        truncated = true;
      } else {
        partitions.push_back(rgs);
      }
    }
    // next RGS
    int p = inst.k - 1;
    for (; p > 0; --p) {
      int mx = 0;
      for (int i = 0; i < p; ++i) mx = std::max(mx, rgs[i]);
      if (rgs[p] <= mx) break;
    }
    if (p == 0) break;
    ++rgs[p];
    std::fill(rgs.begin() + p + 1, rgs.end(), 0);
    if (truncated) break;
  }
  res.iterations_run = (long long)partitions.size();
  res.guarantee_void = truncated;

  std::atomic<long long> transforms{0};
  auto eval = [&](long long pi) -> Candidate {
    const std::vector<int>& part = partitions[pi];
    int blocks = *std::max_element(part.begin(), part.end()) + 1;
    std::vector<std::vector<int>> members(blocks);
    for (int i = 0; i < inst.k; ++i) members[part[i]].push_back(i);

    std::vector<Edge> all_edges;
    for (int b = 0; b < blocks; ++b) {
      std::vector<Component> parts;
      for (int ci : members[b]) {
        auto& es = B.comps[ci].edges;
        all_edges.insert(all_edges.end(), es.begin(), es.end());
        parts.push_back(B.comps[ci]);
      }
      auto ext = doubled_connecting_edges(inst, parts);
      all_edges.insert(all_edges.end(), ext.begin(), ext.end());
    }
    ComponentSet cover =
        to_cycle_cover(inst, components_from_edges(inst.num_vertices(), all_edges));
    TransformResult tr = transform(inst, {cover, std::nullopt});
    ++transforms;
    Candidate cand;
    cand.valid = true;
    cand.cost = tr.cert.solution_cost;
    cand.solution = std::move(tr.solution);
    cand.cert = tr.cert;
    cand.has_cert = true;
    return cand;
  };

  auto [best, best_idx] = enumerate_min((long long)partitions.size(), opts.parallel, eval);
  res.transforms_run = transforms.load();
  if (best_idx < 0) {
    res.diagnostic = "alg2: every partition failed the vehicle filter";
    return res;
  }
  res.solution = std::move(best.solution);
  res.winner_cert = best.cert;
  res.has_winner_cert = true;
  finalize(res, inst);
  return res;
}

SolverResult alg3(const MetricInstance& inst, const SolveOptions& opts) {
  SolverResult res = empty_result(Rat(5), true, Rat(1));
  if (inst.n == 0) return res;

  Demand Q = inst.Q;
  Demand slack = inst.total_fleet() * Q - inst.total_demand();
  if (slack < 0) throw ContractError("alg3: instance violates sum(q) <= m*Q");
  Demand base_mod = inst.total_demand() % Q;

  // enumerate dummy demands for k-1 depots; the last is forced by the
  // divisibility constraint. Partial sums above the fleet slack are cut.
  std::vector<std::vector<Demand>> tuples;
  bool truncated = false;
  std::vector<Demand> cur(inst.k, 0);
  auto rec = [&](auto&& self, int depth, Demand used) -> void {
    if (truncated) return;
    if (depth == inst.k - 1) {
      Demand forced = (Q - (base_mod + used % Q) % Q) % Q;
      if (used + forced > slack) return;
      cur[inst.k - 1] = forced;
      if (opts.max_iters > 0 && (long long)tuples.size() >= (long long)opts.max_iters) {
        truncated = true;
        return;
      }
      tuples.push_back(cur);
      return;
    }
    for (Demand q = 0; q < Q && used + q <= slack; ++q) {
      cur[depth] = q;
      self(self, depth + 1, used + q);
    }
  };
  rec(rec, 0, 0);
  res.iterations_run = (long long)tuples.size();
  res.guarantee_void = truncated;

  std::atomic<long long> transforms{0};
  auto eval = [&](long long ti) -> Candidate {
    ComponentSet cover = modq_cycle_cover(inst, tuples[ti]);
    TransformResult tr = transform(inst, {cover, tuples[ti]});
    ++transforms;
    strip_depot_dummies(inst, tr.solution);
    Candidate cand;
    cand.valid = true;
    cand.cost = solution_cost(inst, tr.solution);
    cand.solution = std::move(tr.solution);
    cand.cert = tr.cert;
    cand.has_cert = true;
    return cand;
  };

  auto [best, best_idx] = enumerate_min((long long)tuples.size(), opts.parallel, eval);
  res.transforms_run = transforms.load();
  if (best_idx < 0) {
    res.diagnostic = "alg3: no dummy demand tuple survived the filters";
    return res;
  }
  res.solution = std::move(best.solution);
  res.winner_cert = best.cert;
  res.has_winner_cert = true;
  finalize(res, inst);
  return res;
}

namespace {

// 2-approximate master cycle through `verts` (must contain the depot):
// spanning tree, doubling, shortcut. Returns customers in cycle order
// starting after the depot.
std::vector<int> master_cycle(const MetricInstance& inst, int depot,
                              const std::vector<int>& verts) {
  if (verts.size() <= 1) return {};
  if (verts.size() == 2) return {verts[0] == depot ? verts[1] : verts[0]};
  // local Prim
  int n = (int)verts.size();
  std::vector<bool> in_tree(n, false);
  std::vector<Cost> key(n, std::numeric_limits<Cost>::max());
  std::vector<int> parent(n, -1);
  in_tree[0] = true;
  for (int v = 1; v < n; ++v) {
    key[v] = inst.c(verts[0], verts[v]);
    parent[v] = 0;
  }
  std::vector<Edge> edges;
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int v = 1; v < n; ++v)
      if (!in_tree[v] && (pick == -1 || key[v] < key[pick])) pick = v;
    in_tree[pick] = true;
    edges.push_back(make_edge(verts[parent[pick]], verts[pick]));
    for (int v = 1; v < n; ++v)
      if (!in_tree[v]) {
        Cost c = inst.c(verts[pick], verts[v]);
        if (c < key[v] || (c == key[v] && pick < parent[v])) {
          key[v] = c;
          parent[v] = pick;
        }
      }
  }
  Component comp;
  comp.vertices = verts;
  std::sort(comp.vertices.begin(), comp.vertices.end());
  comp.edges = edges;
  comp.edges.insert(comp.edges.end(), edges.begin(), edges.end());
  std::sort(comp.edges.begin(), comp.edges.end());
  auto cyc = shortcut_walk(inst, eulerian_tour(comp), comp.vertices);
  auto at = std::find(cyc.begin(), cyc.end(), depot);
  std::rotate(cyc.begin(), at, cyc.end());
  return {cyc.begin() + 1, cyc.end()};
}

}  // namespace

SolverResult alg4(const MetricInstance& inst, const SolveOptions& opts) {
  if (!(opts.eps > Rat(0))) throw ContractError("alg4: eps must be > 0");
  SolverResult res = empty_result(Rat(0), false, Rat(1) + opts.eps);
  if (inst.n == 0) return res;
  res.iterations_run = 1;

  // Default CMD-VRP plug-in: nearest-depot assignment capped at
  // (r_u+eps)Q per depot with spill to the next-nearest, then a
  // tour partition per depot at capacity Q.
  std::vector<Demand> cap(inst.k), assigned_total(inst.k, 0);
  for (int u = 0; u < inst.k; ++u)
    cap[u] = ((Rat(inst.fleet[u]) + opts.eps) * Rat(inst.Q)).floor_ll();
  std::vector<std::map<int, Demand>> assigned(inst.k);
  for (int i = 0; i < inst.n; ++i) {
    int v = inst.k + i;
    Demand rest = inst.demand[i];
    std::vector<int> order(inst.k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst.c(v, a) < inst.c(v, b); });
    for (int u : order) {
      if (rest == 0) break;
      Demand room = cap[u] - assigned_total[u];
      Demand take = std::min(rest, room);
      if (take > 0) {
        assigned[u][v] += take;
        assigned_total[u] += take;
        rest -= take;
      }
    }
    if (rest > 0) throw ContractError("alg4: plug-in could not place all demand");
  }

  // Plug-in tours (capacity Q), then the per-depot merge and
  // re-partition at the bi-factor capacity.
  Demand bigQ = ((Rat(1) + opts.eps) * Rat(inst.Q)).floor_ll();
  auto bases = vehicle_bases(inst);
  for (int u = 0; u < inst.k; ++u) {
    if (assigned[u].empty()) continue;
    std::vector<int> verts = {u};
    for (auto& [v, a] : assigned[u]) verts.push_back(v);
    PartitionResult plugin = partition_cycle_tours(
        inst, u, master_cycle(inst, u, verts), assigned[u], inst.Q);
    // plug-in contract: per-depot demand within cap, capacity-Q tours
    Demand served = 0;
    for (auto& t : plugin.tours) {
      served += t.load();
      if (t.load() > inst.Q) throw ContractError("alg4: plug-in tour exceeds Q");
    }
    if (served != assigned_total[u] || served > cap[u])
      throw ContractError("alg4: plug-in violated its per-depot demand contract");

    // merge this depot's tours into one Eulerian component
    std::vector<Edge> edges;
    for (auto& t : plugin.tours)
      for (size_t i = 0; i + 1 < t.seq.size(); ++i)
        edges.push_back(make_edge(t.seq[i], t.seq[i + 1]));
    Component comp;
    comp.vertices = verts;
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.edges = std::move(edges);
    std::sort(comp.edges.begin(), comp.edges.end());
    auto cyc = shortcut_walk(inst, eulerian_tour(comp), comp.vertices);
    auto at = std::find(cyc.begin(), cyc.end(), u);
    std::rotate(cyc.begin(), at, cyc.end());
    std::vector<int> order(cyc.begin() + 1, cyc.end());

    PartitionResult part = partition_cycle_tours(inst, u, order, assigned[u], bigQ);
    if ((long long)part.tours.size() > inst.fleet[u])
      throw ContractError("alg4: depot " + std::to_string(u) + " needs " +
                          std::to_string(part.tours.size()) + " > r_u vehicles");
    long long vid = bases[u];
    for (auto& t : part.tours) {
      t.vehicle = vid++;
      res.solution.tours.push_back(std::move(t));
    }
  }
  finalize(res, inst);
  return res;
}

Alg5Scaling alg5_scaling(const MetricInstance& inst, const Rat& eps) {
  if (!(eps > Rat(0))) throw ContractError("alg5: eps must be > 0");
  Alg5Scaling sc;
  Demand big = ((Rat(1) + eps) * Rat(inst.Q)).floor_ll();  // largest legal integer load
  if (big == inst.Q || inst.n == 0) {
    sc.direct = true;
    return sc;
  }
  // scaled instance: q~ = ceil(q / delta), Q~ = n * ceil(1 + 1/eps_i)
  // with eps_i = eps/2; shrink delta until the real value of Q~ fits
  // under the integer load cap so the final assignment can be integral.
  Rat eps_i = eps / Rat(2);
  sc.delta = eps_i * Rat(inst.Q) / Rat(inst.n);
  sc.scaled_Q = inst.n * (Rat(1) + Rat(1) / eps_i).ceil_ll();
  for (;;) {
    if (Rat(sc.scaled_Q) * sc.delta > Rat(big))
      sc.scaled_Q = (Rat(big) / sc.delta).floor_ll();
    long long need = (Rat(inst.Q) / sc.delta).ceil_ll() + inst.n;
    if (sc.scaled_Q >= need) break;
    sc.delta = sc.delta / Rat(2);
    sc.scaled_Q = (Rat(big) / sc.delta).floor_ll();
  }
  return sc;
}

SolverResult alg5(const MetricInstance& inst, const SolveOptions& opts) {
  if (!(opts.eps > Rat(0))) throw ContractError("alg5: eps must be > 0");
  Rat gamma = Rat(1) + opts.eps;
  SolverResult res = empty_result(Rat(5), true, gamma);
  if (inst.n == 0) return res;

  Demand big = (gamma * Rat(inst.Q)).floor_ll();  // largest legal integer load
  Alg5Scaling sc = alg5_scaling(inst, opts.eps);
  if (sc.direct) {
    // eps*Q < 1: the relaxed capacity admits no extra integer load, so
    // the scaling machinery cannot help; solve at the original capacity.
    res = alg3(inst, opts);
    res.gamma = gamma;
    res.claimed_ratio = Rat(5);
    return res;
  }
  Rat delta = sc.delta;

  MetricInstance scaled = inst;
  scaled.Q = sc.scaled_Q;
  for (int i = 0; i < inst.n; ++i)
    scaled.demand[i] = (Rat(inst.demand[i]) / delta).ceil_ll();
  if (scaled.total_demand() > scaled.total_fleet() * scaled.Q)
    throw ContractError("alg5: scaled instance violates the fleet bound");

  SolverResult inner = alg3(scaled, opts);
  if (!inner.ok()) {
    res.diagnostic = "alg5: inner alg3 failed: " + inner.diagnostic;
    return res;
  }
  res.iterations_run = inner.iterations_run;
  res.guarantee_void = inner.guarantee_void;
  res.transforms_run = inner.transforms_run;
  res.winner_cert = inner.winner_cert;
  res.has_winner_cert = inner.has_winner_cert;

  // Integral reassignment over the scaled tours: serve exactly q_v per
  // customer with every tour load at most floor((1+eps)Q). The scaled
  // solution rescaled by delta is a fractional witness, so the flow
  // below is always saturating.
  int T = (int)inner.solution.tours.size();
  FlowNetwork net;
  net.source = net.add_node();
  net.sink = net.add_node();
  std::vector<int> cust_node(inst.n), tour_node(T);
  for (int i = 0; i < inst.n; ++i) {
    cust_node[i] = net.add_node();
    net.add_arc(net.source, cust_node[i], inst.demand[i], 0);
  }
  for (int t = 0; t < T; ++t) {
    tour_node[t] = net.add_node();
    net.add_arc(tour_node[t], net.sink, big, 0);
  }
  std::vector<std::map<int, int>> arc_of(T);
  for (int t = 0; t < T; ++t)
    for (auto& [v, a] : inner.solution.tours[t].lambda)
      if (a > 0) {
        arc_of[t][v] = (int)net.arcs.size();
        net.add_arc(cust_node[v - inst.k], tour_node[t], kUnboundedCap, 0);
      }
  FlowResult fl = min_cost_max_flow(net);
  if (fl.max_flow != inst.total_demand())
    throw ContractError("alg5: integral reassignment is not saturating");

  for (int t = 0; t < T; ++t) {
    const Tour& st = inner.solution.tours[t];
    Tour nt;
    nt.vehicle = st.vehicle;
    nt.depot = st.depot;
    for (auto& [v, arc] : arc_of[t])
      if (fl.flow[arc] > 0) nt.lambda[v] = fl.flow[arc];
    if (nt.lambda.empty()) continue;  // emptied by the reassignment
    nt.seq.push_back(st.depot);
    for (size_t i = 1; i + 1 < st.seq.size(); ++i)
      if (nt.lambda.count(st.seq[i])) nt.seq.push_back(st.seq[i]);
    nt.seq.push_back(st.depot);
    res.solution.tours.push_back(std::move(nt));
  }
  finalize(res, inst);
  return res;
}

SolverResult sdvrp(const MetricInstance& inst, const SolveOptions&) {
  SolverResult res = empty_result(Rat(5, 2), true, Rat(1));
  if (inst.k != 1) {
    res.diagnostic = "sdvrp: instance has " + std::to_string(inst.k) +
                     " depots; this solver requires k = 1";
    return res;
  }
  if (inst.n == 0) return res;
  res.iterations_run = 1;

  // Christofides: spanning tree + matching on odd vertices + shortcut.
  int V = inst.num_vertices();
  std::vector<int> verts(V);
  std::iota(verts.begin(), verts.end(), 0);
  std::vector<bool> in_tree(V, false);
  std::vector<Cost> key(V, std::numeric_limits<Cost>::max());
  std::vector<int> parent(V, -1);
  in_tree[0] = true;
  for (int v = 1; v < V; ++v) {
    key[v] = inst.c(0, v);
    parent[v] = 0;
  }
  std::vector<Edge> edges;
  for (int step = 1; step < V; ++step) {
    int pick = -1;
    for (int v = 1; v < V; ++v)
      if (!in_tree[v] && (pick == -1 || key[v] < key[pick])) pick = v;
    in_tree[pick] = true;
    edges.push_back(make_edge(parent[pick], pick));
    for (int v = 1; v < V; ++v)
      if (!in_tree[v]) {
        Cost c = inst.c(pick, v);
        if (c < key[v] || (c == key[v] && pick < parent[v])) {
          key[v] = c;
          parent[v] = pick;
        }
      }
  }
  std::vector<int> degree(V, 0);
  for (auto& e : edges) {
    ++degree[e.first];
    ++degree[e.second];
  }
  std::vector<int> odd;
  for (int v = 0; v < V; ++v)
    if (degree[v] % 2 == 1) odd.push_back(v);
  if (!odd.empty()) {
    Matching M = min_cost_perfect_matching(inst, odd);
    edges.insert(edges.end(), M.edges.begin(), M.edges.end());
  }
  Component comp;
  comp.vertices = verts;
  comp.edges = std::move(edges);
  std::sort(comp.edges.begin(), comp.edges.end());
  auto cyc = shortcut_walk(inst, eulerian_tour(comp), comp.vertices);
  auto at = std::find(cyc.begin(), cyc.end(), 0);
  std::rotate(cyc.begin(), at, cyc.end());
  std::vector<int> order(cyc.begin() + 1, cyc.end());

  std::map<int, Demand> dem;
  for (int i = 0; i < inst.n; ++i) dem[1 + i] = inst.demand[i];
  PartitionResult part = partition_cycle_tours(inst, 0, order, dem, inst.Q);
  if ((long long)part.tours.size() > inst.total_fleet())
    throw ContractError("sdvrp: tour count exceeds the fleet");
  long long vid = 0;
  for (auto& t : part.tours) {
    t.vehicle = vid++;
    res.solution.tours.push_back(std::move(t));
  }
  finalize(res, inst);
  return res;
}

SolverResult run_solver(const std::string& name, const MetricInstance& inst,
                        const SolveOptions& opts) {
  if (name == "alg1") return alg1(inst, opts);
  if (name == "alg2") return alg2(inst, opts);
  if (name == "alg3") return alg3(inst, opts);
  if (name == "alg4") return alg4(inst, opts);
  if (name == "alg5") return alg5(inst, opts);
  if (name == "sdvrp") return sdvrp(inst, opts);
  throw ContractError("unknown solver '" + name + "'");
}

}  // namespace mdsdvrp
