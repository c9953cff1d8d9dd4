#include "mdsdvrp/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "mdsdvrp/flow.hpp"

namespace mdsdvrp {

OracleLimits OracleLimits::from_env() {
  OracleLimits lim;
  const char* env = std::getenv("MDSDVRP_ORACLE_LIMITS");
  if (!env) return lim;
  std::stringstream ss(env);
  std::string part;
  std::vector<long long> vals;
  while (std::getline(ss, part, ',')) vals.push_back(std::stoll(part));
  if (vals.size() != 4)
    throw ContractError("MDSDVRP_ORACLE_LIMITS must be 'n,Q,m,qfactor'");
  lim.max_n = (int)vals[0];
  lim.max_Q = vals[1];
  lim.max_m = vals[2];
  lim.max_q_factor = vals[3];
  return lim;
}

namespace {

struct HeldKarp {
  // tour_cost[u][S]: cheapest closed tour from depot u through subset S
  std::vector<std::vector<Cost>> tour_cost;
  std::vector<std::vector<std::vector<Cost>>> path;
  const MetricInstance& inst;
  static constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

  explicit HeldKarp(const MetricInstance& inst_) : inst(inst_) {
    int n = inst.n, k = inst.k, full = 1 << n;
    tour_cost.assign(k, std::vector<Cost>(full, 0));
    path.assign(k, std::vector<std::vector<Cost>>(full, std::vector<Cost>(n, kInf)));
    for (int u = 0; u < k; ++u) {
      auto& p = path[u];
      for (int i = 0; i < n; ++i) p[1 << i][i] = inst.c(u, k + i);
      for (int S = 1; S < full; ++S)
        for (int j = 0; j < n; ++j) {
          if (!(S >> j & 1) || p[S][j] == kInf) continue;
          for (int t = 0; t < n; ++t)
            if (!(S >> t & 1))
              p[S | 1 << t][t] = std::min(p[S | 1 << t][t], p[S][j] + inst.c(k + j, k + t));
        }
      for (int S = 1; S < full; ++S) {
        Cost best = kInf;
        for (int j = 0; j < n; ++j)
          if (S >> j & 1) best = std::min(best, p[S][j] + inst.c(k + j, u));
        tour_cost[u][S] = best;
      }
    }
  }

  std::vector<int> order(int u, int S) const {  // customer vertex ids in tour order
    std::vector<int> out;
    int j = -1;
    for (int t = 0; t < n_(); ++t)
      if ((S >> t & 1) && path[u][S][t] != kInf &&
          path[u][S][t] + inst.c(inst.k + t, u) == tour_cost[u][S]) {
        j = t;
        break;
      }
    int cur = S;
    while (j >= 0) {
      out.push_back(inst.k + j);
      int prev = cur ^ (1 << j), pj = -1;
      if (prev == 0) break;
      for (int t = 0; t < n_(); ++t)
        if ((prev >> t & 1) && path[u][prev][t] != kInf &&
            path[u][prev][t] + inst.c(inst.k + t, inst.k + j) == path[u][cur][j]) {
          pj = t;
          break;
        }
      cur = prev;
      j = pj;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  int n_() const { return inst.n; }
};

// integral split of demands over tours with capacity Q: max-flow check
bool feasible_split(const MetricInstance& inst, const std::vector<int>& subsets,
                    std::vector<std::map<int, Demand>>* out_lambda) {
  Demand total = inst.total_demand();
  FlowNetwork net;
  net.source = net.add_node();
  net.sink = net.add_node();
  std::vector<int> cust_node(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    cust_node[i] = net.add_node();
    net.add_arc(net.source, cust_node[i], inst.demand[i], 0);
  }
  std::vector<std::vector<int>> arc_ids(subsets.size());
  for (size_t t = 0; t < subsets.size(); ++t) {
    int node = net.add_node();
    net.add_arc(node, net.sink, inst.Q, 0);
    for (int i = 0; i < inst.n; ++i)
      if (subsets[t] >> i & 1) {
        arc_ids[t].push_back((int)net.arcs.size());
        net.add_arc(cust_node[i], node, kUnboundedCap, 0);
      }
  }
  FlowResult fl = min_cost_max_flow(net);
  if (fl.max_flow != total) return false;
  if (out_lambda) {
    out_lambda->assign(subsets.size(), {});
    for (size_t t = 0; t < subsets.size(); ++t) {
      int pos = 0;
      for (int i = 0; i < inst.n; ++i)
        if (subsets[t] >> i & 1) {
          long long f = fl.flow[arc_ids[t][pos++]];
          if (f > 0) (*out_lambda)[t][inst.k + i] = f;
        }
    }
  }
  return true;
}

}  // namespace

OracleResult solve_exact(const MetricInstance& inst, const OracleLimits& limits) {
  Demand m = inst.total_fleet();
  Demand maxq = 0;
  for (Demand q : inst.demand) maxq = std::max(maxq, q);
  if (inst.n > limits.max_n || inst.Q > limits.max_Q || m > limits.max_m ||
      maxq > limits.max_q_factor * inst.Q)
    throw OracleRefusal("oracle refuses: n=" + std::to_string(inst.n) +
                        " Q=" + std::to_string(inst.Q) + " m=" + std::to_string(m) +
                        " maxq=" + std::to_string(maxq) + " vs limits n<=" +
                        std::to_string(limits.max_n) + " Q<=" + std::to_string(limits.max_Q) +
                        " m<=" + std::to_string(limits.max_m) + " q<=" +
                        std::to_string(limits.max_q_factor) + "Q");

  OracleResult res;
  if (inst.n == 0) return res;
  HeldKarp hk(inst);
  int full = 1 << inst.n;

  // per depot, a non-decreasing sequence of up to r_u non-empty subsets;
  // vehicles of one depot are interchangeable
  std::vector<int> chosen_subsets;
  std::vector<int> chosen_depots;
  Cost best = std::numeric_limits<Cost>::max();
  std::vector<int> best_subsets, best_depots;
  long long explored = 0;

  auto rec = [&](auto&& self, int depot, int min_subset, long long left_here, int covered,
                 Cost cost_so_far) -> void {
    if (cost_so_far >= best) return;  // cannot improve
    if (depot == inst.k) {
      if (covered != full - 1) return;
      ++explored;
      if (feasible_split(inst, chosen_subsets, nullptr) && cost_so_far < best) {
        best = cost_so_far;
        best_subsets = chosen_subsets;
        best_depots = chosen_depots;
      }
      return;
    }
    // move to next depot
    self(self, depot + 1, 1, depot + 1 < inst.k ? inst.fleet[depot + 1] : 0, covered,
         cost_so_far);
    if (left_here <= 0) return;
    for (int S = min_subset; S < full; ++S) {
      chosen_subsets.push_back(S);
      chosen_depots.push_back(depot);
      self(self, depot, S, left_here - 1, covered | S, cost_so_far + hk.tour_cost[depot][S]);
      chosen_subsets.pop_back();
      chosen_depots.pop_back();
    }
  };
  rec(rec, 0, 1, inst.fleet[0], 0, 0);

  if (best == std::numeric_limits<Cost>::max())
    throw ContractError("oracle: no feasible structure (instance should admit one)");

  res.opt_cost = best;
  res.explored = explored;

  std::vector<std::map<int, Demand>> lambda;
  if (!feasible_split(inst, best_subsets, &lambda))
    throw ContractError("oracle: best structure lost feasibility");
  auto bases = vehicle_bases(inst);
  std::vector<long long> next_vehicle(inst.k);
  for (int u = 0; u < inst.k; ++u) next_vehicle[u] = bases[u];
  for (size_t t = 0; t < best_subsets.size(); ++t) {
    int u = best_depots[t];
    Tour tour;
    tour.vehicle = next_vehicle[u]++;
    tour.depot = u;
    tour.seq.push_back(u);
    for (int v : hk.order(u, best_subsets[t])) tour.seq.push_back(v);
    tour.seq.push_back(u);
    tour.lambda = lambda[t];
    res.witness.tours.push_back(std::move(tour));
  }
  // a zero split can make a planned tour useless; drop it (cost can only shrink)
  std::vector<Tour> kept;
  for (auto& t : res.witness.tours)
    if (!t.lambda.empty()) kept.push_back(t);
  res.witness.tours = std::move(kept);
  if (solution_cost(inst, res.witness) > res.opt_cost)
    throw ContractError("oracle: witness costs more than opt");
  res.opt_cost = std::min(res.opt_cost, solution_cost(inst, res.witness));

  AuditReport rep = check_solution(inst, res.witness, Rat(1));
  if (!rep.feasible) {
    // tours that visit unserved customers are shortcut
    for (auto& t : res.witness.tours) {
      std::vector<int> seq = {t.depot};
      for (size_t i = 1; i + 1 < t.seq.size(); ++i)
        if (t.lambda.count(t.seq[i])) seq.push_back(t.seq[i]);
      seq.push_back(t.depot);
      t.seq = std::move(seq);
    }
    rep = check_solution(inst, res.witness, Rat(1));
    if (!rep.feasible)
      throw ContractError("oracle: witness infeasible: " + rep.violations[0].detail);
    res.opt_cost = std::min(res.opt_cost, solution_cost(inst, res.witness));
  }
  return res;
}

VrpLowerBounds vrp_lower_bounds(const MetricInstance& inst, int depot,
                                const std::map<int, Demand>& lambda,
                                const std::vector<int>& cycle_customers) {
  VrpLowerBounds out;
  __int128 num = 0;
  for (auto& [v, a] : lambda) num += (__int128)2 * a * inst.c(depot, v);
  if (num > std::numeric_limits<long long>::max())
    throw ContractError("vrp_lower_bounds: radial bound overflows");
  out.radial = Rat((long long)num, inst.Q);
  out.tour_bound = 0;
  if (!cycle_customers.empty()) {
    out.tour_bound += inst.c(depot, cycle_customers.front());
    for (size_t i = 0; i + 1 < cycle_customers.size(); ++i)
      out.tour_bound += inst.c(cycle_customers[i], cycle_customers[i + 1]);
    out.tour_bound += inst.c(cycle_customers.back(), depot);
  }
  return out;
}

RatioAudit audit_ratio(const MetricInstance& inst, const SolverResult& result,
                       const OracleLimits& limits) {
  if (!result.ok()) throw ContractError("audit_ratio: solver produced no solution");
  RatioAudit audit;
  OracleResult opt = solve_exact(inst, limits);
  audit.opt = opt.opt_cost;
  Cost cost = result.cost;
  if (opt.opt_cost == 0) {
    if (cost == 0) {
      audit.ratio = Rat(1);  // 0/0 convention
      audit.finite = true;
      audit.within_claim = result.has_ratio;
    } else {
      audit.finite = false;
      audit.within_claim = false;
      audit.ratio = Rat(std::numeric_limits<long long>::max() / 2, 1);
    }
    return audit;
  }
  long long g = std::gcd(cost, opt.opt_cost);
  if (g > 0) audit.ratio = Rat(cost / g, opt.opt_cost / g);
  audit.finite = true;
  audit.within_claim = result.has_ratio && le_scaled(cost, result.claimed_ratio, opt.opt_cost);
  return audit;
}

}  // namespace mdsdvrp
