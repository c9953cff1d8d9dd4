#include <doctest.h>

#include "mdsdvrp/oracle.hpp"
#include "oracles.hpp"

using namespace mdsdvrp;
using oracles::line_instance;

TEST_CASE("oracle: single customer, single vehicle") {
  auto inst = line_instance(1, 1, 3, {1}, {3}, {0, 7});
  OracleResult r = solve_exact(inst);
  CHECK(r.opt_cost == 14);
  CHECK(check_solution(inst, r.witness).feasible);
}

TEST_CASE("oracle: forced single tour equals the TSP") {
  auto inst = line_instance(1, 2, 2, {1}, {1, 1}, {0, 3, 5});
  OracleResult r = solve_exact(inst);
  CHECK(r.opt_cost == 10);  // 0-1-2-0
  CHECK(r.witness.tours.size() == 1);
}

TEST_CASE("oracle: finds solutions that require split delivery") {
  // q=(2,2,2), Q=3, two vehicles: unsplit needs three tours, so every
  // feasible solution splits some customer across the two vehicles
  auto inst = line_instance(1, 3, 3, {2}, {2, 2, 2}, {0, 1, 2, 3});
  OracleResult r = solve_exact(inst);
  CHECK(check_solution(inst, r.witness).feasible);
  CHECK(r.witness.tours.size() == 2);
  std::map<int, int> appearances;
  for (auto& t : r.witness.tours)
    for (auto& [v, a] : t.lambda) appearances[v] += 1;
  bool split = false;
  for (auto& [v, c] : appearances) split |= c > 1;
  CHECK(split);
}

TEST_CASE("oracle: the q=(3,3) Q=4 pair needs both vehicles") {
  auto inst = line_instance(1, 2, 4, {2}, {3, 3}, {0, 5, 15});
  OracleResult r = solve_exact(inst);
  CHECK(r.opt_cost == 40);  // one tour per customer
  CHECK(r.witness.tours.size() == 2);
}

TEST_CASE("oracle: refuses instances over the limits") {
  MetricInstance big = generate_instance(1, 8, 2, 5, 1, 5, FleetPolicy::with_slack(2));
  CHECK_THROWS_AS((void)solve_exact(big), OracleRefusal);
}

TEST_CASE("oracle: adding a vehicle never increases the optimum") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    MetricInstance inst =
        generate_instance(600 + seed, 3, 1, 4, 1, 4, FleetPolicy::with_slack(2));
    if (inst.total_fleet() >= 4) continue;
    OracleResult a = solve_exact(inst);
    MetricInstance more = inst;
    more.fleet[0] += 1;
    OracleResult b = solve_exact(more);
    CHECK(b.opt_cost <= a.opt_cost);
  }
}

TEST_CASE("vrp lower bounds: equality and zero cases") {
  auto inst = line_instance(1, 1, 3, {1}, {3}, {0, 7});
  VrpLowerBounds lb = vrp_lower_bounds(inst, 0, {{1, 3}}, {1});
  CHECK(lb.radial == Rat(14));  // q = Q: radial equals the optimum
  CHECK(lb.tour_bound == 14);

  auto co = line_instance(1, 2, 3, {2}, {2, 2}, {0, 0, 0});
  VrpLowerBounds lb2 = vrp_lower_bounds(co, 0, {{1, 2}, {2, 2}}, {1, 2});
  CHECK(lb2.radial == Rat(0));
}

TEST_CASE("vrp lower bounds never exceed the oracle optimum") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MetricInstance inst =
        generate_instance(700 + seed, 4, 1, 5, 1, 6, FleetPolicy::with_slack(seed % 3));
    if (inst.total_fleet() > 4) continue;
    OracleResult opt = solve_exact(inst);
    std::map<int, Demand> lam;
    std::vector<int> cyc;
    for (int i = 0; i < inst.n; ++i) {
      lam[1 + i] = inst.demand[i];
      cyc.push_back(1 + i);
    }
    VrpLowerBounds lb = vrp_lower_bounds(inst, 0, lam, cyc);
    CHECK(lb.radial <= Rat(opt.opt_cost));
    // the optimal tour bound needs an optimal cycle; use brute TSP
    std::vector<int> all(inst.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    CHECK(oracles::exact_tsp_cycle(inst, all) <= 2 * opt.opt_cost);
  }
}

TEST_CASE("audit_ratio conventions") {
  auto zero = line_instance(1, 1, 3, {1}, {3}, {0, 0});
  SolverResult fake;
  fake.cost = 0;
  fake.has_ratio = true;
  fake.claimed_ratio = Rat(5);
  fake.solution.tours.push_back({0, 0, {0, 1, 0}, {{1, 3}}});
  RatioAudit a = audit_ratio(zero, fake);
  CHECK(a.ratio == Rat(1));  // 0/0 convention
  CHECK(a.within_claim);

  fake.cost = 7;
  RatioAudit b = audit_ratio(zero, fake);
  CHECK(!b.finite);
  CHECK(!b.within_claim);
}
