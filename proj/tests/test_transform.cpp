#include <doctest.h>

#include "mdsdvrp/transform.hpp"
#include "oracles.hpp"

using namespace mdsdvrp;
using oracles::line_instance;

namespace {

ComponentSet cover_of(std::vector<std::vector<int>> cycles, int num_vertices) {
  ComponentSet cs;
  cs.kind = ComponentSet::kCycleCover;
  std::vector<bool> seen(num_vertices, false);
  for (auto& cyc : cycles) {
    cs.comps.push_back(cycle_component(cyc));
    for (int v : cyc) seen[v] = true;
  }
  for (int v = 0; v < num_vertices; ++v)
    if (!seen[v]) cs.comps.push_back(Component{{v}, {}});
  return cs;
}

}  // namespace

TEST_CASE("transform: worked two-customer example") {
  // depot 0 (r=2, Q=3), customers 1,2 with q=(2,2) in one cycle
  auto inst = line_instance(1, 2, 3, {2}, {2, 2}, {0, 4, 7});
  TransformResult tr = transform(inst, {cover_of({{0, 1, 2}}, 3), std::nullopt});
  CHECK(tr.cert.ell == 2);
  CHECK(tr.solution.tours.size() == 2);
  AuditReport rep = check_solution(inst, tr.solution);
  CHECK(rep.feasible);
  // paths are P1 = 1-2 with (2,1) and P2 = 2 with (1)
  std::map<int, Demand> served;
  for (auto& t : tr.solution.tours)
    for (auto& [v, a] : t.lambda) served[v] += a;
  CHECK(served == std::map<int, Demand>{{1, 2}, {2, 2}});
  CHECK(tr.cert.bound_ok);
  CHECK(tr.cert.vehicles_ok);
}

TEST_CASE("transform: co-located all-trivial cover costs nothing") {
  auto inst = line_instance(2, 2, 5, {1, 1}, {5, 5}, {0, 9, 0, 9});
  TransformResult tr = transform(inst, {cover_of({}, 4), std::nullopt});
  CHECK(tr.cert.solution_cost == 0);
  CHECK(check_solution(inst, tr.solution).feasible);
}

TEST_CASE("transform: q = 2Q becomes two full trivial tours") {
  auto inst = line_instance(1, 1, 3, {2}, {6}, {0, 4});
  TransformResult tr = transform(inst, {cover_of({{0, 1}}, 2), std::nullopt});
  REQUIRE(tr.solution.tours.size() == 2);
  for (auto& t : tr.solution.tours) {
    CHECK(t.seq == std::vector<int>{0, 1, 0});
    CHECK(t.lambda.at(1) == 3);
  }
  CHECK(tr.cert.ell == 2);
}

TEST_CASE("transform: refuses covers needing more than m vehicles") {
  auto inst = line_instance(1, 2, 3, {1}, {2, 1}, {0, 4, 7});
  // two separate cycles -> ell = 2 > m = 1
  CHECK_THROWS_AS(
      (void)transform(inst, {cover_of({{0, 1}, {2}}, 3), std::nullopt}),
      ContractError);
}

TEST_CASE("transform: path count never exceeds the customer count") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    MetricInstance inst = oracles::gen_valid(seed * 3, 6, 2, 4, 1, 9, 3);
    ComponentSet cover;  // one big cycle through everything
    std::vector<int> all(inst.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    cover.kind = ComponentSet::kCycleCover;
    cover.comps.push_back(cycle_component(all));
    TransformResult tr = transform(inst, {cover, std::nullopt});
    CHECK(check_solution(inst, tr.solution).feasible);
    CHECK(tr.cert.vehicles_used == tr.cert.ell);
    // trivial tours carry exactly Q; non-trivial tours come from at most
    // |J| extracted paths
    long long path_tours = 0;
    for (auto& t : tr.solution.tours)
      if (!(t.seq.size() == 3 && t.lambda.size() == 1 &&
            t.lambda.begin()->second == inst.Q))
        ++path_tours;
    CHECK(path_tours <= inst.n);
  }
}

TEST_CASE("transform: dummy depot demands ride along as customers") {
  auto inst = line_instance(2, 2, 4, {1, 1}, {3, 3}, {0, 10, 4, 6});
  // dummies: depot0 -> 1, depot1 -> 1; cycle through everything
  std::vector<Demand> dummy = {1, 1};
  TransformResult tr = transform(inst, {cover_of({{0, 1, 2, 3}}, 4), dummy});
  // total effective demand 8 = 2Q -> two vehicles
  CHECK(tr.cert.ell == 2);
  Demand dummy_served = 0;
  for (auto& t : tr.solution.tours)
    for (auto& [v, a] : t.lambda)
      if (inst.is_depot(v)) dummy_served += a;
  CHECK(dummy_served == 2);
}

TEST_CASE("transform_cost_certificate recomputes the transform run") {
  auto inst = line_instance(1, 2, 3, {2}, {2, 2}, {0, 4, 7});
  TransformInput in{cover_of({{0, 1, 2}}, 3), std::nullopt};
  TransformResult tr = transform(inst, in);
  TransformCertificate cert = transform_cost_certificate(inst, in, tr.solution);
  CHECK(cert.bound_ok);
  CHECK(cert.vehicles_ok);
  CHECK(cert.depot_caps_ok);
  CHECK(cert.flow_opt == tr.cert.flow_opt);
  CHECK(cert.cover_cost == tr.cert.cover_cost);
}
