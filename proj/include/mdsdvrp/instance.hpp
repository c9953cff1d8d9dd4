#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdsdvrp/rational.hpp"

namespace mdsdvrp {

// Edge costs and coordinates are fixed-point integers in units of 1e-6.
// All cost comparisons in the library are exact; no floating point.
using Cost = long long;
using Demand = long long;

constexpr long long kCostScale = 1'000'000;
// Parser sanity cap so sums and doubled certificates stay inside int64.
constexpr Cost kMaxCost = 1'000'000'000'000'000LL;

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point {
  Cost x = 0;
  Cost y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Vertex ids are dense and 0-based: depots 0..k-1, customers k..k+n-1.
struct MetricInstance {
  int k = 0;
  int n = 0;
  Demand Q = 1;
  std::vector<Demand> fleet;    // r_u, indexed by depot id
  std::vector<Demand> demand;   // q_v, indexed by customer id - k
  std::vector<std::vector<Cost>> cost;
  std::optional<std::vector<Point>> coords;  // kept for euclidean round-trips

  int num_vertices() const { return k + n; }
  bool is_depot(int v) const { return v >= 0 && v < k; }
  bool is_customer(int v) const { return v >= k && v < k + n; }
  Demand demand_of(int v) const { return demand[v - k]; }
  Cost c(int a, int b) const { return cost[a][b]; }

  Demand total_demand() const {
    Demand s = 0;
    for (Demand q : demand) s += q;
    return s;
  }
  Demand total_fleet() const {
    Demand m = 0;
    for (Demand r : fleet) m += r;
    return m;
  }

  friend bool operator==(const MetricInstance&, const MetricInstance&) = default;
};

struct Tour {
  long long vehicle = 0;  // global vehicle id; depot u owns a contiguous block
  int depot = 0;
  std::vector<int> seq;   // starts and ends at the depot
  std::map<int, Demand> lambda;  // customer -> amount served by this tour

  Demand load() const {
    Demand s = 0;
    for (auto& [v, a] : lambda) s += a;
    return s;
  }
};

struct Solution {
  std::vector<Tour> tours;
};

struct Violation {
  std::string code;    // e.g. "capacity", "demand-unmet", "triangle"
  std::string detail;
};

struct AuditReport {
  bool feasible = false;
  std::vector<Violation> violations;
  Cost total_cost = 0;
  long long vehicles_used = 0;
  Rat max_load_ratio{0, 1};
};

// First vehicle id owned by each depot (prefix sums of fleet sizes).
std::vector<long long> vehicle_bases(const MetricInstance& inst);
Cost tour_cost(const MetricInstance& inst, const Tour& t);
Cost solution_cost(const MetricInstance& inst, const Solution& s);

// Empty result iff all MetricInstance invariants hold. The triangle check
// is exhaustive over ordered triples.
std::vector<Violation> validate_instance(const MetricInstance& inst);

// Checks the four feasibility conditions with capacity gamma*Q.
// Throws MalformedSolutionError on ids that do not exist in the instance.
AuditReport check_solution(const MetricInstance& inst, const Solution& sol,
                           const Rat& gamma = Rat(1));

MetricInstance parse_instance(const std::string& text);
std::string write_instance(const MetricInstance& inst);

std::string write_solution_json(const MetricInstance& inst, const Solution& sol);
Solution parse_solution_json(const std::string& text);

struct FleetPolicy {
  enum Kind { kTight, kSlack } kind = kSlack;
  Demand slack = 0;  // target m*Q - sum(q), used by kSlack
  static FleetPolicy tight() { return {kTight, 0}; }
  static FleetPolicy with_slack(Demand s) { return {kSlack, s}; }
};

// Deterministic per seed. Points are drawn in the unit square, costs are
// fixed-point euclidean distances repaired to a metric by closure.
MetricInstance generate_instance(std::uint64_t seed, int n, int k, Demand Q,
                                 Demand demand_lo, Demand demand_hi,
                                 FleetPolicy policy);

// Fixed-point text helpers ("1.250000" <-> 1250000).
std::string format_fixed(Cost v);
Cost parse_fixed(const std::string& s, int line_for_errors);

}  // namespace mdsdvrp
