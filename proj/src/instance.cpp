#include "mdsdvrp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mdsdvrp {

std::vector<long long> vehicle_bases(const MetricInstance& inst) {
  std::vector<long long> base(inst.k + 1, 0);
  for (int u = 0; u < inst.k; ++u) base[u + 1] = base[u] + inst.fleet[u];
  return base;
}

Cost tour_cost(const MetricInstance& inst, const Tour& t) {
  Cost s = 0;
  for (size_t i = 0; i + 1 < t.seq.size(); ++i) s += inst.c(t.seq[i], t.seq[i + 1]);
  return s;
}

Cost solution_cost(const MetricInstance& inst, const Solution& sol) {
  Cost s = 0;
  for (auto& t : sol.tours) s += tour_cost(inst, t);
  return s;
}

std::vector<Violation> validate_instance(const MetricInstance& inst) {
  std::vector<Violation> out;
  auto add = [&](const std::string& code, const std::string& detail) {
    out.push_back({code, detail});
  };
  if (inst.k < 1) add("shape", "k must be >= 1");
  if (inst.n < 0) add("shape", "n must be >= 0");
  if (inst.Q < 1) add("capacity", "Q must be >= 1");
  if ((int)inst.fleet.size() != inst.k) add("shape", "fleet size != k");
  if ((int)inst.demand.size() != inst.n) add("shape", "demand size != n");
  int V = inst.num_vertices();
  if ((int)inst.cost.size() != V) {
    add("shape", "cost matrix is not |V| x |V|");
    return out;
  }
  for (int i = 0; i < V; ++i)
    if ((int)inst.cost[i].size() != V) {
      add("shape", "cost matrix row " + std::to_string(i) + " has wrong width");
      return out;
    }
  for (int u = 0; u < inst.k; ++u)
    if (inst.fleet[u] < 1) add("fleet", "r_" + std::to_string(u) + " must be >= 1");
  for (int i = 0; i < inst.n; ++i)
    if (inst.demand[i] < 1)
      add("demand", "q_" + std::to_string(inst.k + i) + " must be >= 1");
  for (int i = 0; i < V; ++i) {
    if (inst.cost[i][i] != 0)
      add("diagonal", "cost(" + std::to_string(i) + "," + std::to_string(i) + ") != 0");
    for (int j = 0; j < V; ++j) {
      if (inst.cost[i][j] < 0)
        add("negative", "cost(" + std::to_string(i) + "," + std::to_string(j) + ") < 0");
      if (j > i && inst.cost[i][j] != inst.cost[j][i])
        add("symmetry",
            "cost(" + std::to_string(i) + "," + std::to_string(j) + ") asymmetric");
    }
  }
  for (int x = 0; x < V; ++x)
    for (int y = 0; y < V; ++y)
      for (int z = 0; z < V; ++z)
        if (inst.cost[x][y] > inst.cost[x][z] + inst.cost[z][y]) {
          add("triangle", "c(" + std::to_string(x) + "," + std::to_string(y) + ") > c(" +
                              std::to_string(x) + "," + std::to_string(z) + ")+c(" +
                              std::to_string(z) + "," + std::to_string(y) + ")");
          if (out.size() > 200) return out;  // enough diagnostics
        }
  if (inst.n > 0) {
    Demand m = inst.total_fleet();
    if (inst.total_demand() > m * inst.Q)
      add("fleet-capacity", "total demand " + std::to_string(inst.total_demand()) +
                                " exceeds m*Q = " + std::to_string(m * inst.Q));
  }
  return out;
}

AuditReport check_solution(const MetricInstance& inst, const Solution& sol, const Rat& gamma) {
  if (gamma < Rat(1)) throw ContractError("check_solution: gamma must be >= 1");
  AuditReport rep;
  auto bases = vehicle_bases(inst);
  long long m = bases[inst.k];
  std::vector<Demand> served(inst.n, 0);
  std::map<long long, int> vehicle_seen;  // vehicle -> tour index
  Demand max_load = 0;

  for (size_t ti = 0; ti < sol.tours.size(); ++ti) {
    const Tour& t = sol.tours[ti];
    std::string tn = "tour " + std::to_string(ti);
    if (t.depot < 0 || t.depot >= inst.k)
      throw MalformedSolutionError(tn + ": unknown depot " + std::to_string(t.depot));
    if (t.vehicle < 0 || t.vehicle >= m)
      throw MalformedSolutionError(tn + ": unknown vehicle " + std::to_string(t.vehicle));
    for (int v : t.seq)
      if (v < 0 || v >= inst.num_vertices())
        throw MalformedSolutionError(tn + ": unknown vertex " + std::to_string(v));
    for (auto& [v, a] : t.lambda) {
      if (!inst.is_customer(v))
        throw MalformedSolutionError(tn + ": lambda for non-customer " + std::to_string(v));
      if (a < 0) throw MalformedSolutionError(tn + ": negative lambda");
    }

    if (t.vehicle < bases[t.depot] || t.vehicle >= bases[t.depot + 1])
      rep.violations.push_back({"vehicle-depot", tn + ": vehicle does not belong to depot"});
    auto [it, fresh] = vehicle_seen.emplace(t.vehicle, (int)ti);
    if (!fresh)
      rep.violations.push_back({"vehicle-reuse", tn + ": vehicle already used by tour " +
                                                     std::to_string(it->second)});
    if (t.seq.size() < 3 || t.seq.front() != t.depot || t.seq.back() != t.depot)
      rep.violations.push_back({"tour-shape", tn + ": must be depot, customers..., depot"});
    std::vector<int> interior(t.seq.begin() + (t.seq.empty() ? 0 : 1),
                              t.seq.end() - (t.seq.empty() ? 0 : 1));
    std::sort(interior.begin(), interior.end());
    for (size_t i = 0; i < interior.size(); ++i) {
      if (!inst.is_customer(interior[i])) {
        rep.violations.push_back({"tour-shape", tn + ": interior vertex " +
                                                    std::to_string(interior[i]) +
                                                    " is not a customer"});
        break;
      }
      if (i > 0 && interior[i] == interior[i - 1]) {
        rep.violations.push_back({"tour-shape", tn + ": repeated customer"});
        break;
      }
    }

    Demand load = 0;
    for (auto& [v, a] : t.lambda) {
      load += a;
      bool visited = false;
      for (size_t i = 1; i + 1 < t.seq.size(); ++i) visited |= (t.seq[i] == v);
      if (a > 0 && !visited)
        rep.violations.push_back({"lambda-unvisited", tn + ": serves customer " +
                                                          std::to_string(v) +
                                                          " not on the tour"});
      if (inst.is_customer(v)) served[v - inst.k] += a;
    }
    if (!le_scaled(load, gamma, inst.Q))
      rep.violations.push_back({"capacity", tn + ": load " + std::to_string(load) +
                                                " exceeds gamma*Q"});
    max_load = std::max(max_load, load);
    rep.total_cost += tour_cost(inst, t);
  }

  for (int i = 0; i < inst.n; ++i) {
    if (served[i] < inst.demand[i])
      rep.violations.push_back({"demand-unmet", "customer " + std::to_string(inst.k + i) +
                                                    ": served " + std::to_string(served[i]) +
                                                    " of " + std::to_string(inst.demand[i])});
    else if (served[i] > inst.demand[i])
      rep.violations.push_back({"demand-overserved",
                                "customer " + std::to_string(inst.k + i) + ": served " +
                                    std::to_string(served[i]) + " of " +
                                    std::to_string(inst.demand[i])});
  }

  rep.vehicles_used = (long long)sol.tours.size();
  rep.max_load_ratio = Rat(max_load, inst.Q);
  rep.feasible = rep.violations.empty();
  return rep;
}

std::string format_fixed(Cost v) {
  bool neg = v < 0;
  unsigned long long a = neg ? -(unsigned long long)v : (unsigned long long)v;
  unsigned long long whole = a / kCostScale, frac = a % kCostScale;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%llu.%06llu", neg ? "-" : "", whole, frac);
  return buf;
}

Cost parse_fixed(const std::string& s, int line) {
  if (s.empty()) throw ParseError(line, "empty number");
  size_t pos = 0;
  bool neg = s[0] == '-';
  if (neg || s[0] == '+') pos = 1;
  unsigned long long whole = 0, frac = 0;
  int fd = 0;
  bool any = false, in_frac = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (in_frac) throw ParseError(line, "bad number '" + s + "'");
      in_frac = true;
      continue;
    }
    if (c < '0' || c > '9') throw ParseError(line, "bad number '" + s + "'");
    any = true;
    if (!in_frac) {
      whole = whole * 10 + (c - '0');
      if (whole > (unsigned long long)(kMaxCost / kCostScale))
        throw ParseError(line, "number too large '" + s + "'");
    } else {
      if (fd < 6) frac = frac * 10 + (c - '0'), ++fd;
      else if (c != '0')
        throw ParseError(line, "more than 6 fractional digits in '" + s + "'");
    }
  }
  if (!any) throw ParseError(line, "bad number '" + s + "'");
  while (fd < 6) frac *= 10, ++fd;
  Cost v = (Cost)(whole * kCostScale + frac);
  return neg ? -v : v;
}

namespace {

long long parse_ll(const std::string& s, int line) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad integer '" + s + "'");
  }
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

// Distance rounded half-up to fixed point: r = floor((isqrt(4s)+1)/2).
Cost euclid_fixed(const Point& a, const Point& b) {
  unsigned long long dx = (unsigned long long)std::llabs(a.x - b.x);
  unsigned long long dy = (unsigned long long)std::llabs(a.y - b.y);
  unsigned __int128 s = (unsigned __int128)dx * dx + (unsigned __int128)dy * dy;
  unsigned __int128 s4 = s * 4;
  unsigned long long t = (unsigned long long)std::sqrt((double)s4);
  while ((unsigned __int128)t * t > s4) --t;
  while ((unsigned __int128)(t + 1) * (t + 1) <= s4) ++t;
  return (Cost)((t + 1) / 2);
}

void metric_closure(std::vector<std::vector<Cost>>& c) {
  int V = (int)c.size();
  for (int z = 0; z < V; ++z)
    for (int x = 0; x < V; ++x)
      for (int y = 0; y < V; ++y)
        if (c[x][z] + c[z][y] < c[x][y]) c[x][y] = c[x][z] + c[z][y];
}

void costs_from_coords(MetricInstance& inst) {
  int V = inst.num_vertices();
  auto& pts = *inst.coords;
  inst.cost.assign(V, std::vector<Cost>(V, 0));
  for (int i = 0; i < V; ++i)
    for (int j = i + 1; j < V; ++j)
      inst.cost[i][j] = inst.cost[j][i] = euclid_fixed(pts[i], pts[j]);
  // Half-up rounding can break the triangle inequality by a couple of
  // fixed-point units; repair by closure so instances are always metric.
  metric_closure(inst.cost);
}

}  // namespace

MetricInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  auto next_line = [&](bool required) -> std::optional<std::string> {
    while (std::getline(in, line)) {
      ++ln;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto t = line.find_first_not_of(" \t");
      if (t == std::string::npos) continue;       // blank
      if (line[t] == '#') continue;               // comment
      return line;
    }
    if (required) throw ParseError(ln, "unexpected end of file");
    return std::nullopt;
  };

  auto header = tokens(*next_line(true));
  if (header.size() != 2 || header[0] != "MDSDVRP" || header[1] != "1")
    throw ParseError(ln, "expected header 'MDSDVRP 1'");
  auto dims = tokens(*next_line(true));
  if (dims.size() != 3) throw ParseError(ln, "expected 'k n Q'");
  MetricInstance inst;
  inst.k = (int)parse_ll(dims[0], ln);
  inst.n = (int)parse_ll(dims[1], ln);
  inst.Q = parse_ll(dims[2], ln);
  if (inst.k < 1 || inst.n < 0 || inst.k + inst.n > 100000)
    throw ParseError(ln, "unsupported dimensions");
  int V = inst.num_vertices();

  std::vector<Point> pts(V);
  bool saw_plain = false;
  inst.fleet.resize(inst.k);
  inst.demand.resize(inst.n);
  for (int i = 0; i < V; ++i) {
    auto tk = tokens(*next_line(true));
    bool depot = i < inst.k;
    std::string kw = depot ? "depot" : "cust";
    if (tk.size() != 3 && tk.size() != 5)
      throw ParseError(ln, "expected '" + kw + " <id> <val> [<x> <y>]'");
    if (tk[0] != kw) throw ParseError(ln, "expected '" + kw + "' line");
    if (parse_ll(tk[1], ln) != i)
      throw ParseError(ln, "ids must be dense and ordered; expected " + std::to_string(i));
    long long val = parse_ll(tk[2], ln);
    if (depot) inst.fleet[i] = val;
    else inst.demand[i - inst.k] = val;
    if (tk.size() == 5) {
      pts[i] = {parse_fixed(tk[3], ln), parse_fixed(tk[4], ln)};
    } else {
      saw_plain = true;
    }
  }

  auto mode = tokens(*next_line(true));
  if (mode.size() != 1 || (mode[0] != "coords" && mode[0] != "matrix"))
    throw ParseError(ln, "expected 'coords' or 'matrix'");
  if (mode[0] == "coords") {
    if (saw_plain) throw ParseError(ln, "'coords' mode requires x y on every vertex line");
    inst.coords = pts;
    costs_from_coords(inst);
  } else {
    // explicit matrices are authoritative; coordinate columns on the
    // vertex lines are not kept (a rewrite stays in matrix mode)
    inst.cost.assign(V, std::vector<Cost>(V, 0));
    for (int i = 0; i < V; ++i) {
      auto row = tokens(*next_line(true));
      if ((int)row.size() != V)
        throw ParseError(ln, "matrix row " + std::to_string(i) + " needs " +
                                 std::to_string(V) + " entries");
      for (int j = 0; j < V; ++j) {
        inst.cost[i][j] = parse_fixed(row[j], ln);
        if (inst.cost[i][j] > kMaxCost) throw ParseError(ln, "cost exceeds supported range");
      }
    }
  }
  if (next_line(false)) throw ParseError(ln, "trailing content");
  return inst;
}

std::string write_instance(const MetricInstance& inst) {
  std::ostringstream out;
  out << "MDSDVRP 1\n" << inst.k << ' ' << inst.n << ' ' << inst.Q << '\n';
  auto xy = [&](int i) -> std::string {
    if (!inst.coords) return "";
    return " " + format_fixed((*inst.coords)[i].x) + " " + format_fixed((*inst.coords)[i].y);
  };
  for (int u = 0; u < inst.k; ++u)
    out << "depot " << u << ' ' << inst.fleet[u] << xy(u) << '\n';
  for (int i = 0; i < inst.n; ++i)
    out << "cust " << inst.k + i << ' ' << inst.demand[i] << xy(inst.k + i) << '\n';
  if (inst.coords) {
    out << "coords\n";
  } else {
    out << "matrix\n";
    int V = inst.num_vertices();
    for (int i = 0; i < V; ++i) {
      for (int j = 0; j < V; ++j) out << (j ? " " : "") << format_fixed(inst.cost[i][j]);
      out << '\n';
    }
  }
  return out.str();
}

std::string write_solution_json(const MetricInstance& inst, const Solution& sol) {
  nlohmann::ordered_json j;
  j["tours"] = nlohmann::ordered_json::array();
  for (auto& t : sol.tours) {
    nlohmann::ordered_json jt;
    jt["vehicle"] = t.vehicle;
    jt["depot"] = t.depot;
    jt["seq"] = t.seq;
    nlohmann::ordered_json lam = nlohmann::ordered_json::object();
    for (auto& [v, a] : t.lambda) lam[std::to_string(v)] = a;
    jt["lambda"] = std::move(lam);
    j["tours"].push_back(std::move(jt));
  }
  j["cost"] = solution_cost(inst, sol);
  j["scale"] = kCostScale;
  return j.dump(2) + "\n";
}

Solution parse_solution_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSolutionError(std::string("bad solution JSON: ") + e.what());
  }
  Solution sol;
  try {
    for (auto& jt : j.at("tours")) {
      Tour t;
      t.vehicle = jt.at("vehicle").get<long long>();
      t.depot = jt.at("depot").get<int>();
      t.seq = jt.at("seq").get<std::vector<int>>();
      for (auto& [key, val] : jt.at("lambda").items())
        t.lambda[std::stoi(key)] = val.get<long long>();
      sol.tours.push_back(std::move(t));
    }
  } catch (const std::exception& e) {
    throw MalformedSolutionError(std::string("bad solution JSON: ") + e.what());
  }
  return sol;
}

namespace {

// Thin deterministic wrapper; only the engine itself is used so results
// are identical across standard libraries.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling, unbiased
    std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do { x = eng(); } while (x >= lim);
    return x % bound;
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + (long long)below((std::uint64_t)(hi - lo + 1));
  }
};

}  // namespace

MetricInstance generate_instance(std::uint64_t seed, int n, int k, Demand Q,
                                 Demand demand_lo, Demand demand_hi, FleetPolicy policy) {
  if (n < 1 || k < 1) throw GenerationError("generate_instance: need n >= 1 and k >= 1");
  if (Q < 1) throw GenerationError("generate_instance: need Q >= 1");
  if (demand_lo < 1 || demand_hi < demand_lo)
    throw GenerationError("generate_instance: bad demand range");

  Rng rng(seed);
  MetricInstance inst;
  inst.k = k;
  inst.n = n;
  inst.Q = Q;
  std::vector<Point> pts(k + n);
  for (auto& p : pts) {
    p.x = rng.range(0, kCostScale);
    p.y = rng.range(0, kCostScale);
  }
  inst.coords = std::move(pts);
  inst.demand.resize(n);
  for (auto& q : inst.demand) q = rng.range(demand_lo, demand_hi);

  Demand want = policy.kind == FleetPolicy::kTight ? 0 : policy.slack;
  if (want < 0) throw GenerationError("fleet_policy: slack must be >= 0");

  // Need sum(q) + want == m*Q for an integer m >= k. Adjust one demand by
  // the smallest amount that makes the total + slack a multiple of Q.
  Demand total = inst.total_demand();
  Demand rem = (total + want) % Q;
  if (rem != 0) {
    Demand down = rem;            // subtract from one customer
    Demand up = Q - rem;          // or add to it
    int idx = (int)rng.below((std::uint64_t)n);
    if (inst.demand[idx] - down >= 1 && down <= up)
      inst.demand[idx] -= down;
    else
      inst.demand[idx] += up;
    total = inst.total_demand();
  }
  Demand m = (total + want) / Q;
  if (m < k)
    throw GenerationError("fleet_policy: needs m = " + std::to_string(m) +
                          " vehicles but every one of the " + std::to_string(k) +
                          " depots requires at least one");
  inst.fleet.assign(k, m / k);
  for (int u = 0; u < (int)(m % k); ++u) inst.fleet[u] += 1;

  costs_from_coords(inst);
  return inst;
}

}  // namespace mdsdvrp
