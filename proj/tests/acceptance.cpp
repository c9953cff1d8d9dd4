// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "mdsdvrp/cyclecover.hpp"
#include "mdsdvrp/matching.hpp"
#include "mdsdvrp/oracle.hpp"
#include "mdsdvrp/solvers.hpp"
#include "oracles.hpp"

using namespace mdsdvrp;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %-2d %s: %s\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

MetricInstance gen_feasibility_instance(std::uint64_t seed) {
  oracles::TestRng rng(seed * 2654435761ULL + 17);
  int n = (int)rng.range(1, 12);
  int k = (int)rng.range(1, 3);
  Demand Q = rng.range(1, 20);
  Demand qhi = (seed % 5 == 0) ? 2 * Q : Q;  // a fifth of the sweep exercises peeling
  Demand slack = rng.range(0, 3);
  try {
    return generate_instance(seed, n, k, Q, 1, qhi, FleetPolicy::with_slack(slack));
  } catch (const GenerationError&) {
    // tiny totals can make m < k; retry with enough slack for one vehicle per depot
    return generate_instance(seed, n, k, Q, 1, qhi,
                             FleetPolicy::with_slack(slack + (Demand)k * Q));
  }
}

struct SweepOutcome {
  std::string report;
  long long violations = 0;
  long long transforms = 0;
  long long cert_failures = 0;
  double seconds = 0;
};

// Criterion 1 sweep; also feeds criteria 3 and 10.
SweepOutcome run_feasibility_sweep() {
  const int kInstances = 200;
  SweepOutcome out;
  Stopwatch sw;
  std::vector<std::string> rows(kInstances);
  std::vector<long long> viols(kInstances, 0), trans(kInstances, 0), certf(kInstances, 0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < kInstances; ++i) {
    std::uint64_t seed = 1 + (std::uint64_t)i;
    MetricInstance inst = gen_feasibility_instance(seed);
    std::ostringstream row;
    SolveOptions opts;
    opts.parallel = false;  // the sweep itself is parallel
    opts.eps = Rat(1, 2);
    for (const std::string& name : solver_names()) {
      if (name == "sdvrp" && inst.k != 1) continue;
      try {
        SolverResult res = run_solver(name, inst, opts);
        if (!res.ok()) throw ContractError(res.diagnostic);
        trans[i] += res.transforms_run;
        if (res.has_winner_cert &&
            !(res.winner_cert.bound_ok && res.winner_cert.vehicles_ok &&
              res.winner_cert.depot_caps_ok))
          ++certf[i];
        AuditReport rep = check_solution(inst, res.solution, res.gamma);
        if (!rep.feasible) ++viols[i];
        row << "s" << seed << " " << name << " cost=" << res.cost
            << " tours=" << res.solution.tours.size() << " iters=" << res.iterations_run
            << " feasible=" << (rep.feasible ? 1 : 0) << "\n";
      } catch (const std::exception& e) {
        ++viols[i];
        row << "s" << seed << " " << name << " error=" << e.what() << "\n";
      }
    }
    rows[i] = row.str();
  }
  for (int i = 0; i < kInstances; ++i) {
    out.report += rows[i];
    out.violations += viols[i];
    out.transforms += trans[i];
    out.cert_failures += certf[i];
  }
  out.seconds = sw.seconds();
  return out;
}

std::vector<MetricInstance> oracle_instances(std::vector<std::uint64_t>* seeds) {
  std::vector<MetricInstance> out;
  int k1 = 0;
  for (std::uint64_t seed = 1; (int)out.size() < 50; ++seed) {
    if (seed > 4000) break;
    oracles::TestRng rng(seed * 40503ULL + 3);
    int n = (int)rng.range(1, 5);
    int k = (int)rng.range(1, 2);
    if (k1 < 20 && out.size() >= 30) k = 1;  // keep enough single-depot instances
    Demand Q = rng.range(1, 6);
    Demand qhi = std::min<Demand>(2 * Q, std::max<Demand>(1, Q));
    Demand slack = rng.range(0, 2);
    MetricInstance inst;
    try {
      inst = generate_instance(seed, n, k, Q, 1, qhi, FleetPolicy::with_slack(slack));
    } catch (const GenerationError&) {
      continue;
    }
    Demand maxq = 0;
    for (Demand q : inst.demand) maxq = std::max(maxq, q);
    if (inst.total_fleet() > 4 || maxq > 2 * Q) continue;
    out.push_back(inst);
    if (seeds) seeds->push_back(seed);
    if (k == 1) ++k1;
  }
  return out;
}

struct RatioOutcome {
  std::string report;
  long long violations = 0;
  long long flow_violations = 0;  // criterion 4
  long long transforms = 0;
  long long cert_failures = 0;
  int instances = 0;
  int flow_audits = 0;
  long long ratio_audits = 0;
  double seconds = 0;
};

RatioOutcome run_ratio_audit() {
  RatioOutcome out;
  Stopwatch sw;
  std::vector<std::uint64_t> seeds;
  std::vector<MetricInstance> insts = oracle_instances(&seeds);
  out.instances = (int)insts.size();
  std::vector<std::string> rows(insts.size());
  std::vector<long long> viols(insts.size(), 0), flows(insts.size(), 0),
      trans(insts.size(), 0), certf(insts.size(), 0), audits(insts.size(), 0),
      ratios(insts.size(), 0);

#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < insts.size(); ++i) {
    const MetricInstance& inst = insts[i];
    std::ostringstream row;
    SolveOptions opts;
    opts.parallel = false;
    OracleResult opt = solve_exact(inst);

    auto audit_one = [&](const std::string& label, const SolverResult& res) {
      ++ratios[i];
      bool ok = false;
      if (res.ok()) {
        ok = res.cost == 0 && opt.opt_cost == 0
                 ? true
                 : le_scaled(res.cost, res.claimed_ratio, opt.opt_cost);
        trans[i] += res.transforms_run;
        if (res.has_winner_cert &&
            !(res.winner_cert.bound_ok && res.winner_cert.vehicles_ok &&
              res.winner_cert.depot_caps_ok))
          ++certf[i];
        AuditReport rep = check_solution(inst, res.solution, res.gamma);
        if (!rep.feasible) ok = false;
      }
      if (!ok) ++viols[i];
      row << "s" << seeds[i] << " " << label << " cost=" << (res.ok() ? res.cost : -1)
          << " opt=" << opt.opt_cost << " ok=" << (ok ? 1 : 0) << "\n";
    };

    try {
      audit_one("alg1", alg1(inst, opts));
      audit_one("alg2", alg2(inst, opts));
      audit_one("alg3", alg3(inst, opts));
      for (Rat eps : {Rat(1, 4), Rat(1, 2), Rat(1)}) {
        SolveOptions o2 = opts;
        o2.eps = eps;
        audit_one("alg5[" + eps.str() + "]", alg5(inst, o2));
      }
      if (inst.k == 1) audit_one("sdvrp", sdvrp(inst, opts));

      // Criterion 4: transform a good cover built from the optimal
      // witness; its assignment flow must cost at most OPT/2.
      {
        std::vector<Edge> edges;
        for (auto& t : opt.witness.tours)
          for (size_t j = 0; j + 1 < t.seq.size(); ++j)
            edges.push_back(make_edge(t.seq[j], t.seq[j + 1]));
        ComponentSet cover =
            to_cycle_cover(inst, components_from_edges(inst.num_vertices(), edges));
        TransformResult tr = transform(inst, {cover, std::nullopt});
        ++audits[i];
        ++trans[i];
        if (2 * tr.cert.flow_opt > opt.opt_cost) ++flows[i];
      }
      if (inst.n > 0) {
        // dummy demands derived from the witness's true
        // per-depot service volumes.
        std::vector<Demand> served(inst.k, 0);
        for (auto& t : opt.witness.tours)
          for (auto& [v, a] : t.lambda) served[t.depot] += a;
        std::vector<Demand> dummy(inst.k, 0);
        for (int u = 0; u < inst.k; ++u)
          dummy[u] = (inst.Q - served[u] % inst.Q) % inst.Q;
        ComponentSet cover = modq_cycle_cover(inst, dummy);
        TransformResult tr = transform(inst, {cover, dummy});
        ++audits[i];
        ++trans[i];
        if (2 * tr.cert.flow_opt > opt.opt_cost) ++flows[i];
      }
    } catch (const std::exception& e) {
      ++viols[i];
      row << "s" << seeds[i] << " error=" << e.what() << "\n";
    }
    rows[i] = row.str();
  }
  for (size_t i = 0; i < insts.size(); ++i) {
    out.report += rows[i];
    out.violations += viols[i];
    out.flow_violations += flows[i];
    out.transforms += trans[i];
    out.cert_failures += certf[i];
    out.flow_audits += (int)audits[i];
    out.ratio_audits += ratios[i];
  }
  out.seconds = sw.seconds();
  return out;
}

char fmt_buf[256];
std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(fmt_buf, sizeof fmt_buf, f, ap);
  va_end(ap);
  return fmt_buf;
}

}  // namespace

// ---- criteria 5, 6: partition and extraction properties ----

static void criterion5() {
  oracles::TestRng rng(505);
  long long violations = 0;
  int brute_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // every other triple is kept inside the brute-force comparison range
    bool small = trial % 2 == 0;
    int t = (int)(small ? rng.range(1, 5) : rng.range(1, 8));
    MetricInstance inst = generate_instance(3000 + trial, t, 1, 20, 1, 10,
                                            FleetPolicy::with_slack(5));
    Demand Qp = small ? rng.range(2, 6) : rng.range(1, 10);
    std::vector<int> cyc(t);
    std::iota(cyc.begin(), cyc.end(), 1);
    std::map<int, Demand> lam;
    Demand total = 0;
    for (int v : cyc) {
      lam[v] = small ? rng.range(0, Qp - 1) : rng.range(0, 3 * Qp);
      total += lam[v];
    }
    try {
      PartitionResult res = partition_cycle_tours(inst, 0, cyc, lam, Qp);
      if (res.tour_count != (total + Qp - 1) / Qp) ++violations;
      // the certificate cost bound is asserted inside the call; reaching
      // here means it held. Cross-check small cases against enumeration.
      if (t <= 5 && total > 0 && total <= 24) {
        Demand maxl = 0;
        for (auto& [v, a] : lam) maxl = std::max(maxl, a);
        if (maxl < Qp) {
          ++brute_checked;
          Cost brute = oracles::brute_best_split_cost(inst, 0, cyc, lam, Qp);
          if (res.cost != brute) ++violations;
        }
      }
    } catch (const std::exception&) {
      ++violations;
    }
  }
  report(5, "tour partition certificate", violations == 0,
         fmt("100 triples, %d vs brute force, %lld violations", brute_checked, violations));
}

static void criterion6() {
  oracles::TestRng rng(606);
  long long violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Demand Q = rng.range(2, 12);
    int t = (int)rng.range(1, 8);
    std::vector<int> cyc(t);
    std::iota(cyc.begin(), cyc.end(), 10);
    std::map<int, Demand> resid;
    Demand total = 0;
    for (int v : cyc) {
      resid[v] = rng.range(0, Q - 1);
      total += resid[v];
    }
    auto paths = extract_paths(cyc, resid, Q);
    if ((long long)paths.size() != (total + Q - 1) / Q) ++violations;
    std::map<int, Demand> served;
    int light = 0;
    for (auto& p : paths) {
      Demand pt = 0;
      for (auto& [v, a] : p.assign) {
        served[v] += a;
        pt += a;
      }
      if (pt > Q) ++violations;
      if (pt < Q) ++light;
    }
    if (light > 1) ++violations;
    for (auto& [v, q] : resid)
      if (served[v] != q) ++violations;
  }
  report(6, "path extraction properties", violations == 0,
         fmt("100 cycles, %lld violations", violations));
}

static void criterion7() {
  oracles::TestRng rng(707);
  long long violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 * (int)rng.range(1, 5);
    std::vector<std::vector<Cost>> c(n, std::vector<Cost>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) c[i][j] = c[j][i] = rng.range(0, 40);
    auto cost = [&](int a, int b) { return c[a][b]; };
    std::vector<int> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    Matching m = min_cost_perfect_matching(vs, cost);
    if (m.total_cost != oracles::dp_matching(vs, cost)) ++violations;
  }
  long long flow_violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    FlowNetwork net;
    int n = (int)rng.range(3, 8);
    for (int i = 0; i < n; ++i) net.add_node();
    net.source = 0;
    net.sink = 1;
    int arcs = (int)rng.range(3, 10);
    for (int a = 0; a < arcs; ++a) {
      int u = (int)rng.range(0, n - 1), v = (int)rng.range(0, n - 1);
      if (u == v || u == net.sink || v == net.source) continue;
      net.add_arc(u, v, rng.range(1, 3), rng.range(0, 9));
    }
    FlowResult mine = min_cost_max_flow(net);
    oracles::BruteFlowResult brute = oracles::brute_mcmf(net);
    if (mine.max_flow != brute.max_flow || mine.total_cost != brute.min_cost)
      ++flow_violations;
  }
  report(7, "primitive exactness", violations == 0 && flow_violations == 0,
         fmt("500 matchings (%lld bad), 200 flow networks (%lld bad)", violations,
             flow_violations));
}

static void criterion8() {
  long long wrong = 0;
  int made = 0;
  for (int k : {2, 4, 6}) {
    int made_k = 0;
    for (std::uint64_t s = 1; made_k < 7 && s <= 60; ++s) {
      std::uint64_t seed = 9000 + 100 * (std::uint64_t)k + s;
      oracles::TestRng rng(seed);
      Demand Q = rng.range(2, 10);
      int n = 2 * k;
      MetricInstance inst;
      try {
        inst = generate_instance(seed, n, k, Q, (Q + 1) / 2, Q, FleetPolicy::tight());
      } catch (const GenerationError&) {
        continue;
      }
      if (inst.total_fleet() * inst.Q != inst.total_demand()) {
        ++wrong;
        continue;
      }
      ++made;
      ++made_k;
      SolverResult res = alg3(inst);
      if (!res.ok() || res.iterations_run != 1) ++wrong;
    }
  }
  report(8, "tight instances run one iteration", wrong == 0 && made >= 20,
         fmt("%d tight instances across k in {2,4,6}, %lld mismatches", made, wrong));
}

static void criterion9() {
  long long violations = 0;
  int covers = 0, factor_checked = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    MetricInstance inst;
    try {
      inst = generate_instance(7000 + seed, (int)(2 + seed % 3), 2, 4, 1, 6,
                               FleetPolicy::with_slack(seed % 3));
    } catch (const GenerationError&) {
      continue;
    }
    if (inst.num_vertices() > 6) continue;
    // every dummy tuple alg3 would visit, checked for divisibility (the
    // library throws if a cycle breaks it) and against the brute optimum
    Demand slack = inst.total_fleet() * inst.Q - inst.total_demand();
    for (Demand q0 = 0; q0 < inst.Q && q0 <= slack; ++q0) {
      std::vector<Demand> dummy = {q0, 0};
      Demand rem = (inst.total_demand() + q0) % inst.Q;
      dummy[1] = (inst.Q - rem) % inst.Q;
      if (q0 + dummy[1] > slack) continue;
      try {
        ComponentSet cover = modq_cycle_cover(inst, dummy);
        ++covers;
        for (auto& c : cover.comps) {
          Demand s = 0;
          for (int v : c.vertices)
            s += inst.is_depot(v) ? dummy[v] : inst.demand_of(v);
          if (s % inst.Q != 0) ++violations;
        }
        Cost opt = oracles::brute_modq_cover_cost(inst, dummy);
        ++factor_checked;
        if (cover.cost(inst) > 2 * opt) ++violations;
      } catch (const std::exception&) {
        ++violations;
      }
    }
  }
  report(9, "mod-Q covers divisible and within factor 2", violations == 0 && covers > 0,
         fmt("%d covers, %d factor checks, %lld violations", covers, factor_checked,
             violations));
}

int main() {
  std::printf("acceptance suite\n================\n");

  // criteria 1, 3 (first half), 10 (first run)
  SweepOutcome sweep1 = run_feasibility_sweep();
  report(1, "feasibility sweep", sweep1.violations == 0 && sweep1.seconds < 60.0,
         fmt("200 instances, every solver, %lld violations, %.1fs", sweep1.violations,
             sweep1.seconds));

  RatioOutcome ratio1 = run_ratio_audit();
  report(2, "ratio audit vs oracle",
         ratio1.violations == 0 && ratio1.instances >= 50 && ratio1.seconds < 300.0,
         fmt("%d instances, %lld ratio audits, %lld violations, %.1fs", ratio1.instances,
             ratio1.ratio_audits, ratio1.violations, ratio1.seconds));

  report(3, "transform certificates",
         sweep1.cert_failures + ratio1.cert_failures == 0 &&
             sweep1.transforms + ratio1.transforms > 0,
         fmt("%lld transform invocations, %lld certificate failures",
             sweep1.transforms + ratio1.transforms,
             sweep1.cert_failures + ratio1.cert_failures));

  report(4, "assignment flow at most OPT/2",
         ratio1.flow_violations == 0 && ratio1.flow_audits > 0,
         fmt("%d good-cover audits, %lld violations", ratio1.flow_audits,
             ratio1.flow_violations));

  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();

  {
    SweepOutcome sweep2 = run_feasibility_sweep();
    RatioOutcome ratio2 = run_ratio_audit();
    bool same = sweep1.report == sweep2.report && ratio1.report == ratio2.report;
    report(10, "deterministic reports", same,
           same ? "criteria 1-2 reruns byte-identical"
                : "re-run reports differ");
  }

  {
    Stopwatch sw;
    MetricInstance big = generate_instance(424242, 50, 2, 50, 1, 50,
                                           FleetPolicy::with_slack(25));
    SolverResult r3 = alg3(big);
    double t3 = sw.seconds();
    bool ok3 = r3.ok() && t3 < 10.0;

    Stopwatch sw2;
    MetricInstance mid = generate_instance(434343, 12, 2, 10, 1, 10,
                                           FleetPolicy::with_slack(5));
    SolverResult r1 = alg1(mid);
    double t1 = sw2.seconds();
    bool ok1 = r1.ok() && t1 < 60.0;
    report(11, "desk-scale runtime", ok3 && ok1,
           fmt("alg3 n=50 k=2 Q=50: %.2fs; alg1 n=12 k=2: %.2fs", t3, t1));
  }

  std::printf("================\n%s (%d failing)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
