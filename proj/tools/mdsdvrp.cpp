#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mdsdvrp/oracle.hpp"
#include "mdsdvrp/solvers.hpp"

namespace fs = std::filesystem;
using namespace mdsdvrp;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::ordered_json rat_json(const Rat& r) {
  return {{"num", r.num}, {"den", r.den}};
}

nlohmann::ordered_json result_json(const MetricInstance& inst, const std::string& solver,
                                   const SolverResult& res) {
  nlohmann::ordered_json j;
  j["solver"] = solver;
  j["cost"] = res.cost;
  j["scale"] = kCostScale;
  j["claimed_ratio"] = res.has_ratio ? rat_json(res.claimed_ratio) : nlohmann::ordered_json();
  j["gamma"] = rat_json(res.gamma);
  j["iterations_run"] = res.iterations_run;
  j["guarantee_void"] = res.guarantee_void;
  j["vehicles_used"] = (long long)res.solution.tours.size();
  nlohmann::ordered_json tours = nlohmann::ordered_json::array();
  for (auto& t : res.solution.tours) {
    nlohmann::ordered_json jt;
    jt["vehicle"] = t.vehicle;
    jt["depot"] = t.depot;
    jt["seq"] = t.seq;
    nlohmann::ordered_json lam = nlohmann::ordered_json::object();
    for (auto& [v, a] : t.lambda) lam[std::to_string(v)] = a;
    jt["lambda"] = std::move(lam);
    tours.push_back(std::move(jt));
  }
  j["tours"] = std::move(tours);
  return j;
}

void print_human(const MetricInstance& inst, const std::string& solver,
                 const SolverResult& res) {
  std::cout << "solver:        " << solver << "\n";
  std::cout << "cost:          " << format_fixed(res.cost) << "\n";
  std::cout << "claimed ratio: " << (res.has_ratio ? res.claimed_ratio.str() : "none") << "\n";
  std::cout << "gamma:         " << res.gamma.str() << "\n";
  std::cout << "iterations:    " << res.iterations_run
            << (res.guarantee_void ? " (truncated: guarantee void)" : "") << "\n";
  std::cout << "tours:         " << res.solution.tours.size() << "\n";
  for (auto& t : res.solution.tours) {
    std::cout << "  vehicle " << t.vehicle << " depot " << t.depot << ":";
    for (int v : t.seq) std::cout << ' ' << v;
    std::cout << "  load " << t.load() << "\n";
  }
}

int cmd_solve(const std::string& path, const std::string& solver, const SolveOptions& opts,
              const std::string& format) {
  MetricInstance inst;
  try {
    inst = parse_instance(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::cerr << "invalid instance:\n";
    for (auto& v : violations) std::cerr << "  [" << v.code << "] " << v.detail << "\n";
    return 1;
  }
  auto t0 = std::chrono::steady_clock::now();
  SolverResult res;
  try {
    res = run_solver(solver, inst, opts);
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (!res.ok()) {
    std::cerr << "solver diagnostic: " << res.diagnostic << "\n";
    return 2;
  }
  if (format == "human") {
    print_human(inst, solver, res);
  } else if (format == "csv") {
    std::cout << "solver,cost,scale,gamma,iterations,tours\n";
    std::cout << solver << ',' << res.cost << ',' << kCostScale << ',' << res.gamma.str()
              << ',' << res.iterations_run << ',' << res.solution.tours.size() << "\n";
  } else {
    std::cout << result_json(inst, solver, res).dump(2) << "\n";
  }
  std::cerr << "wall time: " << ms << " ms\n";  // stderr: reports stay byte-identical
  return 0;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path, const Rat& gamma) {
  MetricInstance inst;
  Solution sol;
  try {
    inst = parse_instance(read_file(inst_path));
    sol = parse_solution_json(read_file(sol_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  AuditReport rep;
  try {
    rep = check_solution(inst, sol, gamma);
  } catch (const MalformedSolutionError& e) {
    std::cerr << "malformed solution: " << e.what() << "\n";
    return 1;
  }
  if (rep.feasible) {
    std::cout << "feasible: cost " << format_fixed(rep.total_cost) << ", "
              << rep.vehicles_used << " vehicles, max load ratio "
              << rep.max_load_ratio.str() << "\n";
    return 0;
  }
  std::cout << "infeasible:\n";
  for (auto& v : rep.violations) std::cout << "  [" << v.code << "] " << v.detail << "\n";
  return 3;
}

int cmd_gen(std::uint64_t seed, int n, int k, long long Q, long long qlo, long long qhi,
            const std::string& fleet, const std::string& out_path) {
  FleetPolicy policy;
  if (fleet == "tight") {
    policy = FleetPolicy::tight();
  } else if (fleet.rfind("slack:", 0) == 0) {
    policy = FleetPolicy::with_slack(std::stoll(fleet.substr(6)));
  } else {
    std::cerr << "error: --fleet must be 'tight' or 'slack:<s>'\n";
    return 1;
  }
  MetricInstance inst;
  try {
    inst = generate_instance(seed, n, k, Q, qlo, qhi, policy);
  } catch (const GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return 1;
  }
  std::string text = write_instance(inst);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
  }
  return 0;
}

int cmd_bench(const std::string& dir, std::vector<std::string> solvers,
              const SolveOptions& opts, bool timings) {
  std::vector<std::string> files;
  try {
    for (auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file()) files.push_back(e.path().string());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::sort(files.begin(), files.end());
  if (solvers.empty()) solvers = solver_names();

  std::cout << "instance,solver,cost,opt,ratio,iterations,feasible"
            << (timings ? ",ms" : "") << "\n";
  OracleLimits limits = OracleLimits::from_env();
  std::vector<std::string> blocks(files.size());
  // instances run concurrently; rows come out in input order
#pragma omp parallel for schedule(dynamic)
  for (size_t fi = 0; fi < files.size(); ++fi) {
    const std::string& f = files[fi];
    std::string name = fs::path(f).filename().string();
    std::ostringstream block;
    MetricInstance inst;
    bool parsed = true;
    try {
      inst = parse_instance(read_file(f));
      auto viol = validate_instance(inst);
      if (!viol.empty()) throw ContractError("invalid instance: " + viol[0].code);
    } catch (const std::exception& e) {
      parsed = false;
      block << name << ",-,error: " << e.what() << ",,,," << (timings ? "," : "") << "\n";
    }
    if (parsed) {
      std::string opt_str;
      try {
        opt_str = std::to_string(solve_exact(inst, limits).opt_cost);
      } catch (const OracleRefusal&) {
        opt_str = "";
      }
      SolveOptions inner = opts;
      inner.parallel = false;
      for (auto& s : solvers) {
        if (s == "sdvrp" && inst.k != 1) continue;
        auto t0 = std::chrono::steady_clock::now();
        std::string row;
        try {
          SolverResult res = run_solver(s, inst, inner);
          if (!res.ok()) throw ContractError(res.diagnostic);
          std::string ratio;
          if (!opt_str.empty()) {
            Cost opt = std::stoll(opt_str);
            ratio = opt == 0 ? (res.cost == 0 ? "1" : "inf") : Rat(res.cost, opt).str();
          }
          row = name + "," + s + "," + std::to_string(res.cost) + "," + opt_str + "," +
                ratio + "," + std::to_string(res.iterations_run) + ",yes";
        } catch (const std::exception& e) {
          row = name + "," + s + ",error: " + e.what() + ",,,,";
        }
        if (timings) {
          auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
          row += "," + std::to_string(ms);
        }
        block << row << "\n";
      }
    }
    blocks[fi] = block.str();
  }
  for (auto& b : blocks) std::cout << b;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-depot split delivery VRP approximation toolkit"};
  app.require_subcommand(1);

  std::string instance_path, solution_path, solver = "alg3", format = "json";
  std::string mdtsp_name = "forest2", eps_str = "0.5", gamma_str = "1", fleet = "slack:0";
  std::string out_path, dir;
  std::vector<std::string> bench_solvers;
  long long max_iters = 0;
  std::uint64_t seed = 1;
  int n = 8, k = 2;
  long long Q = 10, qlo = 1, qhi = 0;
  bool serial = false, timings = false;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", instance_path)->required();
  solve->add_option("--solver", solver)->check(CLI::IsMember(solver_names()));
  solve->add_option("--eps", eps_str, "epsilon for bi-factor solvers (rational)");
  solve->add_option("--mdtsp", mdtsp_name)->check(CLI::IsMember({"forest2", "exact"}));
  solve->add_option("--max-iters", max_iters, "cap enumeration (voids the guarantee)");
  solve->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "human"}));
  solve->add_flag("--serial", serial, "disable OpenMP enumeration");

  auto* verify = app.add_subcommand("verify", "check a solution JSON against an instance");
  verify->add_option("instance", instance_path)->required();
  verify->add_option("solution", solution_path)->required();
  verify->add_option("--gamma", gamma_str, "capacity relaxation factor (rational >= 1)");

  auto* gen = app.add_subcommand("gen", "generate a random euclidean instance");
  gen->add_option("--seed", seed);
  gen->add_option("--n", n)->required();
  gen->add_option("--k", k)->required();
  gen->add_option("--Q", Q)->required();
  gen->add_option("--qmin", qlo);
  gen->add_option("--qmax", qhi, "default: Q");
  gen->add_option("--fleet", fleet, "'tight' or 'slack:<s>'");
  gen->add_option("-o,--output", out_path);

  auto* bench = app.add_subcommand("bench", "run solvers over a directory of instances");
  bench->add_option("dir", dir)->required();
  bench->add_option("--solver", bench_solvers, "repeatable; default: all applicable");
  bench->add_option("--eps", eps_str);
  bench->add_option("--mdtsp", mdtsp_name)->check(CLI::IsMember({"forest2", "exact"}));
  bench->add_option("--max-iters", max_iters);
  bench->add_flag("--serial", serial);
  bench->add_flag("--timings", timings, "append a wall-time column (non-reproducible)");

  CLI11_PARSE(app, argc, argv);

  SolveOptions opts;
  try {
    opts.eps = parse_rat(eps_str);
    opts.max_iters = max_iters;
    opts.parallel = !serial;
    opts.mdtsp = mdtsp_by_name(mdtsp_name);
    if (!opts.mdtsp) throw std::runtime_error("unknown mdtsp solver");
    if ((solver == "alg4" || solver == "alg5") && !(opts.eps > Rat(0))) {
      std::cerr << "error: bi-factor solvers need --eps > 0\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*solve) return cmd_solve(instance_path, solver, opts, format);
    if (*verify) return cmd_verify(instance_path, solution_path, parse_rat(gamma_str));
    if (*gen) return cmd_gen(seed, n, k, Q, qlo, qhi == 0 ? Q : qhi, fleet, out_path);
    if (*bench) return cmd_bench(dir, bench_solvers, opts, timings);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
