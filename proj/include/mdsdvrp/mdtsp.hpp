#pragma once

#include <memory>
#include <string>

#include "mdsdvrp/graph.hpp"

namespace mdsdvrp {

// Black-box multiple-depot TSP: returns a cycle cover with exactly k
// cycles, one depot per cycle, every customer in exactly one cycle.
// Depots left without customers come back as trivial cycles.
class MdTspSolver {
 public:
  virtual ~MdTspSolver() = default;
  virtual std::string name() const = 0;
  virtual Rat claimed_ratio() const = 0;
  virtual ComponentSet solve(const MetricInstance& inst) const = 0;
};

// Spanning-forest doubling (classical 2-approximation).
const MdTspSolver& mdtsp_forest2();

// Exhaustive depot assignment + Held-Karp per depot; refuses instances
// with more than `limit` vertices.
ComponentSet solve_mdtsp_exact(const MetricInstance& inst, int limit = 10);
const MdTspSolver& mdtsp_exact(int limit = 10);

const MdTspSolver* mdtsp_by_name(const std::string& name);  // nullptr if unknown

// Throws ContractError when `cover` violates the MD-TSP output contract.
void check_mdtsp_cover(const MetricInstance& inst, const ComponentSet& cover);

}  // namespace mdsdvrp
