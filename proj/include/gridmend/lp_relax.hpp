#pragma once

#include <optional>
#include <vector>

#include "gridmend/schedule.hpp"

namespace gridmend {

struct LpSolution {
  std::vector<double> e;          // by job index; dummy root slot 0
  std::vector<double> midpoints;  // e - p/2; dummy root slot 0
  double objective = 0.0;         // certified lower bound on the m-crew optimum
  std::vector<std::vector<int>> cuts;  // prefix sets added, ascending job indices
  int rounds = 0;                      // separation rounds
};

// Most violated prefix inequality, or nullopt if e is feasible within tol.
// Candidate sets are prefixes of the jobs sorted by ascending e (ties by id);
// the prefix A is violated when
//   sum_{j in A} p_j e_j < (sum_A p_j)^2 / (2m) + sum_A p_j^2 / 2 - tol.
std::optional<std::vector<int>> separation_oracle(const PrecedenceForest& p,
                                                  const std::vector<double>& e, int crews,
                                                  double tol = 1e-6);

// Cutting-plane solve of the relaxation
//   min sum w_j E_j   s.t.  E_j >= p_j,  E_child >= E_parent,  prefix cuts.
// Each round adds every violated prefix not seen before; terminates when the
// oracle is satisfied (the prefix family is finite, so this is guaranteed).
LpSolution solve_lp_relaxation(const PrecedenceForest& p, int crews, double tol = 1e-6);

// Sorts jobs by ascending LP midpoint E_j - p_j/2 (ties by id) and
// list-schedules. Every job's energization is at most twice its LP value.
Schedule lp_list_schedule(const PrecedenceForest& p, int crews, double tol = 1e-6);

}  // namespace gridmend
