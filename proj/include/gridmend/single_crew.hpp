#pragma once

#include <vector>

#include "gridmend/network.hpp"
#include "gridmend/rational.hpp"

namespace gridmend {

// rho(l): the largest weight-to-time ratio over subtrees of P rooted at l.
// Exact rationals internally; doubles only at the boundary.
struct RhoFactors {
  std::vector<Rational> exact;  // by job index; dummy root slot is 0
  double value(int job) const { return to_double(exact[job]); }
};

struct MergeRun {
  std::vector<int> sequence;  // real jobs, optimal single-crew order
  RhoFactors rho;
  int merge_count = 0;  // group merges performed; one per real job
};

// Group-merging sequencer for outtrees: repeatedly absorb the group with the
// largest weight/time ratio into its predecessor's group (largest ratio first,
// ties to the lowest head job id). The ratio a group carries at the moment it
// merges is exactly rho of its head job, so one run yields both the optimal
// order and all rho-factors. Every real job's group merges exactly once.
MergeRun run_outtree_merge(const PrecedenceForest& p);

std::vector<int> optimal_single_sequence(const PrecedenceForest& p);
RhoFactors rho_factors(const PrecedenceForest& p);

// Single-crew dispatch: repeatedly start the started-parent candidate with the
// largest rho (ties to the lowest job id). Produces the same order as
// optimal_single_sequence.
std::vector<int> dispatch_single(const PrecedenceForest& p, const RhoFactors& rho);

}  // namespace gridmend
