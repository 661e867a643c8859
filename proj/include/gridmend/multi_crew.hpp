#pragma once

#include <vector>

#include "gridmend/schedule.hpp"
#include "gridmend/single_crew.hpp"

namespace gridmend {

// List-schedules an optimal single-crew order onto `crews` crews. Harm is at
// most (2 - 1/m) times the m-crew optimum.
Schedule convert(const std::vector<int>& single_sequence, const PrecedenceForest& p, int crews);

// Online rule: whenever a crew frees up (ties to the lowest crew index), start
// the unstarted job with the largest rho among those whose parent has started
// (roots always qualify; ties to the lowest job id). Produces exactly the
// schedule of convert(optimal_single_sequence(p), p, crews).
Schedule dispatch_multi(const PrecedenceForest& p, const RhoFactors& rho, int crews);

// Industry baselines: same dispatch loop, different ranking key.
// FE ranks by restored weight w_l, EEI by restored weight per unit repair
// time w_l / p_l. Only the key differs from dispatch_multi, so comparisons
// isolate the ranking rule.
Schedule baseline_fe(const PrecedenceForest& p, int crews);
Schedule baseline_eei(const PrecedenceForest& p, int crews);

}  // namespace gridmend
