#pragma once

#include <string>
#include <vector>

#include "gridmend/network.hpp"

namespace gridmend {

struct ScheduleEntry {
  int job = -1;
  double start = 0.0;
  double completion = 0.0;
};

struct Schedule {
  int crews = 1;
  std::vector<std::vector<ScheduleEntry>> by_crew;  // each ordered by start

  // Per-job completion times (dummy root slot, if any, is 0).
  std::vector<double> completions(const PrecedenceForest& p) const;
  double makespan() const;
};

// Throws std::logic_error if s is not a valid schedule for p: every real job
// exactly once, durations equal to repair times, per-crew intervals disjoint,
// nothing before t = 0.
void validate_schedule(const PrecedenceForest& p, const Schedule& s);

// E_j = max completion over j's precedence ancestors (including j itself):
// a line energizes once every damaged line on its source path is repaired.
std::vector<double> energization_times(const PrecedenceForest& p,
                                       const std::vector<double>& completions);

// Total weighted energization time over real jobs.
double harm(const PrecedenceForest& p, const std::vector<double>& energization);

// Non-delay greedy: jobs in priority order, each to the earliest-free crew
// (ties to the lowest crew index). Repairs have no precedence constraints, so
// nothing waits. `priority` must be a permutation of the real jobs.
Schedule list_schedule(const PrecedenceForest& p, const std::vector<int>& priority, int crews);

// Packs the given per-crew job orders back-to-back from t = 0 using the true
// repair times. This is the re-scoring path for externally produced schedules.
Schedule rebuild_packed(const PrecedenceForest& p,
                        const std::vector<std::vector<int>>& crew_orders);

double schedule_harm(const PrecedenceForest& p, const Schedule& s);

struct EnergizationResult {
  std::vector<double> line_energization;  // by job index
  std::vector<double> node_energization;  // by Network node index
  double harm = 0.0;                      // node-side weighted sum
};

// Node n energizes when its supernode's entering damaged line does; source
// supernode members are energized at t = 0.
EnergizationResult node_energization(const Network& net, const DamagedComponentGraph& g,
                                     const PrecedenceForest& p,
                                     const std::vector<double>& line_energization);

struct TrajectoryPoint {
  double time = 0.0;
  double restored_weight = 0.0;  // cumulative
  double fraction = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;  // strictly increasing times
  double fraction_at(double t) const;   // step-function evaluation
};

// Restored-weight curve: one breakpoint per distinct energization time,
// simultaneous energizations merged. A t = 0 point appears iff weight is
// already energized at the source.
Trajectory trajectory(const EnergizationResult& r, const Network& net, double total_weight);

// CSV renderers. Headers: "crew,job,start,completion", "node,energization_time",
// "time,restored_weight,fraction". Numbers carry 9 significant digits.
std::string schedule_csv(const PrecedenceForest& p, const Schedule& s);
std::string energization_csv(const Network& net, const EnergizationResult& r);
std::string trajectory_csv(const Trajectory& t);

}  // namespace gridmend
