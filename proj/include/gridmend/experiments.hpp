#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridmend/network.hpp"
#include "gridmend/policies.hpp"
#include "gridmend/schedule.hpp"

namespace gridmend {

enum class DamageMode { kAll, kCount, kFraction };

// Everything needed to regenerate an instance: the same spec always produces
// byte-identical networks.
struct InstanceSpec {
  std::string topology = "ieee13";  // "ieee13" | "random" | path to a network file
  int random_nodes = 123;           // only for "random"
  DamageMode mode = DamageMode::kAll;
  int damage_count = 0;
  double damage_fraction = 0.0;
  bool perturb = false;  // repair times become k - 0.1, k, or k + 0.1
  std::uint64_t seed = 0;
  int crews = 1;
};

// Draws node weights uniform on (0,1] (one random non-source node upgraded to
// weight 5), integer repair times uniform on 1..10, and the damage set, all on
// purpose-split streams of `seed`.
Network gen_instance(const InstanceSpec& spec);

// The instance back in network-file form (weights printed exactly).
std::string render_network_file(const Network& net);

// The bundled 13-node feeder topology (nodes/edges only, all intact).
Network ieee13_topology();

enum class GapReference { kEnum, kLpBound };

struct GapRow {
  std::uint64_t seed = 0;
  std::string policy;
  double harm = 0.0;
  double reference = 0.0;  // enumeration optimum or LP lower bound
  double gap = 0.0;        // harm / reference - 1
};

struct GapSummary {
  std::string policy;
  double mean_gap = 0.0;
  double frac_within_10pct = 0.0;
  int instances = 0;
};

struct GapReport {
  std::vector<GapRow> rows;            // grouped by seed, policies in call order
  std::vector<GapSummary> summary;
  std::vector<std::uint64_t> failed_seeds;  // instances that threw; not fatal
};

// Runs `runs` instances (seeds spec.seed, spec.seed+1, ...) under each policy
// against the chosen reference. When both ca and lp are present, a synthetic
// "en" row takes the better of the two per instance. Instances run in
// parallel on up to `threads` workers (0 = hardware concurrency); results are
// ordered by seed regardless.
GapReport run_gap_study(const InstanceSpec& spec, int runs, const std::vector<Policy>& policies,
                        GapReference reference, int enum_cap = 8, int threads = 0);

std::string gap_report_csv(const GapReport& report);

struct TrajectoryComparison {
  std::vector<Policy> policies;
  std::vector<Trajectory> trajectories;       // parallel to policies
  std::vector<double> midpoint_fraction;      // restored fraction at midpoint_time
  double midpoint_time = 0.0;                 // half the largest makespan
  std::vector<double> final_harm;             // parallel to policies
};

TrajectoryComparison compare_trajectories(const Network& net, int crews,
                                          const std::vector<Policy>& policies,
                                          const PolicyOptions& opts = {});

}  // namespace gridmend
