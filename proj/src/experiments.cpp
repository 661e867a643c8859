#include "gridmend/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "gridmend/format.hpp"
#include "gridmend/ilp.hpp"
#include "gridmend/lp_relax.hpp"
#include "gridmend/rng.hpp"

namespace gridmend {

namespace {

// Purpose tags for the per-instance substreams; adding draws to one purpose
// never shifts another, so generated corpora stay stable.
enum : std::uint64_t {
  kStreamTopology = 0,
  kStreamWeights = 1,
  kStreamSpecial = 2,
  kStreamDamage = 3,
  kStreamRepair = 4,
};

Network random_radial(int n, SplitMix64& rng) {
  if (n < 2) throw InputError("random topology needs at least 2 nodes");
  Network net;
  net.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    net.nodes[i].id = std::to_string(i);
    net.nodes[i].weight = 1.0;
  }
  net.nodes[0].is_source = true;
  net.source = 0;
  // Uniform random attachment keeps depth logarithmic on average, matching
  // the bushy shape of distribution feeders.
  for (int i = 1; i < n; ++i) {
    Line l;
    l.id = "e" + std::to_string(i);
    l.u = net.nodes[static_cast<int>(rng.below(i))].id;
    l.v = net.nodes[i].id;
    net.lines.push_back(std::move(l));
  }
  return net;
}

}  // namespace

Network ieee13_topology() {
  // The classic 13-node test feeder reduced to its connectivity; 650 is the
  // substation. Line ids join their endpoint names.
  static const char* kNodes[] = {"650", "632", "633", "634", "645", "646", "671",
                                 "684", "611", "652", "680", "692", "675"};
  static const std::pair<const char*, const char*> kEdges[] = {
      {"650", "632"}, {"632", "633"}, {"633", "634"}, {"632", "645"},
      {"645", "646"}, {"632", "671"}, {"671", "684"}, {"684", "611"},
      {"684", "652"}, {"671", "680"}, {"671", "692"}, {"692", "675"},
  };
  Network net;
  for (const char* id : kNodes) {
    Node n;
    n.id = id;
    n.weight = 1.0;
    net.nodes.push_back(std::move(n));
  }
  net.nodes[0].is_source = true;
  net.source = 0;
  for (auto [u, v] : kEdges) {
    Line l;
    l.id = std::string(u) + "_" + v;
    l.u = u;
    l.v = v;
    net.lines.push_back(std::move(l));
  }
  return net;
}

Network gen_instance(const InstanceSpec& spec) {
  Network net;
  if (spec.topology == "ieee13") {
    net = ieee13_topology();
  } else if (spec.topology == "random") {
    SplitMix64 topo = substream(spec.seed, kStreamTopology);
    net = random_radial(spec.random_nodes, topo);
  } else {
    net = load_network(spec.topology);  // connectivity only; everything else is redrawn
    for (Line& l : net.lines) {
      l.status = LineStatus::kIntact;
      l.repair_time = 0.0;
    }
  }

  SplitMix64 weights = substream(spec.seed, kStreamWeights);
  for (Node& n : net.nodes) n.weight = 1.0 - weights.uniform01();  // (0,1], exact dyadic
  if (net.nodes.size() > 1) {
    SplitMix64 special = substream(spec.seed, kStreamSpecial);
    // One high-priority load (weight 5) somewhere off the substation.
    int k = static_cast<int>(special.below(net.nodes.size() - 1));
    for (int i = 0, seen = 0; i < static_cast<int>(net.nodes.size()); ++i) {
      if (i == net.source) continue;
      if (seen++ == k) {
        net.nodes[i].weight = 5.0;
        break;
      }
    }
  }

  const int nl = static_cast<int>(net.lines.size());
  int damaged = 0;
  switch (spec.mode) {
    case DamageMode::kAll:
      damaged = nl;
      break;
    case DamageMode::kCount:
      if (spec.damage_count < 0 || spec.damage_count > nl)
        throw InputError("damage count out of range");
      damaged = spec.damage_count;
      break;
    case DamageMode::kFraction:
      if (spec.damage_fraction < 0.0 || spec.damage_fraction > 1.0)
        throw InputError("damage fraction out of range");
      damaged = static_cast<int>(std::llround(spec.damage_fraction * nl));
      break;
  }
  std::vector<int> order(nl);
  std::iota(order.begin(), order.end(), 0);
  if (damaged < nl) {
    SplitMix64 pick = substream(spec.seed, kStreamDamage);
    for (int i = nl - 1; i > 0; --i)
      std::swap(order[i], order[static_cast<int>(pick.below(i + 1))]);
  }
  for (int i = 0; i < damaged; ++i) net.lines[order[i]].status = LineStatus::kDamaged;

  SplitMix64 repair = substream(spec.seed, kStreamRepair);
  for (Line& l : net.lines) {
    if (!l.damaged()) continue;
    l.repair_time = repair.uniform_int(1, 10);
    if (spec.perturb) l.repair_time += 0.1 * (repair.uniform_int(0, 2) - 1);
  }
  return net;
}

std::string render_network_file(const Network& net) {
  std::ostringstream out;
  for (const Node& n : net.nodes) {
    out << "node " << n.id << ' ' << format_exact(n.weight);
    if (n.is_source) out << " source";
    out << '\n';
  }
  for (const Line& l : net.lines) {
    out << "edge " << l.id << ' ' << l.u << ' ' << l.v << ' '
        << (l.damaged() ? "damaged" : "intact");
    if (l.damaged()) out << ' ' << format_exact(l.repair_time);
    out << '\n';
  }
  return out.str();
}

namespace {

int resolve_threads(int requested, int work_items) {
  int t = requested > 0 ? requested
                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::max(1, std::min(t, std::max(1, work_items)));
}

struct InstanceRows {
  bool failed = false;
  std::vector<GapRow> rows;
};

}  // namespace

GapReport run_gap_study(const InstanceSpec& spec, int runs, const std::vector<Policy>& policies,
                        GapReference reference, int enum_cap, int threads) {
  if (runs < 0) throw InputError("run count must be nonnegative");
  if (policies.empty()) throw InputError("empty policy list");

  const bool wants_en =
      std::count(policies.begin(), policies.end(), Policy::kCa) &&
      std::count(policies.begin(), policies.end(), Policy::kLp);

  std::vector<InstanceRows> results(runs);
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    for (int i = cursor.fetch_add(1); i < runs; i = cursor.fetch_add(1)) {
      InstanceSpec s = spec;
      s.seed = spec.seed + static_cast<std::uint64_t>(i);
      InstanceRows& slot = results[i];
      try {
        Network net = gen_instance(s);
        PrecedenceForest forest = build_precedence(contract(net));
        double ref = reference == GapReference::kEnum
                         ? exact_enum(forest, s.crews, enum_cap).harm
                         : solve_lp_relaxation(forest, s.crews).objective;
        double ca_harm = -1.0, lp_harm = -1.0;
        PolicyOptions opts;
        opts.enum_cap = enum_cap;
        for (Policy pol : policies) {
          double h = schedule_harm(forest, run_policy(forest, pol, s.crews, opts));
          if (pol == Policy::kCa) ca_harm = h;
          if (pol == Policy::kLp) lp_harm = h;
          slot.rows.push_back(
              {s.seed, policy_name(pol), h, ref, ref > 0.0 ? h / ref - 1.0 : 0.0});
        }
        if (wants_en) {
          double h = std::min(ca_harm, lp_harm);
          slot.rows.push_back({s.seed, "en", h, ref, ref > 0.0 ? h / ref - 1.0 : 0.0});
        }
      } catch (const std::exception&) {
        slot.failed = true;  // recorded, not fatal: one bad draw must not sink a study
      }
    }
  };
  const int nthreads = resolve_threads(threads, runs);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  GapReport report;
  for (int i = 0; i < runs; ++i) {
    if (results[i].failed) {
      report.failed_seeds.push_back(spec.seed + static_cast<std::uint64_t>(i));
      continue;
    }
    for (GapRow& r : results[i].rows) report.rows.push_back(std::move(r));
  }

  std::vector<std::string> names;
  for (Policy pol : policies) names.push_back(policy_name(pol));
  if (wants_en) names.push_back("en");
  for (const std::string& name : names) {
    GapSummary sum;
    sum.policy = name;
    for (const GapRow& r : report.rows) {
      if (r.policy != name) continue;
      sum.mean_gap += r.gap;
      sum.frac_within_10pct += r.gap <= 0.10 + 1e-12 ? 1.0 : 0.0;
      ++sum.instances;
    }
    if (sum.instances > 0) {
      sum.mean_gap /= sum.instances;
      sum.frac_within_10pct /= sum.instances;
    }
    report.summary.push_back(std::move(sum));
  }
  return report;
}

std::string gap_report_csv(const GapReport& report) {
  std::ostringstream out;
  out << "seed,policy,harm,reference,gap\n";
  for (const GapRow& r : report.rows)
    out << r.seed << ',' << r.policy << ',' << format_number(r.harm) << ','
        << format_number(r.reference) << ',' << format_number(r.gap) << '\n';
  out << '\n';
  out << "policy,mean_gap,frac_within_10pct,instances\n";
  for (const GapSummary& s : report.summary)
    out << s.policy << ',' << format_number(s.mean_gap) << ','
        << format_number(s.frac_within_10pct) << ',' << s.instances << '\n';
  if (!report.failed_seeds.empty()) {
    out << "# failed seeds:";
    for (std::uint64_t s : report.failed_seeds) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

TrajectoryComparison compare_trajectories(const Network& net, int crews,
                                          const std::vector<Policy>& policies,
                                          const PolicyOptions& opts) {
  if (policies.empty()) throw InputError("empty policy list");
  DamagedComponentGraph g = contract(net);
  PrecedenceForest forest = build_precedence(g);
  const double total = net.total_weight();

  TrajectoryComparison cmp;
  cmp.policies = policies;
  double max_makespan = 0.0;
  for (Policy pol : policies) {
    Schedule s = run_policy(forest, pol, crews, opts);
    max_makespan = std::max(max_makespan, s.makespan());
    EnergizationResult r =
        node_energization(net, g, forest, energization_times(forest, s.completions(forest)));
    cmp.final_harm.push_back(r.harm);
    cmp.trajectories.push_back(trajectory(r, net, total));
  }
  cmp.midpoint_time = max_makespan / 2.0;
  for (const Trajectory& t : cmp.trajectories)
    cmp.midpoint_fraction.push_back(t.fraction_at(cmp.midpoint_time));
  return cmp;
}

}  // namespace gridmend
