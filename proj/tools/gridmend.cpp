#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gridmend/errors.hpp"
#include "gridmend/experiments.hpp"
#include "gridmend/format.hpp"
#include "gridmend/ilp.hpp"
#include "gridmend/lp_relax.hpp"
#include "gridmend/multi_crew.hpp"
#include "gridmend/network.hpp"
#include "gridmend/policies.hpp"
#include "gridmend/schedule.hpp"
#include "gridmend/single_crew.hpp"

namespace {

using namespace gridmend;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  std::cout << "wrote " << path << "\n";
}

int env_threads() {
  const char* v = std::getenv("GRIDMEND_THREADS");
  if (!v || !*v) return 0;
  int t = std::atoi(v);
  if (t < 1) throw InputError("GRIDMEND_THREADS must be a positive integer");
  return t;
}

struct DamageFlags {
  std::string damage = "all";  // "all" | integer count | fraction in [0,1]

  void apply(InstanceSpec& spec) const {
    if (damage == "all") {
      spec.mode = DamageMode::kAll;
      return;
    }
    // Bare integer = count; anything else with a '.' = fraction.
    if (damage.find('.') == std::string::npos) {
      spec.mode = DamageMode::kCount;
      spec.damage_count = std::atoi(damage.c_str());
      if (spec.damage_count <= 0 && damage != "0")
        throw InputError("bad --damage value '" + damage + "'");
    } else {
      spec.mode = DamageMode::kFraction;
      spec.damage_fraction = std::atof(damage.c_str());
    }
  }
};

// crew,job,start,completion rows -> per-crew job orders (by start, then row order).
std::vector<std::vector<int>> parse_schedule_csv(const std::string& text,
                                                 const PrecedenceForest& p) {
  struct Row {
    int crew;
    int job;
    double start;
    int line;
  };
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (line_no == 1 && !f.empty() && f[0] == "crew") continue;  // header
    if (f.size() != 4)
      throw ParseError(line_no, "expected 4 fields: crew,job,start,completion");
    Row r;
    r.crew = std::atoi(f[0].c_str());
    if (r.crew < 1) throw ParseError(line_no, "bad crew index '" + f[0] + "'");
    r.job = p.index_of(f[1]);
    if (r.job < 0) throw ParseError(line_no, "'" + f[1] + "' is not a damaged line");
    r.start = std::atof(f[2].c_str());
    r.line = line_no;
    rows.push_back(r);
  }
  int crews = 1;
  for (const Row& r : rows) crews = std::max(crews, r.crew);
  std::vector<std::vector<Row>> per_crew(crews);
  for (const Row& r : rows) per_crew[r.crew - 1].push_back(r);
  std::vector<std::vector<int>> orders(crews);
  for (int c = 0; c < crews; ++c) {
    std::stable_sort(per_crew[c].begin(), per_crew[c].end(),
                     [](const Row& a, const Row& b) { return a.start < b.start; });
    for (const Row& r : per_crew[c]) orders[c].push_back(r.job);
  }
  return orders;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(int argc, char** argv) {
  CLI::App app{"gridmend: repair scheduling for damaged radial distribution networks"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::string net_path, out_path, out_dir = ".", sched_path, policies_csv = "ca";
  std::string policy_name_arg = "ca", reference = "enum", dump_cuts;
  std::string energization_path, trajectory_path;
  int crews = 1, enum_cap = 8, runs = 10, nodes = 123, horizon_arg = -1;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  bool perturb = false;
  DamageFlags damage;
  InstanceSpec spec;

  auto add_net = [&](CLI::App* cmd) {
    cmd->add_option("network", net_path, "network file")->required();
  };
  auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--topology", spec.topology, "ieee13 | random | path to a network file");
    cmd->add_option("--nodes", nodes, "node count for random topologies");
    cmd->add_option("--damage", damage.damage, "all | <count> | <fraction with a dot>");
    cmd->add_flag("--perturb", perturb, "perturb repair times by -0.1/0/+0.1");
    cmd->add_option("--seed", seed, "instance seed");
  };

  CLI::App* c_schedule = app.add_subcommand("schedule", "compute a repair schedule");
  add_net(c_schedule);
  c_schedule->add_option("--crews", crews, "number of repair crews")->check(CLI::PositiveNumber);
  c_schedule->add_option("--policy", policy_name_arg, "ca|dispatch|fe|eei|lp|enum");
  c_schedule->add_option("--enum-cap", enum_cap, "job cap for enumeration");
  c_schedule->add_option("--energization", energization_path, "write node energization CSV here");
  c_schedule->add_option("--trajectory", trajectory_path, "write restoration trajectory CSV here");

  CLI::App* c_seq1 = app.add_subcommand("seq1", "optimal single-crew repair order");
  add_net(c_seq1);

  CLI::App* c_rho = app.add_subcommand("rho", "priority factors of the damaged lines");
  add_net(c_rho);

  CLI::App* c_lp = app.add_subcommand("lp", "lower bound via the relaxation");
  add_net(c_lp);
  c_lp->add_option("--crews", crews, "number of repair crews")->check(CLI::PositiveNumber);
  c_lp->add_option("--tol", tol, "cut violation tolerance");
  c_lp->add_option("--dump-cuts", dump_cuts, "write the added cuts here");

  CLI::App* c_export = app.add_subcommand("export-ilp", "write the time-indexed model");
  add_net(c_export);
  c_export->add_option("--crews", crews, "number of repair crews")->check(CLI::PositiveNumber);
  c_export->add_option("--horizon", horizon_arg, "number of unit periods (default: total repair time)");
  c_export->add_option("-o,--output", out_path, "output file (default: stdout)");

  CLI::App* c_score = app.add_subcommand("score-schedule", "re-score an external schedule CSV");
  add_net(c_score);
  c_score->add_option("schedule", sched_path, "schedule CSV (crew,job,start,completion)")
      ->required();

  CLI::App* c_gen = app.add_subcommand("gen", "generate a random damaged instance");
  add_instance_flags(c_gen);
  c_gen->add_option("-o,--output", out_path, "output file (default: stdout)");

  CLI::App* c_gap = app.add_subcommand("gap-study", "policy harms against a reference");
  add_instance_flags(c_gap);
  c_gap->add_option("--runs", runs, "number of instances")->check(CLI::NonNegativeNumber);
  c_gap->add_option("--crews", crews, "number of repair crews")->check(CLI::PositiveNumber);
  c_gap->add_option("--policies", policies_csv, "comma-separated policy list");
  c_gap->add_option("--reference", reference, "enum | lp-bound");
  c_gap->add_option("--enum-cap", enum_cap, "job cap for enumeration");
  c_gap->add_option("-o,--output", out_path, "output file (default: stdout)");

  CLI::App* c_cmp = app.add_subcommand("compare", "restoration trajectories per policy");
  add_net(c_cmp);
  c_cmp->add_option("--crews", crews, "number of repair crews")->check(CLI::PositiveNumber);
  c_cmp->add_option("--policies", policies_csv, "comma-separated policy list");
  c_cmp->add_option("--enum-cap", enum_cap, "job cap for enumeration");
  c_cmp->add_option("--out-dir", out_dir, "directory for trajectory CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  PolicyOptions opts;
  opts.enum_cap = enum_cap;
  opts.lp_tol = tol;

  if (c_schedule->parsed()) {
    auto policy = parse_policy(policy_name_arg);
    if (!policy) throw InputError("unknown policy '" + policy_name_arg + "'");
    Network net = load_network(net_path);
    DamagedComponentGraph g = contract(net);
    PrecedenceForest forest = build_precedence(g);
    Schedule s = run_policy(forest, *policy, crews, opts);
    std::cout << schedule_csv(forest, s);
    EnergizationResult r =
        node_energization(net, g, forest, energization_times(forest, s.completions(forest)));
    std::cout << "harm," << format_number(r.harm) << "\n";
    if (!energization_path.empty()) write_file(energization_path, energization_csv(net, r));
    if (!trajectory_path.empty())
      write_file(trajectory_path, trajectory_csv(trajectory(r, net, net.total_weight())));
  } else if (c_seq1->parsed()) {
    PrecedenceForest forest = build_precedence(contract(load_network(net_path)));
    std::vector<int> seq = optimal_single_sequence(forest);
    std::cout << "position,job\n";
    for (std::size_t i = 0; i < seq.size(); ++i)
      std::cout << i + 1 << ',' << forest.jobs[seq[i]].id << '\n';
  } else if (c_rho->parsed()) {
    PrecedenceForest forest = build_precedence(contract(load_network(net_path)));
    RhoFactors rho = rho_factors(forest);
    std::cout << "job,rho\n";
    for (int j = 0; j < forest.real_count(); ++j)
      std::cout << forest.jobs[j].id << ',' << format_number(rho.value(j)) << '\n';
  } else if (c_lp->parsed()) {
    PrecedenceForest forest = build_precedence(contract(load_network(net_path)));
    LpSolution sol = solve_lp_relaxation(forest, crews, tol);
    std::cout << "job,e_lp,midpoint\n";
    for (int j = 0; j < forest.real_count(); ++j)
      std::cout << forest.jobs[j].id << ',' << format_number(sol.e[j]) << ','
                << format_number(sol.midpoints[j]) << '\n';
    std::cout << "objective," << format_number(sol.objective) << "\n";
    if (!dump_cuts.empty()) {
      std::ostringstream cuts;
      for (const auto& cut : sol.cuts) {
        for (std::size_t i = 0; i < cut.size(); ++i)
          cuts << (i ? " " : "") << forest.jobs[cut[i]].id;
        cuts << '\n';
      }
      write_file(dump_cuts, cuts.str());
    }
  } else if (c_export->parsed()) {
    Network net = load_network(net_path);
    std::optional<int> horizon;
    if (horizon_arg >= 0) horizon = horizon_arg;
    std::string text = export_model(build_ilp(net, crews, horizon));
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
  } else if (c_score->parsed()) {
    Network net = load_network(net_path);
    DamagedComponentGraph g = contract(net);
    PrecedenceForest forest = build_precedence(g);
    Schedule s = rebuild_packed(forest, parse_schedule_csv(read_file(sched_path), forest));
    std::cout << schedule_csv(forest, s);
    EnergizationResult r =
        node_energization(net, g, forest, energization_times(forest, s.completions(forest)));
    std::cout << "harm," << format_number(r.harm) << "\n";
  } else if (c_gen->parsed()) {
    spec.random_nodes = nodes;
    spec.perturb = perturb;
    spec.seed = seed;
    damage.apply(spec);
    std::string text = render_network_file(gen_instance(spec));
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
  } else if (c_gap->parsed()) {
    spec.random_nodes = nodes;
    spec.perturb = perturb;
    spec.seed = seed;
    spec.crews = crews;
    damage.apply(spec);
    GapReference ref;
    if (reference == "enum")
      ref = GapReference::kEnum;
    else if (reference == "lp-bound")
      ref = GapReference::kLpBound;
    else
      throw InputError("unknown reference '" + reference + "'");
    GapReport report = run_gap_study(spec, runs, parse_policy_list(policies_csv), ref, enum_cap,
                                     env_threads());
    std::string text = gap_report_csv(report);
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
  } else if (c_cmp->parsed()) {
    Network net = load_network(net_path);
    std::vector<Policy> pols = parse_policy_list(policies_csv);
    TrajectoryComparison cmp = compare_trajectories(net, crews, pols, opts);
    std::cout << "policy,final_harm,midpoint_fraction\n";
    for (std::size_t i = 0; i < pols.size(); ++i)
      std::cout << policy_name(pols[i]) << ',' << format_number(cmp.final_harm[i]) << ','
                << format_number(cmp.midpoint_fraction[i]) << '\n';
    std::cout << "midpoint_time," << format_number(cmp.midpoint_time) << "\n";
    for (std::size_t i = 0; i < pols.size(); ++i)
      write_file(out_dir + "/trajectory_" + policy_name(pols[i]) + ".csv",
                 trajectory_csv(cmp.trajectories[i]));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
