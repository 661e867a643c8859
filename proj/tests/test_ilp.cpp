#include "gridmend/ilp.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gridmend/multi_crew.hpp"
#include "gridmend/rng.hpp"
#include "oracles.hpp"

using namespace gridmend;

namespace {

const char* kFeeder = R"(
node 650 1.0 source
node 632 1.0
node 633 1.0
node 634 1.0
node 645 1.0
node 646 1.0
node 671 1.0
node 684 1.0
node 611 1.0
node 652 1.0
node 680 1.0
node 692 1.0
node 675 1.0
edge 650_632 650 632 damaged 5
edge 632_633 632 633 intact
edge 633_634 633 634 intact
edge 632_645 632 645 damaged 9
edge 645_646 645 646 intact
edge 632_671 632 671 intact
edge 671_684 671 684 intact
edge 684_611 684 611 damaged 12
edge 684_652 684 652 intact
edge 671_680 671 680 intact
edge 671_692 671 692 damaged 3
edge 692_675 692 675 intact
)";

const char* kTinyChain =
    "node s 1 source\nnode a 2\nnode b 3\n"
    "edge A s a damaged 2\nedge B a b damaged 1\n";

// Evaluates a model row at a variable assignment (absent variables are 0).
double eval_row(const IlpRow& r, const std::map<std::string, double>& a) {
  double v = 0.0;
  for (const IlpTerm& t : r.terms) {
    auto it = a.find(t.var);
    if (it != a.end()) v += t.coef * it->second;
  }
  return v;
}

bool row_holds(const IlpRow& r, const std::map<std::string, double>& a) {
  double v = eval_row(r, a);
  if (r.sense == '<') return v <= r.rhs + 1e-9;
  if (r.sense == '>') return v >= r.rhs - 1e-9;
  return std::fabs(v - r.rhs) <= 1e-9;
}

// Translates an integral packed schedule into the model's variables the way
// the formulation intends: worked periods for x, cumulative-effort service
// for y, path-complete energization for u, and subtree demand for f.
std::map<std::string, double> assignment_for(const Network& net, const IlpModel& model,
                                             const PrecedenceForest& p, const Schedule& s) {
  const int T = model.horizon;
  std::map<std::string, double> a;

  std::vector<long long> done(net.lines.size(), 0);  // completion per line, 0 if intact
  for (const auto& crew : s.by_crew)
    for (const ScheduleEntry& e : crew) {
      int li = -1;
      for (int k = 0; k < static_cast<int>(net.lines.size()); ++k)
        if (net.lines[k].id == p.jobs[e.job].id) li = k;
      REQUIRE(li >= 0);
      long long start = std::llround(e.start), finish = std::llround(e.completion);
      done[li] = finish;
      for (long long t = start + 1; t <= finish && t <= T; ++t)
        a["x_" + net.lines[li].id + "_" + std::to_string(t)] = 1.0;
    }
  for (int k = 0; k < static_cast<int>(net.lines.size()); ++k)
    for (int t = 1; t <= T; ++t) {
      bool up = !net.lines[k].damaged() || t >= done[k] + 1;
      a["y_" + net.lines[k].id + "_" + std::to_string(t)] = up ? 1.0 : 0.0;
    }

  // Independent path walk: a node is served once every damaged line between
  // it and the source is done.
  const int nn = static_cast<int>(net.nodes.size());
  std::vector<std::vector<std::pair<int, int>>> adj(nn);
  for (int k = 0; k < static_cast<int>(net.lines.size()); ++k) {
    int iu = net.node_index(net.lines[k].u), iv = net.node_index(net.lines[k].v);
    adj[iu].emplace_back(k, iv);
    adj[iv].emplace_back(k, iu);
  }
  std::vector<int> par_line(nn, -1), par_node(nn, -1), order;
  std::vector<char> seen(nn, 0);
  order.push_back(net.source);
  seen[net.source] = 1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (auto [k, other] : adj[order[h]])
      if (!seen[other]) {
        seen[other] = 1;
        par_line[other] = k;
        par_node[other] = order[h];
        order.push_back(other);
      }
  std::vector<long long> energized(nn, 0);
  for (int i : order) {
    if (i == net.source) continue;
    energized[i] = std::max(energized[par_node[i]], done[par_line[i]]);
  }
  for (int i = 0; i < nn; ++i)
    for (int t = 1; t <= T; ++t)
      a["u_" + net.nodes[i].id + "_" + std::to_string(t)] =
          (i == net.source || t >= energized[i] + 1) ? 1.0 : 0.0;

  // f on a line = served nodes strictly below it; accumulate leaf-to-root.
  for (int t = 1; t <= T; ++t) {
    std::vector<double> sub(nn, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int i = *it;
      sub[i] += a["u_" + net.nodes[i].id + "_" + std::to_string(t)];
      if (i != net.source) {
        a["f_" + net.lines[par_line[i]].id + "_" + std::to_string(t)] = sub[i];
        sub[par_node[i]] += sub[i];
      }
    }
  }
  return a;
}

}  // namespace

TEST_CASE("an optimal schedule satisfies every row at its exact harm") {
  Network net = parse_network(kFeeder);
  DamagedComponentGraph g = contract(net);
  PrecedenceForest p = build_precedence(g);

  ExactResult opt = exact_enum(p, 2);
  CHECK(opt.harm == doctest::Approx(86.0));

  IlpModel model = build_ilp(net, 2);
  CHECK(model.horizon == 29);  // default: total repair time
  CHECK(model.big_m == 12);    // sink count

  auto a = assignment_for(net, model, p, opt.schedule);
  for (const IlpRow& r : model.rows) {
    INFO("row ", r.name);
    CHECK(row_holds(r, a));
  }

  double obj = model.objective_constant;
  for (const IlpTerm& t : model.objective) obj += t.coef * a[t.var];
  CHECK(obj == doctest::Approx(86.0));
}

TEST_CASE("random instances: packed schedules are model-feasible at their harm") {
  SplitMix64 rng(13579);
  for (int trial = 0; trial < 15; ++trial) {
    // Small random radial network, every line damaged with integer times.
    const int nn = 2 + static_cast<int>(rng.below(5));
    std::ostringstream text;
    text << "node 0 " << 1 + rng.below(4) << " source\n";
    for (int i = 1; i < nn; ++i) text << "node " << i << " " << 1 + rng.below(4) << "\n";
    for (int i = 1; i < nn; ++i)
      text << "edge e" << i << " " << rng.below(i) << " " << i << " damaged "
           << 1 + rng.below(4) << "\n";
    Network net = parse_network(text.str());
    PrecedenceForest p = build_precedence(contract(net));
    const int m = static_cast<int>(rng.uniform_int(1, 3));

    ExactResult opt = exact_enum(p, m);
    IlpModel model = build_ilp(net, m);
    auto a = assignment_for(net, model, p, opt.schedule);
    for (const IlpRow& r : model.rows) {
      INFO("row ", r.name);
      CHECK(row_holds(r, a));
    }
    double obj = model.objective_constant;
    for (const IlpTerm& t : model.objective) obj += t.coef * a[t.var];

    auto e = energization_times(p, opt.schedule.completions(p));
    EnergizationResult ne = node_energization(net, contract(net), p, e);
    CHECK(obj == doctest::Approx(ne.harm));
  }
}

TEST_CASE("variable inventory matches the closed form when all lines are damaged") {
  Network net = parse_network(kFeeder);
  for (Line& l : net.lines)
    if (!l.damaged()) {
      l.status = LineStatus::kDamaged;
      l.repair_time = 1.0;
    }
  IlpModel m = build_ilp(net, 2);
  const int T = m.horizon;
  CHECK(T == 5 + 9 + 12 + 3 + 8);
  // x and f per line, y per line, u per node.
  CHECK(m.variable_count() ==
        static_cast<std::size_t>(T) * (2 * 12 + 13 + 12));
  CHECK(m.binaries.size() == static_cast<std::size_t>(T) * (12 + 12 + 13));
  CHECK(m.free_vars.size() == static_cast<std::size_t>(T) * 12);
}

TEST_CASE("named rows carry the documented shapes") {
  Network net = parse_network(kTinyChain);
  IlpModel m = build_ilp(net, 1);
  REQUIRE(m.horizon == 3);
  CHECK(m.big_m == 2);

  const IlpRow* init = m.find_row("init_yd_A");
  REQUIRE(init);
  CHECK(init->sense == '=');
  CHECK(init->rhs == 0.0);
  REQUIRE(init->terms.size() == 1);
  CHECK(init->terms[0].var == "y_A_1");

  const IlpRow* cap = m.find_row("cap_2");
  REQUIRE(cap);
  CHECK(cap->terms.size() == 2);  // one x per damaged line
  CHECK(cap->rhs == 1.0);

  const IlpRow* link = m.find_row("link_A_3");
  REQUIRE(link);
  CHECK(link->terms.size() == 3);  // 2 y_A_3 - x_A_1 - x_A_2
  CHECK(link->terms[0].coef == 2.0);
  CHECK(link->sense == '<');

  const IlpRow* en = m.find_row("en_a_2");
  REQUIRE(en);
  CHECK(en->terms.size() == 3);  // u_a_2 - f_A_2 + f_B_2

  // SRTP: path work 2 to a, 3 to b; one crew. u_a_1 = 0 and u_b_1 + u_b_2 = 0.
  const IlpRow* sa = m.find_row("srtp_a");
  REQUIRE(sa);
  CHECK(sa->terms.size() == 1);
  const IlpRow* sb = m.find_row("srtp_b");
  REQUIRE(sb);
  CHECK(sb->terms.size() == 2);
  CHECK(sb->sense == '=');
  CHECK(sb->rhs == 0.0);

  // Two crews halve the cut: floor(3/2)-1 = 0 kills srtp_b too.
  IlpModel m2 = build_ilp(net, 2);
  CHECK(m2.find_row("srtp_a") == nullptr);
  CHECK(m2.find_row("srtp_b") == nullptr);
}

TEST_CASE("builder rejects fractional repairs and short horizons") {
  Network net = parse_network(
      "node s 1 source\nnode a 1\nedge A s a damaged 2.5\n");
  CHECK_THROWS_WITH_AS(build_ilp(net, 1),
                       doctest::Contains("round it first"), InputError);

  Network ok = parse_network(kTinyChain);
  CHECK_THROWS_AS(build_ilp(ok, 1, 1), InputError);  // below max repair time
  IlpModel m = build_ilp(ok, 1, 7);
  CHECK(m.horizon == 7);
  CHECK_THROWS_AS(build_ilp(ok, 0), InputError);
}

TEST_CASE("export is deterministic, wrapped, and structurally complete") {
  Network net = parse_network(kTinyChain);
  IlpModel m = build_ilp(net, 1);
  std::string text = export_model(m);
  CHECK(text == export_model(build_ilp(net, 1)));

  CHECK(text.find("\\ horizon=3 crews=1 big_m=2\n") != std::string::npos);
  CHECK(text.find("Minimize\n") != std::string::npos);
  CHECK(text.find(" obj: 18 ") != std::string::npos);  // T * total weight
  CHECK(text.find("Subject To\n") != std::string::npos);
  CHECK(text.find(" init_yd_A: y_A_1 = 0\n") != std::string::npos);
  CHECK(text.find(" link_A_3: 2 y_A_3 - x_A_1 - x_A_2 <= 0\n") != std::string::npos);
  CHECK(text.find(" srcflow_1: f_A_1 >= 0\n") != std::string::npos);
  CHECK(text.find(" flo_B_2: f_B_2 + 2 y_B_2 >= 0\n") != std::string::npos);
  CHECK(text.find(" en_b_1: u_b_1 - f_B_1 <= 0\n") != std::string::npos);
  CHECK(text.find(" srtp_b: u_b_1 + u_b_2 = 0\n") != std::string::npos);
  CHECK(text.find("Bounds\n f_A_1 free\n") != std::string::npos);
  CHECK(text.find("Binary\n") != std::string::npos);
  CHECK(text.rfind("End\n") == text.size() - 4);

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) CHECK(line.size() <= 80);
}

TEST_CASE("exhaustive optimum matches the permutation-and-assignment oracle") {
  SplitMix64 rng(24680);
  for (int trial = 0; trial < 30; ++trial) {
    oracle::TestTree t = oracle::random_tree(rng, 6);
    for (int m = 1; m <= 3; ++m) {
      ExactResult r = exact_enum(t.forest, m);
      CHECK_NOTHROW(validate_schedule(t.forest, r.schedule));
      CHECK(r.explored > 0);
      CHECK(schedule_harm(t.forest, r.schedule) == doctest::Approx(r.harm));
      CHECK(std::llround(r.harm * oracle::kWeightScale) ==
            static_cast<long long>(oracle::best_multi_harm(t, m)));
    }
  }
}

TEST_CASE("enumeration is deterministic and pads surplus crews") {
  std::vector<Job> jobs(3);
  jobs[0] = {"a", 2.0, 1.0, -1};
  jobs[1] = {"b", 1.0, 2.0, -1};
  jobs[2] = {"c", 3.0, 1.0, -1};
  PrecedenceForest p = forest_from_jobs(std::move(jobs));

  ExactResult r1 = exact_enum(p, 5);
  ExactResult r2 = exact_enum(p, 5);
  REQUIRE(r1.schedule.by_crew.size() == 5);
  CHECK(r1.harm == exact_enum(p, 3).harm);  // crews beyond jobs change nothing
  CHECK(r1.explored == r2.explored);
  for (std::size_t c = 0; c < 5; ++c) {
    REQUIRE(r1.schedule.by_crew[c].size() == r2.schedule.by_crew[c].size());
    for (std::size_t i = 0; i < r1.schedule.by_crew[c].size(); ++i)
      CHECK(r1.schedule.by_crew[c][i].job == r2.schedule.by_crew[c][i].job);
  }
}

TEST_CASE("enumeration cap guards against blowup") {
  std::vector<Job> jobs(9);
  for (int i = 0; i < 9; ++i) jobs[i] = {"j" + std::to_string(i), 1.0, 1.0, -1};
  PrecedenceForest p = forest_from_jobs(std::move(jobs));
  CHECK_THROWS_AS(exact_enum(p, 2), CapError);
  CHECK_NOTHROW(exact_enum(p, 2, 9));

  std::vector<Job> five(5);
  for (int i = 0; i < 5; ++i) five[i] = {"k" + std::to_string(i), 1.0, 1.0, -1};
  PrecedenceForest q = forest_from_jobs(std::move(five));
  CHECK_THROWS_AS(exact_enum(q, 2, 4), CapError);
}

TEST_CASE("single crew enumeration agrees with the merge optimum") {
  SplitMix64 rng(11223);
  for (int trial = 0; trial < 50; ++trial) {
    oracle::TestTree t = oracle::random_tree(rng, 7);
    ExactResult r = exact_enum(t.forest, 1);
    auto seq = optimal_single_sequence(t.forest);
    Schedule s = convert(seq, t.forest, 1);
    CHECK(r.harm == doctest::Approx(schedule_harm(t.forest, s)));
  }
}
