#include "gridmend/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "gridmend/format.hpp"

namespace gridmend {

const IlpRow* IlpModel::find_row(const std::string& name) const {
  for (const IlpRow& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

std::string vname(const char* kind, const std::string& id, int t) {
  return std::string(kind) + "_" + id + "_" + std::to_string(t);
}

}  // namespace

IlpModel build_ilp(const Network& net, int crews, std::optional<int> horizon) {
  if (crews < 1) throw InputError("crew count must be at least 1");
  int total_p = 0;
  int max_p = 0;
  for (const Line& l : net.lines) {
    if (!l.damaged()) continue;
    if (l.repair_time != std::floor(l.repair_time))
      throw InputError("repair time of line '" + l.id + "' is not an integer; round it first");
    total_p += static_cast<int>(l.repair_time);
    max_p = std::max(max_p, static_cast<int>(l.repair_time));
  }
  const int T = horizon.value_or(total_p);
  if (T < max_p)
    throw InputError("horizon " + std::to_string(T) + " is shorter than a repair time");

  IlpModel m;
  m.horizon = T;
  m.crews = crews;
  // Flow bound: the sink count. Any line's flow is at most the number of
  // energized nodes strictly below it, which this dominates.
  m.big_m = static_cast<int>(net.nodes.size()) - 1;

  // Orient the tree away from the source: parent_line[i] feeds node i.
  const int nn = static_cast<int>(net.nodes.size());
  std::vector<std::vector<std::pair<int, int>>> adj(nn);  // (line, other node)
  for (int e = 0; e < static_cast<int>(net.lines.size()); ++e) {
    int iu = net.node_index(net.lines[e].u);
    int iv = net.node_index(net.lines[e].v);
    adj[iu].emplace_back(e, iv);
    adj[iv].emplace_back(e, iu);
  }
  std::vector<int> parent_line(nn, -1);
  std::vector<std::vector<int>> child_lines(nn);
  std::vector<int> srtp(nn, 0);  // total damaged repair time on the source path
  std::queue<int> bfs;
  std::vector<char> seen(nn, 0);
  bfs.push(net.source);
  seen[net.source] = 1;
  while (!bfs.empty()) {
    int i = bfs.front();
    bfs.pop();
    for (auto [e, other] : adj[i]) {
      if (seen[other]) continue;
      seen[other] = 1;
      parent_line[other] = e;
      child_lines[i].push_back(e);
      srtp[other] = srtp[i] + (net.lines[e].damaged()
                                   ? static_cast<int>(net.lines[e].repair_time)
                                   : 0);
      bfs.push(other);
    }
  }

  // Objective: sum_t sum_i w_i (1 - u_i^t) = T * sum w - sum w_i u_i^t.
  double wsum = 0.0;
  for (const Node& node : net.nodes) wsum += node.weight;
  m.objective_constant = T * wsum;
  for (const Node& node : net.nodes)
    for (int t = 1; t <= T; ++t)
      if (node.weight != 0.0) m.objective.push_back({vname("u", node.id, t), -node.weight});

  // Damaged lines start out of service.
  for (const Line& l : net.lines)
    if (l.damaged())
      m.rows.push_back({"init_yd_" + l.id, {{vname("y", l.id, 1), 1.0}}, '=', 0.0});
  // Intact lines stay in service throughout.
  for (const Line& l : net.lines)
    if (!l.damaged())
      for (int t = 1; t <= T; ++t)
        m.rows.push_back({vname("init_yi", l.id, t), {{vname("y", l.id, t), 1.0}}, '=', 1.0});
  // The source is always energized.
  for (int t = 1; t <= T; ++t)
    m.rows.push_back(
        {vname("init_us", net.nodes[net.source].id, t),
         {{vname("u", net.nodes[net.source].id, t), 1.0}},
         '=',
         1.0});
  // At most `crews` repairs per period.
  for (int t = 1; t <= T; ++t) {
    IlpRow row{"cap_" + std::to_string(t), {}, '<', static_cast<double>(crews)};
    for (const Line& l : net.lines)
      if (l.damaged()) row.terms.push_back({vname("x", l.id, t), 1.0});
    m.rows.push_back(std::move(row));
  }
  // A damaged line is in service only after its full repair effort:
  // p_l * y_l^t <= sum_{tau < t} x_l^tau.
  for (const Line& l : net.lines) {
    if (!l.damaged()) continue;
    for (int t = 1; t <= T; ++t) {
      IlpRow row{vname("link", l.id, t), {{vname("y", l.id, t), l.repair_time}}, '<', 0.0};
      for (int tau = 1; tau < t; ++tau) row.terms.push_back({vname("x", l.id, tau), -1.0});
      m.rows.push_back(std::move(row));
    }
  }
  // The source may push any nonnegative net outflow.
  for (int t = 1; t <= T; ++t) {
    IlpRow row{"srcflow_" + std::to_string(t), {}, '>', 0.0};
    for (int e : child_lines[net.source]) row.terms.push_back({vname("f", net.lines[e].id, t), 1.0});
    m.rows.push_back(std::move(row));
  }
  // Flow only on in-service lines: -M y <= f <= M y.
  for (const Line& l : net.lines)
    for (int t = 1; t <= T; ++t) {
      m.rows.push_back({vname("flo", l.id, t),
                        {{vname("f", l.id, t), 1.0}, {vname("y", l.id, t), static_cast<double>(m.big_m)}},
                        '>',
                        0.0});
      m.rows.push_back({vname("fhi", l.id, t),
                        {{vname("f", l.id, t), 1.0}, {vname("y", l.id, t), -static_cast<double>(m.big_m)}},
                        '<',
                        0.0});
    }
  // A node is energized only when its net inflow covers it.
  for (int i = 0; i < nn; ++i) {
    if (i == net.source) continue;
    for (int t = 1; t <= T; ++t) {
      IlpRow row{vname("en", net.nodes[i].id, t),
                 {{vname("u", net.nodes[i].id, t), 1.0},
                  {vname("f", net.lines[parent_line[i]].id, t), -1.0}},
                 '<',
                 0.0};
      for (int e : child_lines[i]) row.terms.push_back({vname("f", net.lines[e].id, t), 1.0});
      m.rows.push_back(std::move(row));
    }
  }
  // Repair-path cuts: node i cannot be energized before its path repair work
  // could possibly finish, i.e. u_i^t = 0 for t <= floor(srtp_i / crews) - 1.
  for (int i = 0; i < nn; ++i) {
    if (i == net.source) continue;
    int bound = srtp[i] / crews - 1;
    if (bound < 1) continue;
    bound = std::min(bound, T);
    IlpRow row{"srtp_" + net.nodes[i].id, {}, '=', 0.0};
    for (int t = 1; t <= bound; ++t) row.terms.push_back({vname("u", net.nodes[i].id, t), 1.0});
    m.rows.push_back(std::move(row));
  }

  for (const Line& l : net.lines)
    if (l.damaged())
      for (int t = 1; t <= T; ++t) m.binaries.push_back(vname("x", l.id, t));
  for (const Line& l : net.lines)
    for (int t = 1; t <= T; ++t) m.binaries.push_back(vname("y", l.id, t));
  for (const Node& node : net.nodes)
    for (int t = 1; t <= T; ++t) m.binaries.push_back(vname("u", node.id, t));
  for (const Line& l : net.lines)
    for (int t = 1; t <= T; ++t) m.free_vars.push_back(vname("f", l.id, t));
  return m;
}

namespace {

void append_wrapped(std::ostringstream& out, std::string& line, const std::string& piece) {
  if (line.size() + piece.size() > 76) {
    out << line << '\n';
    line = "   ";
  }
  line += piece;
}

std::string term_text(const IlpTerm& t, bool first) {
  double a = t.coef;
  std::string sign = a < 0 ? "- " : (first ? "" : "+ ");
  double mag = std::fabs(a);
  std::string body = mag == 1.0 ? t.var : format_exact(mag) + " " + t.var;
  return sign + body + " ";
}

}  // namespace

std::string export_model(const IlpModel& m) {
  std::ostringstream out;
  out << "\\ time-indexed repair scheduling model\n";
  out << "\\ horizon=" << m.horizon << " crews=" << m.crews << " big_m=" << m.big_m << "\n";
  out << "Minimize\n";
  {
    std::string line = " obj: ";
    if (m.objective_constant != 0.0 || m.objective.empty())
      line += format_exact(m.objective_constant) + " ";
    for (std::size_t i = 0; i < m.objective.size(); ++i)
      append_wrapped(out, line,
                     term_text(m.objective[i], i == 0 && m.objective_constant == 0.0));
    out << line << '\n';
  }
  out << "Subject To\n";
  for (const IlpRow& r : m.rows) {
    std::string line = " " + r.name + ": ";
    for (std::size_t i = 0; i < r.terms.size(); ++i)
      append_wrapped(out, line, term_text(r.terms[i], i == 0));
    const char* sense = r.sense == '<' ? "<= " : (r.sense == '>' ? ">= " : "= ");
    append_wrapped(out, line, sense + format_exact(r.rhs));
    out << line << '\n';
  }
  if (!m.free_vars.empty()) {
    out << "Bounds\n";
    for (const std::string& v : m.free_vars) out << ' ' << v << " free\n";
  }
  if (!m.binaries.empty()) {
    out << "Binary\n";
    std::string line = " ";
    for (const std::string& v : m.binaries) append_wrapped(out, line, v + " ");
    out << line << '\n';
  }
  out << "End\n";
  return out.str();
}

ExactResult exact_enum(const PrecedenceForest& p, int crews, int cap) {
  if (crews < 1) throw InputError("crew count must be at least 1");
  const int n = p.real_count();
  if (n > cap)
    throw CapError("instance has " + std::to_string(n) + " jobs, enumeration cap is " +
                   std::to_string(cap));

  ExactResult best;
  best.schedule.crews = crews;
  best.schedule.by_crew.resize(crews);
  if (n == 0) return best;

  // Crews beyond one-per-job never change the optimum; enumerate the useful
  // ones and pad afterwards.
  const int m_eff = std::min(crews, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::vector<int> topo = p.topo_order();

  std::vector<double> completion(p.jobs.size(), 0.0);
  std::vector<double> energized(p.jobs.size(), 0.0);
  std::vector<int> cuts(m_eff + 1, 0);
  cuts[m_eff] = n;
  best.harm = -1.0;

  // Harm of `perm` segmented at `cuts` (crew c runs perm[cuts[c]..cuts[c+1])
  // back-to-back from 0). Non-delay packing is enough: the objective is
  // nondecreasing in every completion time.
  auto evaluate = [&]() {
    for (int c = 0; c < m_eff; ++c) {
      double t = 0.0;
      for (int k = cuts[c]; k < cuts[c + 1]; ++k) {
        t += p.jobs[perm[k]].processing;
        completion[perm[k]] = t;
      }
    }
    for (int j : topo) {
      double own = p.is_dummy(j) ? 0.0 : completion[j];
      int par = p.jobs[j].parent;
      energized[j] = par >= 0 ? std::max(own, energized[par]) : own;
    }
    double h = 0.0;
    for (int j = 0; j < static_cast<int>(p.jobs.size()); ++j)
      if (!p.is_dummy(j)) h += p.jobs[j].weight * energized[j];
    ++best.explored;
    if (best.harm < 0.0 || h < best.harm) {
      best.harm = h;
      for (int c = 0; c < m_eff; ++c) {
        best.schedule.by_crew[c].clear();
        double t = 0.0;
        for (int k = cuts[c]; k < cuts[c + 1]; ++k) {
          double done = t + p.jobs[perm[k]].processing;
          best.schedule.by_crew[c].push_back({perm[k], t, done});
          t = done;
        }
      }
    }
  };

  // All nondecreasing interior cut vectors (cuts[0] = 0 and cuts[m_eff] = n
  // are pinned), lexicographically.
  auto cut_loop = [&](auto&& self, int c) -> void {
    if (c == m_eff) {
      evaluate();
      return;
    }
    for (int v = cuts[c - 1]; v <= n; ++v) {
      cuts[c] = v;
      self(self, c + 1);
    }
  };

  do {
    cut_loop(cut_loop, 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace gridmend
