#include "gridmend/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gridmend/format.hpp"

namespace gridmend {

std::vector<double> Schedule::completions(const PrecedenceForest& p) const {
  std::vector<double> c(p.jobs.size(), 0.0);
  for (const auto& crew : by_crew)
    for (const ScheduleEntry& e : crew) c[e.job] = e.completion;
  return c;
}

double Schedule::makespan() const {
  double m = 0.0;
  for (const auto& crew : by_crew)
    if (!crew.empty()) m = std::max(m, crew.back().completion);
  return m;
}

void validate_schedule(const PrecedenceForest& p, const Schedule& s) {
  if (s.crews < 1 || static_cast<int>(s.by_crew.size()) != s.crews)
    throw std::logic_error("crew count mismatch");
  std::vector<int> seen(p.jobs.size(), 0);
  for (const auto& crew : s.by_crew) {
    double prev_end = 0.0;
    for (const ScheduleEntry& e : crew) {
      if (e.job < 0 || e.job >= static_cast<int>(p.jobs.size()) || p.is_dummy(e.job))
        throw std::logic_error("schedule references an invalid job");
      ++seen[e.job];
      if (e.start < -1e-12 || e.start < prev_end - 1e-9)
        throw std::logic_error("overlapping or negative-start intervals");
      double dur = e.completion - e.start;
      if (std::fabs(dur - p.jobs[e.job].processing) > 1e-9)
        throw std::logic_error("interval length differs from repair time");
      prev_end = e.completion;
    }
  }
  for (int j = 0; j < static_cast<int>(p.jobs.size()); ++j) {
    if (p.is_dummy(j)) continue;
    if (seen[j] != 1) throw std::logic_error("job '" + p.jobs[j].id + "' scheduled " +
                                             std::to_string(seen[j]) + " times");
  }
}

std::vector<double> energization_times(const PrecedenceForest& p,
                                       const std::vector<double>& completions) {
  if (completions.size() != p.jobs.size())
    throw std::invalid_argument("completion vector size mismatch");
  for (std::size_t j = 0; j < completions.size(); ++j)
    if (!p.is_dummy(static_cast<int>(j)) && !std::isfinite(completions[j]))
      throw std::invalid_argument("missing completion for job '" + p.jobs[j].id + "'");

  std::vector<double> e(p.jobs.size(), 0.0);
  for (int j : p.topo_order()) {
    double own = p.is_dummy(j) ? 0.0 : completions[j];
    int par = p.jobs[j].parent;
    e[j] = par >= 0 ? std::max(own, e[par]) : own;
  }
  return e;
}

double harm(const PrecedenceForest& p, const std::vector<double>& energization) {
  if (energization.size() != p.jobs.size())
    throw std::invalid_argument("energization vector size mismatch");
  double h = 0.0;
  for (int j = 0; j < static_cast<int>(p.jobs.size()); ++j)
    if (!p.is_dummy(j)) h += p.jobs[j].weight * energization[j];
  return h;
}

Schedule list_schedule(const PrecedenceForest& p, const std::vector<int>& priority, int crews) {
  if (crews < 1) throw InputError("crew count must be at least 1");
  std::vector<int> seen(p.jobs.size(), 0);
  for (int j : priority) {
    if (j < 0 || j >= static_cast<int>(p.jobs.size()) || p.is_dummy(j) || seen[j]++)
      throw InputError("priority list is not a permutation of the jobs");
  }
  if (static_cast<int>(priority.size()) != p.real_count())
    throw InputError("priority list is not a permutation of the jobs");

  Schedule s;
  s.crews = crews;
  s.by_crew.resize(crews);
  std::vector<double> free_at(crews, 0.0);
  for (int j : priority) {
    int c = static_cast<int>(std::min_element(free_at.begin(), free_at.end()) - free_at.begin());
    double t = free_at[c];
    s.by_crew[c].push_back({j, t, t + p.jobs[j].processing});
    free_at[c] = t + p.jobs[j].processing;
  }
  return s;
}

Schedule rebuild_packed(const PrecedenceForest& p,
                        const std::vector<std::vector<int>>& crew_orders) {
  Schedule s;
  s.crews = std::max<std::size_t>(1, crew_orders.size());
  s.by_crew.resize(s.crews);
  for (std::size_t c = 0; c < crew_orders.size(); ++c) {
    double t = 0.0;
    for (int j : crew_orders[c]) {
      if (j < 0 || j >= static_cast<int>(p.jobs.size()) || p.is_dummy(j))
        throw InputError("schedule references an unknown job");
      double done = t + p.jobs[j].processing;
      s.by_crew[c].push_back({j, t, done});
      t = done;
    }
  }
  validate_schedule(p, s);
  return s;
}

double schedule_harm(const PrecedenceForest& p, const Schedule& s) {
  return harm(p, energization_times(p, s.completions(p)));
}

EnergizationResult node_energization(const Network& net, const DamagedComponentGraph& g,
                                     const PrecedenceForest& p,
                                     const std::vector<double>& line_energization) {
  if (line_energization.size() != p.jobs.size())
    throw std::invalid_argument("energization vector size mismatch");

  // Supernode s energizes when the damaged line entering it does; the source
  // supernode is energized from the start.
  std::vector<double> super_e(g.supernodes.size(), 0.0);
  for (const SuperEdge& e : g.edges) {
    int j = p.index_of(e.line);
    if (j < 0) throw std::invalid_argument("forest is missing line '" + e.line + "'");
    super_e[e.tail] = line_energization[j];
  }

  EnergizationResult r;
  r.line_energization = line_energization;
  r.node_energization.resize(net.nodes.size(), 0.0);
  for (int i = 0; i < static_cast<int>(net.nodes.size()); ++i) {
    r.node_energization[i] = super_e[g.supernode_of[i]];
    r.harm += net.nodes[i].weight * r.node_energization[i];
  }
  return r;
}

double Trajectory::fraction_at(double t) const {
  double f = 0.0;
  for (const TrajectoryPoint& pt : points) {
    if (pt.time > t) break;
    f = pt.fraction;
  }
  return f;
}

Trajectory trajectory(const EnergizationResult& r, const Network& net, double total_weight) {
  if (!(total_weight > 0.0)) throw InputError("total weight must be positive");
  std::map<double, double> added;  // time -> weight energized at that instant
  for (int i = 0; i < static_cast<int>(net.nodes.size()); ++i)
    added[r.node_energization[i]] += net.nodes[i].weight;

  Trajectory t;
  double cum = 0.0;
  for (auto [time, w] : added) {
    cum += w;
    if (time == 0.0 && cum == 0.0) continue;  // nothing restored yet, no breakpoint
    t.points.push_back({time, cum, cum / total_weight});
  }
  return t;
}

std::string schedule_csv(const PrecedenceForest& p, const Schedule& s) {
  std::ostringstream out;
  out << "crew,job,start,completion\n";
  for (int c = 0; c < static_cast<int>(s.by_crew.size()); ++c)
    for (const ScheduleEntry& e : s.by_crew[c])
      out << c + 1 << ',' << p.jobs[e.job].id << ',' << format_number(e.start) << ','
          << format_number(e.completion) << '\n';
  return out.str();
}

std::string energization_csv(const Network& net, const EnergizationResult& r) {
  std::ostringstream out;
  out << "node,energization_time\n";
  for (int i = 0; i < static_cast<int>(net.nodes.size()); ++i)
    out << net.nodes[i].id << ',' << format_number(r.node_energization[i]) << '\n';
  return out.str();
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream out;
  out << "time,restored_weight,fraction\n";
  for (const TrajectoryPoint& pt : t.points)
    out << format_number(pt.time) << ',' << format_number(pt.restored_weight) << ','
        << format_number(pt.fraction) << '\n';
  return out.str();
}

}  // namespace gridmend
