#include "gridmend/lp_relax.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gridmend/simplex.hpp"

namespace gridmend {

namespace {

// Violated prefixes of the jobs sorted by ascending e (ties by id). For the
// prefix A with P = sum_A p_j, the valid inequality is
//   sum_A p_j e_j >= P^2 / (2m) + sum_A p_j^2 / 2.
// Returns (prefix length, violation) pairs exceeding tol, plus the argmax.
struct PrefixScan {
  std::vector<int> sorted;      // real jobs, ascending e
  std::vector<double> violation;  // per prefix length-1
  int best = -1;                // index into sorted/violation, -1 if none over tol
};

PrefixScan scan_prefixes(const PrecedenceForest& p, const std::vector<double>& e, int crews,
                         double tol) {
  PrefixScan s;
  for (int j = 0; j < static_cast<int>(p.jobs.size()); ++j)
    if (!p.is_dummy(j)) s.sorted.push_back(j);
  std::sort(s.sorted.begin(), s.sorted.end(), [&](int a, int b) {
    if (e[a] != e[b]) return e[a] < e[b];
    return p.id_rank[a] < p.id_rank[b];
  });

  double lhs = 0.0, psum = 0.0, psq = 0.0, best_v = tol;
  s.violation.resize(s.sorted.size());
  for (std::size_t k = 0; k < s.sorted.size(); ++k) {
    int j = s.sorted[k];
    double pj = p.jobs[j].processing;
    lhs += pj * e[j];
    psum += pj;
    psq += pj * pj;
    double rhs = psum * psum / (2.0 * crews) + 0.5 * psq;
    s.violation[k] = rhs - lhs;
    if (s.violation[k] > best_v) {
      best_v = s.violation[k];
      s.best = static_cast<int>(k);
    }
  }
  return s;
}

std::vector<int> prefix_set(const PrefixScan& s, int k) {
  std::vector<int> set(s.sorted.begin(), s.sorted.begin() + k + 1);
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

std::optional<std::vector<int>> separation_oracle(const PrecedenceForest& p,
                                                  const std::vector<double>& e, int crews,
                                                  double tol) {
  if (crews < 1) throw InputError("crew count must be at least 1");
  if (e.size() != p.jobs.size()) throw std::invalid_argument("energization vector size mismatch");
  PrefixScan s = scan_prefixes(p, e, crews, tol);
  if (s.best < 0) return std::nullopt;
  return prefix_set(s, s.best);
}

LpSolution solve_lp_relaxation(const PrecedenceForest& p, int crews, double tol) {
  if (crews < 1) throw InputError("crew count must be at least 1");
  const int n = p.real_count();
  LpSolution out;
  out.e.assign(p.jobs.size(), 0.0);
  out.midpoints.assign(p.jobs.size(), 0.0);
  if (n == 0) return out;

  // Real jobs occupy indices [0, n); the dummy root, if any, sits behind them.
  std::vector<double> costs(n);
  for (int j = 0; j < n; ++j) costs[j] = p.jobs[j].weight;
  SimplexLp lp(costs);
  for (int j = 0; j < n; ++j) lp.add_constraint({{j, 1.0}}, p.jobs[j].processing);
  for (int j = 0; j < n; ++j) {
    int par = p.jobs[j].parent;
    if (par >= 0 && !p.is_dummy(par)) lp.add_constraint({{j, 1.0}, {par, -1.0}}, 0.0);
  }

  std::set<std::vector<int>> seen;
  std::vector<double> e(p.jobs.size(), 0.0);
  const int max_rounds = std::max(100, 10 * n * n);
  for (int round = 1; round <= max_rounds; ++round) {
    if (!lp.solve()) throw std::runtime_error("LP relaxation failed to converge");
    for (int j = 0; j < n; ++j) e[j] = lp.solution()[j];
    out.rounds = round;

    PrefixScan scan = scan_prefixes(p, e, crews, tol);
    if (scan.best < 0) break;  // no violation beyond tol: done

    bool added = false;
    for (std::size_t k = 0; k < scan.sorted.size(); ++k) {
      if (scan.violation[k] <= tol) continue;
      std::vector<int> cut = prefix_set(scan, static_cast<int>(k));
      if (!seen.insert(cut).second) continue;
      std::vector<std::pair<int, double>> terms;
      double psum = 0.0, psq = 0.0;
      for (int j : cut) {
        double pj = p.jobs[j].processing;
        terms.emplace_back(j, pj);
        psum += pj;
        psq += pj * pj;
      }
      lp.add_constraint(terms, psum * psum / (2.0 * crews) + 0.5 * psq);
      out.cuts.push_back(std::move(cut));
      added = true;
    }
    // Every violated prefix already recorded means the solver failed to
    // enforce a row it accepted — a bug, not an instance property.
    if (!added) throw std::runtime_error("cutting-plane loop stalled on a recorded cut");
    if (round == max_rounds) throw std::runtime_error("cutting-plane round limit exceeded");
  }

  for (int j = 0; j < n; ++j) {
    out.e[j] = e[j];
    out.midpoints[j] = e[j] - p.jobs[j].processing / 2.0;
  }
  out.objective = lp.objective();
  return out;
}

Schedule lp_list_schedule(const PrecedenceForest& p, int crews, double tol) {
  LpSolution sol = solve_lp_relaxation(p, crews, tol);
  std::vector<int> order;
  for (int j = 0; j < p.real_count(); ++j) order.push_back(j);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (sol.midpoints[a] != sol.midpoints[b]) return sol.midpoints[a] < sol.midpoints[b];
    return p.id_rank[a] < p.id_rank[b];
  });
  return list_schedule(p, order, crews);
}

}  // namespace gridmend
