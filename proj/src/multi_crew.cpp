#include "gridmend/multi_crew.hpp"

#include <algorithm>
#include <set>

namespace gridmend {

Schedule convert(const std::vector<int>& single_sequence, const PrecedenceForest& p, int crews) {
  return list_schedule(p, single_sequence, crews);
}

namespace {

// Shared dispatch loop: whenever a crew frees up (ties to the lowest index),
// start the best-keyed unstarted job whose parent has already started. A job
// becomes a candidate the moment its parent starts, so a free crew never
// idles while unstarted jobs remain. Keys are exact rationals, ties go to the
// lowest job id.
Schedule dispatch_by_key(const PrecedenceForest& p, const std::vector<Rational>& key, int crews) {
  if (crews < 1) throw InputError("crew count must be at least 1");
  auto better = [&](int a, int b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return p.id_rank[a] < p.id_rank[b];
  };
  std::set<int, decltype(better)> ready(better);
  if (p.is_dummy(p.root)) {
    for (int c : p.children[p.root]) ready.insert(c);
  } else {
    ready.insert(p.root);
  }

  Schedule s;
  s.crews = crews;
  s.by_crew.resize(crews);
  std::vector<double> free_at(crews, 0.0);
  int remaining = p.real_count();
  while (remaining > 0) {
    int c = static_cast<int>(std::min_element(free_at.begin(), free_at.end()) - free_at.begin());
    int j = *ready.begin();
    ready.erase(ready.begin());
    double t = free_at[c];
    s.by_crew[c].push_back({j, t, t + p.jobs[j].processing});
    free_at[c] = t + p.jobs[j].processing;
    for (int ch : p.children[j]) ready.insert(ch);
    --remaining;
  }
  return s;
}

}  // namespace

Schedule dispatch_multi(const PrecedenceForest& p, const RhoFactors& rho, int crews) {
  return dispatch_by_key(p, rho.exact, crews);
}

Schedule baseline_fe(const PrecedenceForest& p, int crews) {
  std::vector<Rational> key(p.jobs.size(), Rational(0));
  for (int j = 0; j < static_cast<int>(p.jobs.size()); ++j)
    if (!p.is_dummy(j)) key[j] = Rational(p.jobs[j].weight);
  return dispatch_by_key(p, key, crews);
}

Schedule baseline_eei(const PrecedenceForest& p, int crews) {
  std::vector<Rational> key(p.jobs.size(), Rational(0));
  for (int j = 0; j < static_cast<int>(p.jobs.size()); ++j)
    if (!p.is_dummy(j))
      key[j] = Rational(p.jobs[j].weight) / Rational(p.jobs[j].processing);
  return dispatch_by_key(p, key, crews);
}

}  // namespace gridmend
