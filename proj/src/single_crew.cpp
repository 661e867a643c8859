#include "gridmend/single_crew.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace gridmend {

namespace {

// Disjoint-set over jobs where find() returns the head job of the group a job
// currently belongs to. Merging group j into group t keeps t's head.
struct GroupSets {
  std::vector<int> up;
  explicit GroupSets(int n) : up(n, -1) {}
  int find(int x) {
    while (up[x] >= 0) {
      if (up[up[x]] >= 0) up[x] = up[up[x]];
      x = up[x];
    }
    return x;
  }
  void absorb(int head, int into) { up[head] = into; }
};

}  // namespace

MergeRun run_outtree_merge(const PrecedenceForest& p) {
  const int n = static_cast<int>(p.jobs.size());
  MergeRun out;
  out.rho.exact.assign(n, Rational(0));
  if (p.real_count() == 0) return out;

  // One extra slot acts as the absorber above the root: the dummy root's own
  // group when there is one, a virtual group otherwise. Either way the real
  // root merges like every other job, which is what yields its rho.
  const int absorber = p.has_dummy_root ? p.root : n;
  std::vector<Rational> w(n + 1), pr(n + 1);
  std::vector<int> last(n + 1);       // A(group): last job of its partial sequence
  std::vector<int> version(n + 1, 0);
  std::vector<int> seq_pred(n, -2);
  GroupSets groups(n + 1);
  last[absorber] = p.has_dummy_root ? p.root : -1;

  struct HeapItem {
    Rational q;
    int rank;  // id tie-break
    int head;
    int version;
  };
  auto worse = [](const HeapItem& a, const HeapItem& b) {
    if (a.q != b.q) return a.q < b.q;  // max-heap on q
    return a.rank > b.rank;            // then lowest id
  };
  std::priority_queue<HeapItem, std::vector<HeapItem>, decltype(worse)> heap(worse);

  for (int j = 0; j < n; ++j) {
    if (p.is_dummy(j)) continue;
    w[j] = Rational(p.jobs[j].weight);
    pr[j] = Rational(p.jobs[j].processing);
    last[j] = j;
    heap.push({w[j] / pr[j], p.id_rank[j], j, 0});
  }

  int remaining = p.real_count();
  while (remaining > 0) {
    HeapItem item = heap.top();
    heap.pop();
    if (item.version != version[item.head] || groups.find(item.head) != item.head)
      continue;  // stale entry
    const int j = item.head;
    out.rho.exact[j] = item.q;

    // Merge j's group into the group holding j's tree parent.
    int par = p.jobs[j].parent;
    int target = par < 0 ? absorber : groups.find(par);
    seq_pred[j] = last[target];
    last[target] = last[j];
    groups.absorb(j, target);
    if (target != n) {  // the virtual absorber has no ratio to maintain
      w[target] += w[j];
      pr[target] += pr[j];
      ++version[target];
      // A selected head is itself absorbed elsewhere, so it can never come
      // back: only unselected heads need a refreshed heap entry.
      if (!p.is_dummy(target))
        heap.push({w[target] / pr[target], p.id_rank[target], target, version[target]});
    }
    ++out.merge_count;
    --remaining;
  }

  // The chained pred pointers spell the sequence backwards from the absorber's
  // last job; the dummy root (or the -1 sentinel) marks the front.
  const int stop = p.has_dummy_root ? p.root : -1;
  out.sequence.reserve(p.real_count());
  for (int j = last[absorber]; j != stop; j = seq_pred[j]) out.sequence.push_back(j);
  std::reverse(out.sequence.begin(), out.sequence.end());
  if (static_cast<int>(out.sequence.size()) != p.real_count())
    throw std::logic_error("merge sequence lost jobs");
  return out;
}

std::vector<int> optimal_single_sequence(const PrecedenceForest& p) {
  return run_outtree_merge(p).sequence;
}

RhoFactors rho_factors(const PrecedenceForest& p) { return run_outtree_merge(p).rho; }

std::vector<int> dispatch_single(const PrecedenceForest& p, const RhoFactors& rho) {
  // Candidates: unstarted jobs whose parent has started (roots always count).
  // Ordered by descending rho, then lowest job id.
  auto better = [&](int a, int b) {
    if (rho.exact[a] != rho.exact[b]) return rho.exact[a] > rho.exact[b];
    return p.id_rank[a] < p.id_rank[b];
  };
  std::set<int, decltype(better)> ready(better);
  if (p.is_dummy(p.root)) {
    for (int c : p.children[p.root]) ready.insert(c);
  } else {
    ready.insert(p.root);
  }

  std::vector<int> seq;
  seq.reserve(p.real_count());
  while (!ready.empty()) {
    int j = *ready.begin();
    ready.erase(ready.begin());
    seq.push_back(j);
    for (int c : p.children[j]) ready.insert(c);
  }
  return seq;
}

}  // namespace gridmend
