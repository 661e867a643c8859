#include "gridmend/lp_relax.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gridmend/rng.hpp"
#include "oracles.hpp"

using namespace gridmend;

namespace {

double set_violation(const PrecedenceForest& p, const std::vector<int>& set,
                     const std::vector<double>& e, int m) {
  double lhs = 0, psum = 0, psq = 0;
  for (int j : set) {
    double pj = p.jobs[j].processing;
    lhs += pj * e[j];
    psum += pj;
    psq += pj * pj;
  }
  return psum * psum / (2.0 * m) + 0.5 * psq - lhs;
}

}  // namespace

TEST_CASE("single job: the relaxation is tight at E = p") {
  std::vector<Job> jobs(1);
  jobs[0] = {"a", 2.0, 3.0, -1};
  PrecedenceForest p = forest_from_jobs(std::move(jobs));

  LpSolution sol = solve_lp_relaxation(p, 1);
  CHECK(sol.e[0] == doctest::Approx(3.0));
  CHECK(sol.objective == doctest::Approx(6.0));
  CHECK(sol.midpoints[0] == doctest::Approx(1.5));
  CHECK(separation_oracle(p, sol.e, 1) == std::nullopt);
}

TEST_CASE("two equal jobs, one crew: the pair cut closes the gap") {
  std::vector<Job> jobs(2);
  jobs[0] = {"a", 1.0, 2.0, -1};
  jobs[1] = {"b", 1.0, 2.0, -1};
  PrecedenceForest p = forest_from_jobs(std::move(jobs));

  // At the bound solution E = (2,2) the most violated prefix is the full
  // pair: 2*2 + 2*2 = 8 against (2+2)^2/2 + (4+4)/2 = 12.
  std::vector<double> e(p.jobs.size(), 2.0);
  e[p.root] = 0.0;
  auto cut = separation_oracle(p, e, 1);
  REQUIRE(cut.has_value());
  CHECK(*cut == std::vector<int>{0, 1});
  CHECK(set_violation(p, *cut, e, 1) == doctest::Approx(4.0));

  LpSolution sol = solve_lp_relaxation(p, 1);
  CHECK(sol.objective == doctest::Approx(6.0));  // equals the true optimum 2 + 4
  CHECK(sol.rounds >= 2);
  REQUIRE_FALSE(sol.cuts.empty());
  CHECK(sol.cuts[0] == std::vector<int>{0, 1});
}

TEST_CASE("true schedules never violate the prefix inequalities") {
  SplitMix64 rng(848);
  for (int trial = 0; trial < 80; ++trial) {
    oracle::TestTree t = oracle::random_tree(rng);
    const int n = t.forest.real_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    const int m = static_cast<int>(rng.uniform_int(1, 3));
    Schedule s = list_schedule(t.forest, perm, m);
    auto e = energization_times(t.forest, s.completions(t.forest));

    CHECK(separation_oracle(t.forest, e, m) == std::nullopt);
    CHECK(oracle::max_subset_violation(t.forest, e, m) <= 1e-9);
  }
}

TEST_CASE("the most violated subset is always a sorted prefix") {
  SplitMix64 rng(959);
  for (int trial = 0; trial < 200; ++trial) {
    oracle::TestTree t = oracle::random_tree(rng);
    const int m = static_cast<int>(rng.uniform_int(1, 3));
    // Arbitrary candidate point, not necessarily feasible for anything.
    std::vector<double> e(t.forest.jobs.size(), 0.0);
    for (int j = 0; j < t.forest.real_count(); ++j)
      e[j] = 20.0 * rng.uniform01();

    double brute = oracle::max_subset_violation(t.forest, e, m);
    auto cut = separation_oracle(t.forest, e, m);
    if (!cut.has_value()) {
      CHECK(brute <= 1e-6);
    } else {
      CHECK(set_violation(t.forest, *cut, e, m) == doctest::Approx(brute).epsilon(1e-9));
      CHECK(std::is_sorted(cut->begin(), cut->end()));
    }
  }
}

TEST_CASE("relaxation solutions are feasible, bounded, and certified") {
  SplitMix64 rng(1070);
  for (int trial = 0; trial < 40; ++trial) {
    oracle::TestTree t = oracle::random_tree(rng, 6);
    const int m = static_cast<int>(rng.uniform_int(1, 3));
    LpSolution sol = solve_lp_relaxation(t.forest, m);

    double expect_obj = 0.0;
    for (int j = 0; j < t.forest.real_count(); ++j) {
      const Job& job = t.forest.jobs[j];
      CHECK(sol.e[j] >= job.processing - 1e-7);
      int par = job.parent;
      if (par >= 0 && !t.forest.is_dummy(par)) CHECK(sol.e[j] >= sol.e[par] - 1e-7);
      CHECK(sol.midpoints[j] == doctest::Approx(sol.e[j] - job.processing / 2));
      expect_obj += job.weight * sol.e[j];
    }
    CHECK(sol.objective == doctest::Approx(expect_obj));

    // Termination means no subset stays violated, prefix or not.
    CHECK(oracle::max_subset_violation(t.forest, sol.e, m) <= 1e-5);
    for (const auto& cut : sol.cuts) CHECK(set_violation(t.forest, cut, sol.e, m) <= 1e-6);

    // Lower bound on the exact m-crew optimum.
    auto opt = oracle::best_multi_harm(t, m);
    CHECK(sol.objective <=
          static_cast<double>(opt) / oracle::kWeightScale + 1e-6);
  }
}

TEST_CASE("midpoint schedule stays within twice the LP point, job by job") {
  SplitMix64 rng(1181);
  for (int trial = 0; trial < 60; ++trial) {
    oracle::TestTree t = oracle::random_tree(rng);
    const int m = static_cast<int>(rng.uniform_int(1, 3));
    LpSolution sol = solve_lp_relaxation(t.forest, m);
    Schedule s = lp_list_schedule(t.forest, m);
    CHECK_NOTHROW(validate_schedule(t.forest, s));

    auto e = energization_times(t.forest, s.completions(t.forest));
    double h = 0.0;
    for (int j = 0; j < t.forest.real_count(); ++j) {
      CHECK(e[j] <= 2.0 * sol.e[j] + 1e-6);
      h += t.forest.jobs[j].weight * e[j];
    }
    CHECK(h >= sol.objective - 1e-6);  // schedule harm can't beat the bound
  }
}

TEST_CASE("input validation") {
  std::vector<Job> jobs(1);
  jobs[0] = {"a", 1.0, 1.0, -1};
  PrecedenceForest p = forest_from_jobs(std::move(jobs));
  CHECK_THROWS_AS(solve_lp_relaxation(p, 0), InputError);
  CHECK_THROWS_AS(separation_oracle(p, {1.0, 2.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(lp_list_schedule(p, -1), InputError);
}
