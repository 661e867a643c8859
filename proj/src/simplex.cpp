#include "gridmend/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridmend {

// Dual of  min c^T x, A x >= b, x >= 0  is  max b^T y, A^T y <= c, y >= 0.
// In computational form: min (-b)^T y with A^T y + s = c, (y, s) >= 0 — an
// equality system over the n primal variables whose all-slack basis (s = c)
// is feasible whenever c >= 0. At a dual optimum the simplex multipliers pi
// satisfy x = -pi, which recovers the primal solution.

namespace {
constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr int kRefactorEvery = 100;
constexpr int kStallLimit = 60;
constexpr long kMaxPivots = 200000;
}  // namespace

SimplexLp::SimplexLp(std::vector<double> costs)
    : n_(static_cast<int>(costs.size())), costs_(std::move(costs)) {
  for (double c : costs_)
    if (!(c >= 0.0)) throw std::invalid_argument("objective costs must be nonnegative");
  cols_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    cols_[j].entries = {{j, 1.0}};  // slack
    cols_[j].cost = 0.0;
  }
  basis_.resize(n_);
  in_basis_.assign(n_, -1);
  for (int j = 0; j < n_; ++j) {
    basis_[j] = j;
    in_basis_[j] = j;
  }
  xb_ = costs_;
  binv_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) binv_[static_cast<std::size_t>(i) * n_ + i] = 1.0;
  x_.assign(n_, 0.0);
  factorized_ = true;
}

int SimplexLp::add_constraint(const std::vector<std::pair<int, double>>& terms, double rhs) {
  Column col;
  col.cost = -rhs;
  for (auto [var, coef] : terms) {
    if (var < 0 || var >= n_) throw std::invalid_argument("constraint variable out of range");
    if (coef != 0.0) col.entries.emplace_back(var, coef);
  }
  cols_.push_back(std::move(col));
  in_basis_.push_back(-1);
  return static_cast<int>(cols_.size()) - n_ - 1;
}

void SimplexLp::refactorize() {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (auto [row, coef] : cols_[basis_[i]].entries) b(row, i) = coef;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  Eigen::MatrixXd inv = lu.inverse();
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) binv_[static_cast<std::size_t>(r) * n_ + c] = inv(r, c);
  // Recompute basic values from scratch to shed accumulated drift.
  for (int i = 0; i < n_; ++i) {
    double v = 0.0;
    for (int c = 0; c < n_; ++c) v += binv_[static_cast<std::size_t>(i) * n_ + c] * costs_[c];
    xb_[i] = std::max(v, 0.0);
  }
  factorized_ = true;
}

double SimplexLp::reduced_cost(const Column& col, const std::vector<double>& pi) const {
  double r = col.cost;
  for (auto [row, coef] : col.entries) r -= pi[row] * coef;
  return r;
}

bool SimplexLp::solve() {
  if (!factorized_) refactorize();
  const int ncols = static_cast<int>(cols_.size());
  std::vector<double> pi(n_), d(n_);
  bool bland = false;
  int since_refactor = 0;
  int stall = 0;

  for (long pivot = 0; pivot < kMaxPivots; ++pivot) {
    // pi^T = cB^T * Binv
    for (int c = 0; c < n_; ++c) {
      double v = 0.0;
      for (int i = 0; i < n_; ++i)
        v += cols_[basis_[i]].cost * binv_[static_cast<std::size_t>(i) * n_ + c];
      pi[c] = v;
    }

    int entering = -1;
    double best = -kCostEps;
    for (int k = 0; k < ncols; ++k) {
      if (in_basis_[k] >= 0) continue;
      double r = reduced_cost(cols_[k], pi);
      if (bland) {
        if (r < -kCostEps) {
          entering = k;
          break;
        }
      } else if (r < best) {
        best = r;
        entering = k;
      }
    }
    if (entering < 0) {
      // Optimal: primal solution from the multipliers.
      for (int j = 0; j < n_; ++j) x_[j] = std::max(-pi[j], 0.0);
      objective_ = 0.0;
      for (int j = 0; j < n_; ++j) objective_ += costs_[j] * x_[j];
      return true;
    }

    // d = Binv * column(entering)
    std::fill(d.begin(), d.end(), 0.0);
    for (auto [row, coef] : cols_[entering].entries)
      for (int i = 0; i < n_; ++i) d[i] += binv_[static_cast<std::size_t>(i) * n_ + row] * coef;

    int leave = -1;
    double theta = 0.0;
    for (int i = 0; i < n_; ++i) {
      if (d[i] <= kPivotEps) continue;
      double ratio = xb_[i] / d[i];
      if (leave < 0 || ratio < theta - 1e-12 ||
          (ratio < theta + 1e-12 && basis_[i] < basis_[leave]))
        leave = i, theta = ratio;
    }
    if (leave < 0) return false;  // dual unbounded: primal infeasible (never expected here)

    // Eta update of Binv and the basic values.
    const double piv = d[leave];
    double* lrow = &binv_[static_cast<std::size_t>(leave) * n_];
    for (int c = 0; c < n_; ++c) lrow[c] /= piv;
    for (int i = 0; i < n_; ++i) {
      if (i == leave || d[i] == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(i) * n_];
      const double f = d[i];
      for (int c = 0; c < n_; ++c) row[c] -= f * lrow[c];
    }
    for (int i = 0; i < n_; ++i) {
      if (i == leave) continue;
      xb_[i] = std::max(xb_[i] - theta * d[i], 0.0);
    }
    xb_[leave] = theta;
    in_basis_[basis_[leave]] = -1;
    in_basis_[entering] = leave;
    basis_[leave] = entering;

    stall = theta <= 1e-12 ? stall + 1 : 0;
    if (stall > kStallLimit) bland = true;
    if (stall == 0) bland = false;
    if (++since_refactor >= kRefactorEvery) {
      refactorize();
      since_refactor = 0;
    }
  }
  return false;
}

}  // namespace gridmend
