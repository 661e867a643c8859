#pragma once

#include <utility>
#include <vector>

namespace gridmend {

// Minimizes c^T x subject to A x >= b, x >= 0, for c >= 0, with constraints
// arriving incrementally. Internally runs a revised primal simplex on the
// dual, where the all-slack basis is feasible because c >= 0 and an appended
// primal row is just one more dual column — so re-optimization after
// add_constraint() warm-starts from the previous optimal basis.
class SimplexLp {
 public:
  // One cost per variable; all costs must be >= 0.
  explicit SimplexLp(std::vector<double> costs);

  // Adds sum(coef * x[var]) >= rhs. Returns the row index.
  int add_constraint(const std::vector<std::pair<int, double>>& terms, double rhs);

  // (Re)optimizes. False on iteration-limit or numerical failure.
  bool solve();

  const std::vector<double>& solution() const { return x_; }
  double objective() const { return objective_; }
  int rows() const { return static_cast<int>(cols_.size()) - n_; }

 private:
  struct Column {
    std::vector<std::pair<int, double>> entries;  // (dual row = primal var, coef)
    double cost = 0.0;                            // -rhs for constraint columns
  };

  void refactorize();
  double reduced_cost(const Column& col, const std::vector<double>& pi) const;

  int n_ = 0;                   // primal variables = dual rows
  std::vector<double> costs_;   // primal costs = dual rhs
  std::vector<Column> cols_;    // [0,n_): slack e_j; then one per constraint
  std::vector<int> basis_;      // column index per dual row
  std::vector<int> in_basis_;   // column -> basis position or -1
  std::vector<double> xb_;      // basic dual values
  std::vector<double> binv_;    // row-major n_ x n_ basis inverse
  std::vector<double> x_;       // primal solution
  double objective_ = 0.0;
  bool factorized_ = false;
};

}  // namespace gridmend
