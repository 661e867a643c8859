#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridmend/schedule.hpp"

namespace gridmend {

struct IlpTerm {
  std::string var;
  double coef = 0.0;
};

struct IlpRow {
  std::string name;
  std::vector<IlpTerm> terms;
  char sense = '<';  // '<' (<=), '>' (>=), '=' (==)
  double rhs = 0.0;
};

// Time-indexed model over unit periods t = 1..horizon:
//   x_<line>_<t>  crew works on damaged line in period t   (binary)
//   y_<line>_<t>  line is operational in period t          (binary, all lines)
//   u_<node>_<t>  node is energized in period t            (binary)
//   f_<line>_<t>  power flow on line in period t           (free, |f| <= big_m)
// minimized objective = constant + terms = sum of weighted unserved periods.
struct IlpModel {
  int horizon = 0;
  int crews = 1;
  int big_m = 0;  // sink node count, the flow bound
  double objective_constant = 0.0;
  std::vector<IlpTerm> objective;
  std::vector<IlpRow> rows;
  std::vector<std::string> binaries;
  std::vector<std::string> free_vars;

  std::size_t variable_count() const { return binaries.size() + free_vars.size(); }
  const IlpRow* find_row(const std::string& name) const;
};

// Builds the model. Repair times must be integers (callers round and re-score
// externally produced schedules with the true times); horizon defaults to the
// total repair time and must be at least every single repair time.
IlpModel build_ilp(const Network& net, int crews, std::optional<int> horizon = std::nullopt);

// Deterministic LP-format text: identical inputs give identical bytes.
std::string export_model(const IlpModel& model);

struct ExactResult {
  double harm = 0.0;
  Schedule schedule;
  std::uint64_t explored = 0;  // schedules evaluated
};

// Exhaustive optimum over every ordered assignment of jobs to crews (packed
// back-to-back; with a regular objective an optimal schedule is non-delay, so
// nothing is lost). First optimum in enumeration order is kept, which makes
// the result deterministic. Throws CapError when real jobs exceed `cap`.
ExactResult exact_enum(const PrecedenceForest& p, int crews, int cap = 8);

}  // namespace gridmend
