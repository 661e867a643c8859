#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridmend/schedule.hpp"

namespace gridmend {

enum class Policy {
  kCa,        // optimal single-crew sequence, list-scheduled onto m crews
  kDispatch,  // online rho dispatch (same schedule as kCa)
  kFe,        // heaviest restored weight first
  kEei,       // largest restored weight per repair hour first
  kLp,        // LP-relaxation midpoints, list-scheduled
  kEnum,      // exhaustive optimum (small instances only)
};

std::optional<Policy> parse_policy(std::string_view name);  // "ca", "dispatch", ...
std::string policy_name(Policy p);
std::vector<Policy> parse_policy_list(std::string_view csv);  // throws InputError

struct PolicyOptions {
  int enum_cap = 8;
  double lp_tol = 1e-6;
};

Schedule run_policy(const PrecedenceForest& p, Policy policy, int crews,
                    const PolicyOptions& opts = {});

}  // namespace gridmend
