#include "gridmend/policies.hpp"

#include <sstream>

#include "gridmend/errors.hpp"
#include "gridmend/ilp.hpp"
#include "gridmend/lp_relax.hpp"
#include "gridmend/multi_crew.hpp"

namespace gridmend {

std::optional<Policy> parse_policy(std::string_view name) {
  if (name == "ca") return Policy::kCa;
  if (name == "dispatch") return Policy::kDispatch;
  if (name == "fe") return Policy::kFe;
  if (name == "eei") return Policy::kEei;
  if (name == "lp") return Policy::kLp;
  if (name == "enum") return Policy::kEnum;
  return std::nullopt;
}

std::string policy_name(Policy p) {
  switch (p) {
    case Policy::kCa: return "ca";
    case Policy::kDispatch: return "dispatch";
    case Policy::kFe: return "fe";
    case Policy::kEei: return "eei";
    case Policy::kLp: return "lp";
    case Policy::kEnum: return "enum";
  }
  return "?";
}

std::vector<Policy> parse_policy_list(std::string_view csv) {
  std::vector<Policy> out;
  std::istringstream in{std::string(csv)};
  std::string tok;
  while (std::getline(in, tok, ',')) {
    auto p = parse_policy(tok);
    if (!p) throw InputError("unknown policy '" + tok + "'");
    out.push_back(*p);
  }
  if (out.empty()) throw InputError("empty policy list");
  return out;
}

Schedule run_policy(const PrecedenceForest& p, Policy policy, int crews,
                    const PolicyOptions& opts) {
  switch (policy) {
    case Policy::kCa:
      return convert(optimal_single_sequence(p), p, crews);
    case Policy::kDispatch:
      return dispatch_multi(p, rho_factors(p), crews);
    case Policy::kFe:
      return baseline_fe(p, crews);
    case Policy::kEei:
      return baseline_eei(p, crews);
    case Policy::kLp:
      return lp_list_schedule(p, crews, opts.lp_tol);
    case Policy::kEnum:
      return exact_enum(p, crews, opts.enum_cap).schedule;
  }
  throw std::logic_error("unhandled policy");
}

}  // namespace gridmend
