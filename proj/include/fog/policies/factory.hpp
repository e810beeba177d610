#pragma once

#include <memory>

#include "fog/policies/deb.hpp"
#include "fog/policies/policy.hpp"

namespace fog::policies {

// Builds any policy kind behind the common interface. DEB and EXP3-IX take
// their step sizes from theorem1_params unless eta/beta are given explicitly;
// with a single arm the rule is evaluated at K = 2 (the arm choice is forced).
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const PolicyContext& context);

// Step sizes DEB/EXP3-IX would use for this spec and context.
StepSizes resolve_step_sizes(const PolicySpec& spec, const PolicyContext& context);

}  // namespace fog::policies
