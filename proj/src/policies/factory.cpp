#include "fog/policies/factory.hpp"

#include <algorithm>
#include <array>

#include "fog/common/errors.hpp"
#include "fog/policies/deb.hpp"
#include "fog/policies/exp3.hpp"
#include "fog/policies/thompson.hpp"
#include "fog/policies/ucb.hpp"

namespace fog::policies {

namespace {

struct KindName {
  PolicyKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 7> kKinds{{
    {PolicyKind::kDeb, "deb"},
    {PolicyKind::kExp3, "exp3"},
    {PolicyKind::kExp3Ix, "exp3ix"},
    {PolicyKind::kQpmd, "qpmd"},
    {PolicyKind::kSdb, "sdb"},
    {PolicyKind::kDucb, "ducb"},
    {PolicyKind::kBlot, "blot"},
}};

}  // namespace

std::string_view to_string(PolicyKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::string_view to_string(SnapshotMode mode) {
  return mode == SnapshotMode::kDispatch ? "dispatch" : "delivery";
}

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& k : kKinds) out.emplace_back(k.name);
    return out;
  }();
  return names;
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  std::string valid;
  for (const auto& k : kKinds) {
    if (!valid.empty()) valid += ", ";
    valid += k.name;
  }
  throw ConfigError("unknown policy '" + std::string(name) + "' (valid: " + valid + ")");
}

SnapshotMode parse_snapshot_mode(std::string_view name) {
  if (name == "dispatch") return SnapshotMode::kDispatch;
  if (name == "delivery") return SnapshotMode::kDelivery;
  throw ConfigError("unknown probability snapshot '" + std::string(name) +
                    "' (valid: dispatch, delivery)");
}

StepSizes resolve_step_sizes(const PolicySpec& spec, const PolicyContext& context) {
  const double budget = spec.delay_budget.value_or(static_cast<double>(context.d_max) *
                                                   static_cast<double>(context.horizon) / 2.0);
  StepSizes steps = theorem1_params(std::max<std::size_t>(context.arms, 2), context.horizon,
                                    budget, spec.delta);
  if (spec.eta) {
    steps.eta = *spec.eta;
    steps.beta = spec.beta.value_or(*spec.eta / 2.0);
  } else if (spec.beta) {
    steps.beta = *spec.beta;
  }
  return steps;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const PolicyContext& context) {
  if (context.arms == 0) throw ConfigError("policy needs at least one arm");
  switch (spec.kind) {
    case PolicyKind::kDeb:
      return std::make_unique<Deb>(context.arms, resolve_step_sizes(spec, context), spec.snapshot);
    case PolicyKind::kExp3Ix:
      return std::make_unique<Exp3Ix>(context.arms, resolve_step_sizes(spec, context));
    case PolicyKind::kExp3:
      return std::make_unique<Exp3>(
          context.arms, spec.exp3_gamma.value_or(Exp3::default_gamma(context.arms, context.horizon)));
    case PolicyKind::kQpmd:
      return std::make_unique<Qpmd>(context.arms);
    case PolicyKind::kSdb:
      return std::make_unique<Sdb>(context.arms, spec.sdb_heuristic_weight);
    case PolicyKind::kDucb:
      return std::make_unique<Ducb>(context.arms, spec.ducb_discount, spec.ducb_exploration);
    case PolicyKind::kBlot:
      return std::make_unique<Blot>(context.arms, spec.blot_window, spec.blot_exploration);
  }
  throw ConfigError("unhandled policy kind");
}

}  // namespace fog::policies
