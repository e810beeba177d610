#include "fog/cli/presets.hpp"

#include "fog/common/errors.hpp"

namespace fog::cli {

namespace {

using harness::ScenarioConfig;

ScenarioConfig base(std::string name) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.arms = 6;
  c.horizon = 30000;
  c.arrivals.kind = env::ArrivalRuleKind::kLinear;
  c.arrivals.base = 4.5;
  c.arrivals.step = 0.5;
  c.service.mean = 6.0;
  c.service.stddev = 1.0;
  c.task.size = 1.0;
  c.task.compute_factor = 0.2;
  c.t_max = 5.0;
  c.delay.d_max = 3;
  c.runs = 100;
  c.seed = 1;
  return c;
}

ScenarioConfig scalability(std::size_t k) {
  auto c = base("scalability_k" + std::to_string(k));
  c.arms = k;
  c.arrivals.kind = env::ArrivalRuleKind::kBestPlusUniform;
  c.arrivals.best_rate = 5.0;
  c.arrivals.low = 6.0;
  c.arrivals.high = 10.0;
  c.runs = 10;
  return c;
}

struct Entry {
  const char* name;
  const char* description;
};

constexpr Entry kEntries[] = {
    {"single_stationary", "one task FN, K=6, lambda_i = 4.5 + 0.5 i, T=30000"},
    {"single_dynamic", "single_stationary with FN 1 slowing to lambda = 7 at T/2"},
    {"scalability_k20", "K=20, FN 1 at lambda = 5, the rest uniform on [6, 10]"},
    {"scalability_k100", "K=100, FN 1 at lambda = 5, the rest uniform on [6, 10]"},
    {"scalability_k500", "K=500, FN 1 at lambda = 5, the rest uniform on [6, 10]"},
    {"scalability_k1000", "K=1000, FN 1 at lambda = 5, the rest uniform on [6, 10]"},
    {"multi_agent_v4k10", "V=4 task FNs, K=10, lambda_i = 4 + 0.4 i, random-order collisions"},
    {"ne_two_agent", "V=2, K=6, lambda = [4,4,5,6,7,8], winner-takes-all collisions"},
    {"matching_pennies", "two DEB agents on the 2x2 matching-pennies cost matrix"},
};

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kEntries) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

std::optional<ScenarioConfig> find_preset(std::string_view name) {
  if (name == "single_stationary") return base("single_stationary");
  if (name == "single_dynamic") {
    auto c = base("single_dynamic");
    c.arrival_switch = harness::ArrivalSwitch{c.horizon / 2, 0, 7.0};
    return c;
  }
  if (name == "scalability_k20") return scalability(20);
  if (name == "scalability_k100") return scalability(100);
  if (name == "scalability_k500") return scalability(500);
  if (name == "scalability_k1000") return scalability(1000);
  if (name == "multi_agent_v4k10") {
    auto c = base("multi_agent_v4k10");
    c.agents = 4;
    c.arms = 10;
    c.arrivals.base = 4.0;
    c.arrivals.step = 0.4;
    c.collision = game::CollisionModel::kRandomOrder;
    return c;
  }
  if (name == "ne_two_agent") {
    auto c = base("ne_two_agent");
    c.agents = 2;
    c.arrivals.kind = env::ArrivalRuleKind::kList;
    c.arrivals.rates = {4, 4, 5, 6, 7, 8};
    c.collision = game::CollisionModel::kWinnerTakesAll;
    c.runs = 50;
    return c;
  }
  if (name == "matching_pennies") {
    auto c = base("matching_pennies");
    c.mode = harness::ScenarioMode::kMatrixGame;
    c.agents = 2;
    c.arms = 2;
    c.matrix = {{1.0, 0.0}, {0.0, 1.0}};
    c.runs = 50;
    return c;
  }
  return std::nullopt;
}

ScenarioConfig preset(std::string_view name) {
  if (auto c = find_preset(name)) return *c;
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  throw UsageError("unknown scenario '" + std::string(name) + "' (presets: " + names + ")");
}

std::string preset_description(std::string_view name) {
  for (const auto& e : kEntries) {
    if (name == e.name) return e.description;
  }
  return {};
}

}  // namespace fog::cli
