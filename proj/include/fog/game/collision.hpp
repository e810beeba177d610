#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fog/common/random.hpp"
#include "fog/common/types.hpp"
#include "fog/env/environment.hpp"

namespace fog::game {

enum class CollisionModel {
  kWinnerTakesAll,  // one uniformly chosen task per arm is served, the rest dropped
  kRandomOrder,     // every task is queued, colliding ones in a random order
};

std::string_view to_string(CollisionModel model);
CollisionModel parse_collision_model(std::string_view name);

struct OffloadRequest {
  std::size_t agent = 0;
  Arm arm = 0;
};

struct OffloadOutcome {
  bool served = true;
  // Realized dispatch + sojourn; +inf when the task was dropped.
  double latency = 0.0;
};

// Resolves one slot's simultaneous offloads. Requests to distinct arms are
// executed in request order; requests sharing an arm form a colliding group
// that the model resolves. Outcomes are index-aligned with `requests`.
std::vector<OffloadOutcome> resolve_collisions(std::span<const OffloadRequest> requests,
                                               CollisionModel model, env::Environment& env,
                                               double dispatch_time, Rng& rng);

}  // namespace fog::game
