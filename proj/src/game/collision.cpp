#include "fog/game/collision.hpp"

#include <limits>
#include <map>
#include <string>

#include "fog/common/errors.hpp"

namespace fog::game {

std::string_view to_string(CollisionModel model) {
  return model == CollisionModel::kWinnerTakesAll ? "winner_takes_all" : "random_order";
}

CollisionModel parse_collision_model(std::string_view name) {
  if (name == "winner_takes_all") return CollisionModel::kWinnerTakesAll;
  if (name == "random_order") return CollisionModel::kRandomOrder;
  throw ConfigError("unknown collision model '" + std::string(name) +
                    "' (valid: winner_takes_all, random_order)");
}

std::vector<OffloadOutcome> resolve_collisions(std::span<const OffloadRequest> requests,
                                               CollisionModel model, env::Environment& env,
                                               double dispatch_time, Rng& rng) {
  std::vector<OffloadOutcome> out(requests.size());
  // Groups keyed by arm, in order of first appearance of each arm.
  std::map<Arm, std::vector<std::size_t>> groups;
  std::vector<Arm> order;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (requests[i].arm >= env.num_arms()) throw UsageError("resolve_collisions: arm out of range");
    auto [it, inserted] = groups.try_emplace(requests[i].arm);
    if (inserted) order.push_back(requests[i].arm);
    it->second.push_back(i);
  }

  for (Arm arm : order) {
    auto& members = groups[arm];
    if (members.size() == 1) {
      out[members[0]] = {true, env.execute_offload(arm, dispatch_time).total};
      continue;
    }
    if (model == CollisionModel::kWinnerTakesAll) {
      const auto winner = uniform_index(rng, members.size());
      for (std::size_t m = 0; m < members.size(); ++m) {
        if (m == winner) {
          out[members[m]] = {true, env.execute_offload(arm, dispatch_time).total};
        } else {
          out[members[m]] = {false, std::numeric_limits<double>::infinity()};
        }
      }
    } else {
      // Fisher-Yates on the queueing order.
      for (std::size_t m = members.size() - 1; m > 0; --m) {
        std::swap(members[m], members[uniform_index(rng, m + 1)]);
      }
      for (std::size_t idx : members) {
        out[idx] = {true, env.execute_offload(arm, dispatch_time).total};
      }
    }
  }
  return out;
}

}  // namespace fog::game
