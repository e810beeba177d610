#include "fog/harness/matrix_game.hpp"

#include <array>
#include <deque>

#include "fog/common/errors.hpp"
#include "fog/common/random.hpp"
#include "fog/delay/feedback.hpp"
#include "fog/game/equilibrium.hpp"
#include "fog/harness/regret.hpp"

namespace fog::harness {

RunMetrics run_matrix_game(const ScenarioConfig& scenario, std::size_t run) {
  return run_matrix_game(scenario, run, default_policy_factory(scenario));
}

namespace {

std::vector<double> one_hot(std::size_t n, Arm arm) {
  std::vector<double> v(n, 0.0);
  v[arm] = 1.0;
  return v;
}

}  // namespace

RunMetrics run_matrix_game(const ScenarioConfig& scenario, std::size_t run,
                           const PolicyFactory& factory) {
  scenario.validate();
  if (scenario.mode != ScenarioMode::kMatrixGame) {
    throw ConfigError("scenario '" + scenario.name + "' is not a matrix game");
  }
  const game::GameMatrix u(scenario.matrix);
  const std::size_t k = u.size();
  const auto context = scenario.policy_context();
  const Slot horizon = scenario.horizon;
  const std::array<Slot, 3> checkpoints{horizon / 3, 2 * horizon / 3, horizon};

  struct Player {
    std::unique_ptr<policies::Policy> policy;
    Rng rng;
    Rng delay_rng;
    delay::FeedbackBuffer buffer;
    RegretTracker regret;
    game::ErgodicAverager average;
    AgentSeries series;
    std::deque<double> window;
    double window_sum = 0.0;
  };
  std::vector<Player> players;
  for (std::size_t a = 0; a < 2; ++a) {
    players.push_back({factory(a, context), derive_stream(scenario.seed, run, StreamId::kPolicy, a),
                       derive_stream(scenario.seed, run, StreamId::kDelay, a),
                       delay::FeedbackBuffer(scenario.delay), RegretTracker(k),
                       game::ErgodicAverager(k), AgentSeries{}, {}, 0.0});
    if (!players.back().policy || players.back().policy->num_arms() != k) {
      throw ConfigError("policy factory returned a policy with the wrong arm count");
    }
    players.back().series.selections.assign(k, 0);
  }

  RunMetrics metrics;
  metrics.run = run;
  const auto window = static_cast<std::size_t>(scenario.window);
  const auto d_max = static_cast<std::uint64_t>(scenario.delay.d_max);
  TaskId next_task = 1;
  std::vector<double> row_costs(k), column_costs(k);

  for (Slot t = 1; t <= horizon; ++t) {
    for (auto& p : players) {
      auto feedback = p.buffer.collect(t);
      if (!feedback.empty()) p.policy->ingest(feedback);
    }

    std::array<Arm, 2> choice{};
    std::array<std::vector<double>, 2> strategy;
    std::array<TaskId, 2> ids{};
    for (std::size_t a = 0; a < 2; ++a) {
      auto& p = players[a];
      strategy[a] = p.policy->distribution();
      choice[a] = p.policy->select_arm(p.rng);
      ids[a] = next_task++;
      p.policy->on_dispatch(ids[a], choice[a]);
      if (strategy[a].empty()) strategy[a] = one_hot(k, choice[a]);
      p.average.add(strategy[a]);
    }

    for (std::size_t m = 0; m < k; ++m) {
      row_costs[m] = game::row_value(u, m, strategy[1]);
      column_costs[m] = 1.0 - game::column_value(u, strategy[0], m);
    }

    for (std::size_t a = 0; a < 2; ++a) {
      auto& p = players[a];
      const auto& costs = a == 0 ? row_costs : column_costs;
      const double loss = costs[choice[a]];
      const auto d = static_cast<Slot>(1 + uniform_index(p.delay_rng, d_max));

      delay::FeedbackRecord record;
      record.task = ids[a];
      record.origin = ids[a];
      record.agent = a;
      record.dispatch_slot = t;
      record.arm = choice[a];
      record.loss = loss;
      record.delay = d;
      record.latency = loss;
      record.delivery = t + d;
      if (p.policy->wants_immediate_feedback()) {
        p.policy->ingest({t, {record}});
      } else {
        p.buffer.push(record);
      }

      auto& s = p.series;
      ++s.decisions;
      ++s.selections[choice[a]];
      s.total_delay += static_cast<double>(d);
      s.arms.push_back(static_cast<std::uint32_t>(choice[a]));
      s.losses.push_back(loss);
      s.latencies.push_back(loss);
      p.window.push_back(loss);
      p.window_sum += loss;
      if (p.window.size() > window) {
        p.window_sum -= p.window.front();
        p.window.pop_front();
      }
      s.window_latency.push_back(p.window_sum / static_cast<double>(p.window.size()));
      s.cum_regret.push_back(p.regret.add(t, costs, choice[a]));
    }

    for (Slot c : checkpoints) {
      if (c != t || c < 1) continue;
      NeCheckpoint cp;
      cp.slot = t;
      cp.row_average = players[0].average.mean();
      cp.column_average = players[1].average.mean();
      const auto gap = game::epsilon_ne_gap(u, cp.row_average, cp.column_average);
      cp.row_gap = gap.row;
      cp.column_gap = gap.column;
      metrics.ne_checkpoints.push_back(std::move(cp));
      break;
    }
  }

  for (auto& p : players) {
    p.series.comparator_arm = p.regret.best_arm();
    metrics.agents.push_back(std::move(p.series));
  }
  return metrics;
}

}  // namespace fog::harness
