#include "fog/harness/runner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <span>

#include "fog/common/errors.hpp"
#include "fog/common/random.hpp"
#include "fog/delay/feedback.hpp"
#include "fog/env/environment.hpp"
#include "fog/game/collision.hpp"
#include "fog/harness/matrix_game.hpp"
#include "fog/harness/regret.hpp"
#include "fog/policies/factory.hpp"

namespace fog::harness {

PolicyFactory default_policy_factory(const ScenarioConfig& scenario) {
  return [scenario](std::size_t agent, const policies::PolicyContext& context) {
    return policies::make_policy(scenario.policy_for(agent), context);
  };
}

Arm AgentSeries::modal_arm(Slot begin, Slot end) const {
  std::vector<std::size_t> counts(selections.size(), 0);
  const auto first = static_cast<std::size_t>(std::max<Slot>(begin, 1) - 1);
  const auto last = std::min(static_cast<std::size_t>(std::max<Slot>(end, 1) - 1), arms.size());
  for (std::size_t i = first; i < last; ++i) ++counts.at(arms[i]);
  return static_cast<Arm>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double AgentSeries::arm_frequency(Arm arm, Slot begin, Slot end) const {
  const auto first = static_cast<std::size_t>(std::max<Slot>(begin, 1) - 1);
  const auto last = std::min(static_cast<std::size_t>(std::max<Slot>(end, 1) - 1), arms.size());
  if (last <= first) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = first; i < last; ++i) hits += arms[i] == arm;
  return static_cast<double>(hits) / static_cast<double>(last - first);
}

double RunMetrics::total_regret() const {
  double total = 0.0;
  for (const auto& a : agents) total += a.final_regret();
  return total;
}

std::vector<double> regret_from_counterfactuals(
    const std::vector<std::vector<double>>& counterfactuals, const std::vector<std::uint32_t>& arms,
    Slot phase_break) {
  if (counterfactuals.size() != arms.size()) {
    throw UsageError("regret_from_counterfactuals: series lengths differ");
  }
  std::vector<double> out;
  out.reserve(arms.size());
  if (arms.empty()) return out;
  RegretTracker tracker(counterfactuals.front().size(), phase_break);
  for (std::size_t i = 0; i < arms.size(); ++i) {
    out.push_back(tracker.add(static_cast<Slot>(i + 1), counterfactuals[i], arms[i]));
  }
  return out;
}

namespace {

struct AgentState {
  std::unique_ptr<policies::Policy> policy;
  Rng rng;
  delay::FeedbackBuffer buffer;
  RegretTracker regret;
  AgentSeries series;
  std::vector<TaskId> reoffload;
  std::deque<double> window;
  double window_sum = 0.0;
};

struct Decision {
  std::size_t agent;
  delay::Dispatch dispatch;
  bool fresh;
  double latency = 0.0;
};

RunMetrics run_offload(const ScenarioConfig& scenario, std::size_t run,
                       const PolicyFactory& factory) {
  scenario.validate();
  if (scenario.mode != ScenarioMode::kOffload) {
    throw ConfigError("scenario '" + scenario.name + "' is not an offloading scenario");
  }

  const env::EnvConfig env_config = scenario.to_env_config();
  Rng topo_rng = derive_stream(scenario.seed, run, StreamId::kTopology);
  env::Environment env(env_config, env::build_topology(env_config, topo_rng), scenario.seed, run);
  Rng collision_rng = derive_stream(scenario.seed, run, StreamId::kCollision);

  const auto context = scenario.policy_context();
  const Slot horizon = scenario.horizon;
  const Slot phase_break = scenario.arrival_switch ? scenario.arrival_switch->slot : 0;
  const auto arms = scenario.arms;

  std::vector<AgentState> agents;
  agents.reserve(scenario.agents);
  for (std::size_t a = 0; a < scenario.agents; ++a) {
    AgentState state{factory(a, context), derive_stream(scenario.seed, run, StreamId::kPolicy, a),
                     delay::FeedbackBuffer(scenario.delay), RegretTracker(arms, phase_break),
                     AgentSeries{}, {}, {}, 0.0};
    if (!state.policy || state.policy->num_arms() != arms) {
      throw ConfigError("policy factory returned a policy with the wrong arm count");
    }
    auto& s = state.series;
    const auto n = static_cast<std::size_t>(horizon);
    s.arms.reserve(n);
    s.losses.reserve(n);
    s.latencies.reserve(n);
    s.window_latency.reserve(n);
    s.cum_regret.reserve(n);
    s.selections.assign(arms, 0);
    agents.push_back(std::move(state));
  }

  RunMetrics metrics;
  metrics.run = run;
  metrics.comparator = phase_break > 0 ? "per_phase" : "fixed";

  const env::LossConfig loss_config{scenario.t_max};
  const auto window = static_cast<std::size_t>(scenario.window);
  TaskId next_task = 1;
  std::vector<game::OffloadRequest> requests;
  std::vector<Decision> decisions;
  std::vector<delay::FeedbackRecord> immediate;

  for (Slot t = 1; t <= horizon; ++t) {
    const double now = static_cast<double>(t - 1);
    env.advance_to(now);
    if (phase_break > 0 && t == phase_break) {
      env.set_arrival_rate(scenario.arrival_switch->arm, scenario.arrival_switch->rate);
    }

    for (auto& agent : agents) {
      auto feedback = agent.buffer.collect(t);
      if (!feedback.empty()) agent.policy->ingest(feedback);
      agent.reoffload = agent.buffer.reoffload_due(t);
    }

    const std::vector<double> cf = env.counterfactual_losses();

    requests.clear();
    decisions.clear();
    for (std::size_t a = 0; a < agents.size(); ++a) {
      auto& agent = agents[a];
      const Arm arm = agent.policy->select_arm(agent.rng);
      const TaskId id = next_task++;
      agent.policy->on_dispatch(id, arm);
      requests.push_back({a, arm});
      decisions.push_back({a, {id, id, a, t, arm}, true});
    }
    const auto outcomes = game::resolve_collisions(requests, scenario.collision, env, now,
                                                   collision_rng);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      decisions[i].latency = outcomes[i].latency;
      if (!outcomes[i].served) ++agents[i].series.dropped;
    }

    for (std::size_t a = 0; a < agents.size(); ++a) {
      auto& agent = agents[a];
      for (TaskId origin : agent.reoffload) {
        const Arm arm = agent.policy->select_arm(agent.rng);
        const TaskId id = next_task++;
        agent.policy->on_dispatch(id, arm);
        Decision d{a, {id, origin, a, t, arm}, false};
        d.latency = env.execute_offload(arm, now).total;
        decisions.push_back(d);
        ++agent.series.reoffloads;
      }
    }

    for (std::size_t a = 0; a < agents.size(); ++a) {
      auto& agent = agents[a];
      immediate.clear();
      for (const auto& d : decisions) {
        if (d.agent != a) continue;
        const auto record = delay::schedule_feedback(d.dispatch, d.latency, scenario.delay,
                                                     loss_config);
        auto& s = agent.series;
        ++s.decisions;
        ++s.selections[d.dispatch.arm];
        s.total_delay += static_cast<double>(record.delivery - record.dispatch_slot);
        if (record.timed_out) ++s.timeouts;
        if (agent.policy->wants_immediate_feedback()) {
          immediate.push_back(record);
        } else {
          agent.buffer.push(record);
        }
        if (!d.fresh) continue;

        const double latency = std::isfinite(d.latency) ? d.latency : scenario.t_max;
        s.arms.push_back(static_cast<std::uint32_t>(d.dispatch.arm));
        s.losses.push_back(record.loss);
        s.latencies.push_back(latency);
        agent.window.push_back(latency);
        agent.window_sum += latency;
        if (agent.window.size() > window) {
          agent.window_sum -= agent.window.front();
          agent.window.pop_front();
        }
        s.window_latency.push_back(agent.window_sum / static_cast<double>(agent.window.size()));
        s.cum_regret.push_back(agent.regret.add(t, cf, d.dispatch.arm));
      }
      if (!immediate.empty()) agent.policy->ingest({t, immediate});
    }

    if (scenario.store_counterfactuals) metrics.counterfactuals.push_back(cf);
  }

  for (auto& agent : agents) {
    agent.series.comparator_arm = agent.regret.best_arm();
    metrics.agents.push_back(std::move(agent.series));
  }
  metrics.state_hash = env.state_hash();
  return metrics;
}

}  // namespace

RunMetrics run_single_agent(const ScenarioConfig& scenario, std::size_t run) {
  return run_single_agent(scenario, run, default_policy_factory(scenario));
}

RunMetrics run_single_agent(const ScenarioConfig& scenario, std::size_t run,
                            const PolicyFactory& factory) {
  if (scenario.agents != 1) {
    throw ConfigError("run_single_agent needs V = 1, scenario has V = " +
                      std::to_string(scenario.agents));
  }
  return run_offload(scenario, run, factory);
}

RunMetrics run_multi_agent(const ScenarioConfig& scenario, std::size_t run) {
  return run_multi_agent(scenario, run, default_policy_factory(scenario));
}

RunMetrics run_multi_agent(const ScenarioConfig& scenario, std::size_t run,
                           const PolicyFactory& factory) {
  if (scenario.agents < 2) {
    throw ConfigError("run_multi_agent needs V >= 2, scenario has V = " +
                      std::to_string(scenario.agents));
  }
  return run_offload(scenario, run, factory);
}

RunMetrics run_scenario(const ScenarioConfig& scenario, std::size_t run) {
  if (scenario.mode == ScenarioMode::kMatrixGame) return run_matrix_game(scenario, run);
  return scenario.agents == 1 ? run_single_agent(scenario, run) : run_multi_agent(scenario, run);
}

}  // namespace fog::harness
