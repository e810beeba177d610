#include "fog/harness/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fog/common/errors.hpp"
#include "fog/harness/matrix_game.hpp"

namespace fog::harness {

void SeriesAccumulator::add(const std::vector<double>& series) {
  if (count_ == 0) {
    mean_.assign(series.size(), 0.0);
    m2_.assign(series.size(), 0.0);
  } else if (series.size() != mean_.size()) {
    throw UsageError("SeriesAccumulator: series lengths differ");
  }
  ++count_;
  const auto n = static_cast<double>(count_);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double delta = series[i] - mean_[i];
    mean_[i] += delta / n;
    m2_[i] += delta * (series[i] - mean_[i]);
  }
}

std::vector<double> SeriesAccumulator::standard_error() const {
  std::vector<double> se(mean_.size(), 0.0);
  if (count_ < 2) return se;
  const auto n = static_cast<double>(count_);
  for (std::size_t i = 0; i < se.size(); ++i) se[i] = std::sqrt(m2_[i] / (n - 1.0) / n);
  return se;
}

RunSummary summarize(const RunMetrics& metrics, Slot horizon) {
  RunSummary s;
  s.run = metrics.run;
  const Slot begin = horizon - horizon / 3 + 1;
  const Slot end = horizon + 1;
  const auto agents = static_cast<double>(metrics.agents.size());
  for (const auto& a : metrics.agents) {
    s.final_regret += a.final_regret();
    s.final_latency += a.final_window_latency() / agents;
    s.best_arm_frequency += a.arm_frequency(a.comparator_arm, begin, end) / agents;
    s.modal_final_third.push_back(a.modal_arm(begin, end));
  }
  return s;
}

namespace {

RunMetrics execute(const ScenarioConfig& scenario, std::size_t run,
                   const std::optional<PolicyFactory>& factory) {
  if (!factory) return run_scenario(scenario, run);
  if (scenario.mode == ScenarioMode::kMatrixGame) return run_matrix_game(scenario, run, *factory);
  return scenario.agents == 1 ? run_single_agent(scenario, run, *factory)
                              : run_multi_agent(scenario, run, *factory);
}

}  // namespace

MonteCarloResult monte_carlo(const ScenarioConfig& scenario, const MonteCarloOptions& options) {
  scenario.validate();
  const std::size_t runs = scenario.runs;
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, runs));

  MonteCarloResult result;
  std::vector<std::optional<RunMetrics>> pending(runs);
  std::size_t next_fold = 0;
  std::mutex mutex;
  std::atomic<std::size_t> next_run{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto fold = [&](RunMetrics& m) {
    if (result.agents.empty()) result.agents.resize(m.agents.size());
    for (std::size_t a = 0; a < m.agents.size(); ++a) {
      auto& agg = result.agents[a];
      agg.regret.add(m.agents[a].cum_regret);
      agg.window_latency.add(m.agents[a].window_latency);
      const auto& sel = m.agents[a].selections;
      if (agg.selection_mean.empty()) agg.selection_mean.assign(sel.size(), 0.0);
      const auto n = static_cast<double>(agg.regret.count());
      for (std::size_t j = 0; j < sel.size(); ++j) {
        agg.selection_mean[j] += (static_cast<double>(sel[j]) - agg.selection_mean[j]) / n;
      }
    }
    result.comparator = m.comparator;
    result.summaries.push_back(summarize(m, scenario.horizon));
    if (options.on_run) options.on_run(m);
    if (options.keep_runs) result.runs.push_back(std::move(m));
  };

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next_run.fetch_add(1);
      if (i >= runs) return;
      try {
        RunMetrics m = execute(scenario, i, options.factory);
        std::lock_guard lock(mutex);
        pending[i] = std::move(m);
        while (next_fold < runs && pending[next_fold]) {
          fold(*pending[next_fold]);
          pending[next_fold].reset();
          ++next_fold;
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SeriesAccumulator regret;
  double latency = 0.0, best = 0.0;
  for (const auto& s : result.summaries) {
    regret.add({s.final_regret});
    latency += s.final_latency;
    best += s.best_arm_frequency;
  }
  const auto n = static_cast<double>(result.summaries.size());
  result.summary.runs = result.summaries.size();
  result.summary.final_regret_mean = regret.mean().front();
  result.summary.final_regret_se = regret.standard_error().front();
  result.summary.final_latency_mean = latency / n;
  result.summary.best_arm_frequency = best / n;
  return result;
}

}  // namespace fog::harness
