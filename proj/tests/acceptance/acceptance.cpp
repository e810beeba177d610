// Acceptance gate: one PASS/FAIL line per criterion.
//
//   fog_acceptance                 all criteria
//   fog_acceptance --criterion N   criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fog/cli/commands.hpp"
#include "fog/cli/output.hpp"
#include "fog/cli/presets.hpp"
#include "fog/common/random.hpp"
#include "fog/env/service_node.hpp"
#include "fog/harness/monte_carlo.hpp"
#include "fog/harness/runner.hpp"
#include "fog/policies/deb.hpp"
#include "fog/policies/estimator.hpp"
#include "fog/policies/exponential_weights.hpp"

namespace {

using namespace fog;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) { return cli::format_number(v); }

policies::PolicySpec spec_of(policies::PolicyKind kind) {
  policies::PolicySpec p;
  p.kind = kind;
  return p;
}

harness::MonteCarloResult run_preset(const std::string& name,
                                     std::optional<policies::PolicyKind> kind = std::nullopt,
                                     std::function<void(const harness::RunMetrics&)> observe = {}) {
  auto s = cli::preset(name);
  if (kind) s.policy = spec_of(*kind);
  harness::MonteCarloOptions o;
  o.on_run = std::move(observe);
  return harness::monte_carlo(s, o);
}

// 1. Sub-linear regret.
Outcome regret_shrinks() {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_preset("single_stationary");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto& mean = r.agents[0].regret.mean();
  const double t = static_cast<double>(mean.size());
  const std::size_t tenth = mean.size() / 10;
  const double late = mean.back() / t;
  const double early = mean[tenth - 1] / static_cast<double>(tenth);
  const bool pass = late <= 0.6 * early && seconds <= 120.0;
  return {pass, "regret(T)/T=" + num(late) + " regret(T/10)/(T/10)=" + num(early) +
                    " ratio=" + num(late / early) + " (<= 0.6) runtime=" + num(seconds) +
                    "s (<= 120)"};
}

// 2. FN 1 modal over the final third.
Outcome best_arm_identified() {
  const auto r = run_preset("single_stationary");
  std::size_t hits = 0;
  for (const auto& s : r.summaries) hits += s.modal_final_third[0] == 0;
  return {hits >= 90, "FN1 modal in final T/3 for " + std::to_string(hits) + "/" +
                          std::to_string(r.summaries.size()) + " runs (>= 90)"};
}

// 3. DEB latency vs DUCB and BLOT.
Outcome baseline_ordering() {
  using policies::PolicyKind;
  const double deb = run_preset("single_stationary", PolicyKind::kDeb).summary.final_latency_mean;
  const double ducb = run_preset("single_stationary", PolicyKind::kDucb).summary.final_latency_mean;
  const double blot = run_preset("single_stationary", PolicyKind::kBlot).summary.final_latency_mean;
  return {deb <= ducb && deb <= blot, "final windowed latency run-mean: deb=" + num(deb) +
                                          " ducb=" + num(ducb) + " blot=" + num(blot)};
}

// 4. Recovery after the arrival switch.
Outcome dynamic_recovery() {
  const auto s = cli::preset("single_dynamic");
  const Slot t = s.horizon;
  std::size_t hits = 0, runs = 0;
  run_preset("single_dynamic", std::nullopt, [&](const harness::RunMetrics& m) {
    hits += m.agents[0].modal_arm(t - t / 4 + 1, t + 1) == 1;
    ++runs;
  });
  return {hits >= 80, "FN2 modal in final T/4 for " + std::to_string(hits) + "/" +
                          std::to_string(runs) + " runs (>= 80)"};
}

// 5. DEB at minimum delay equals EXP3-IX.
Outcome no_delay_reduction() {
  std::size_t identical = 0;
  std::string detail;
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    auto s = cli::preset("single_stationary");
    s.horizon = 10000;
    s.seed = seed;
    s.delay.force_min_delay = true;
    s.delay.timeouts = false;
    s.policy = spec_of(policies::PolicyKind::kDeb);
    const auto deb = harness::run_single_agent(s, 0);
    s.policy = spec_of(policies::PolicyKind::kExp3Ix);
    const auto ix = harness::run_single_agent(s, 0);
    const bool same = deb.agents[0].arms == ix.agents[0].arms;
    identical += same;
    detail += " seed " + std::to_string(seed) + (same ? " identical" : " differs");
  }
  return {identical == 3, "T=10000," + detail};
}

// 6. Estimator mean and bound.
Outcome estimator_law() {
  const double p = 0.25, l = 0.5, beta = 0.05;
  const int draws = 1000000;
  Rng rng = derive_stream(2024, 0, StreamId::kPolicy);
  const double cap = std::min(l / p, 1.0 / beta);
  double sum = 0.0;
  std::size_t violations = 0;
  for (int i = 0; i < draws; ++i) {
    const bool chosen = uniform01(rng) < p;
    const double e = policies::estimate_loss(l, p, beta, chosen);
    violations += e > cap;
    sum += e;
  }
  const double mean = sum / draws;
  const double expected = p * l / (p + beta * l);
  const double err = std::abs(mean - expected);
  return {err <= 1e-2 && violations == 0,
          "mean=" + num(mean) + " closed form=" + num(expected) + " |diff|=" + num(err) +
              " (<= 0.01) bound violations=" + std::to_string(violations)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli_call(std::vector<std::string> args) {
  args.insert(args.begin(), "fogsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

// 7. Simplex invariant and worker-count determinism.
Outcome invariants() {
  // Adversary: push the current favourite down hard, occasionally hit every arm.
  const std::size_t arms = 8;
  policies::ExponentialWeights w(arms);
  Rng rng = derive_stream(77, 0, StreamId::kPolicy);
  std::vector<double> est(arms);
  double worst = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const auto p = w.probabilities();
    const auto lead = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    std::fill(est.begin(), est.end(), 0.0);
    switch (i % 4) {
      case 0: est[lead] = 1.0 / std::max(p[lead], 1e-3); break;
      case 1: est[uniform_index(rng, arms)] = 400.0; break;
      case 2: for (auto& e : est) e = 100.0 * uniform01(rng); break;
      default: est[(lead + 1) % arms] = 1e-12; break;
    }
    w.apply(est, 0.5 + uniform01(rng));
    double total = 0.0;
    for (double v : w.probabilities()) total += v;
    worst = std::max(worst, std::abs(total - 1.0));
  }

  const fs::path root = fs::temp_directory_path() / "fog_acceptance_determinism";
  fs::remove_all(root);
  std::size_t files = 0, mismatched = 0;
  int failures = 0;
  for (const std::string name : {"single_dynamic", "ne_two_agent", "matching_pennies"}) {
    for (const std::string workers : {"1", "4"}) {
      failures += cli_call({"run", "--scenario", name, "--runs", "6", "--seed", "5", "--horizon",
                            "3000", "--workers", workers, "--out",
                            (root / name / workers).string()}) != cli::kExitOk;
    }
    for (const auto& f : fs::directory_iterator(root / name / "1")) {
      ++files;
      mismatched += slurp(f.path()) != slurp(root / name / "4" / f.path().filename());
    }
  }
  fs::remove_all(root);
  const bool pass = worst <= 1e-9 && failures == 0 && mismatched == 0 && files > 0;
  return {pass, "max |sum p - 1| over 1e6 updates=" + num(worst) + " (<= 1e-9); workers 1 vs 4: " +
                    std::to_string(files - mismatched) + "/" + std::to_string(files) +
                    " files byte-identical"};
}

env::ServiceNode mm1(std::uint64_t seed, std::uint64_t trial) {
  env::ServiceRateModel model;
  model.stddev = 0.0;
  model.mode = env::ServiceRateMode::kPerRun;
  return env::ServiceNode(0, 5.0, 6.0, model, derive_stream(seed, trial, StreamId::kQueueEvents),
                          derive_stream(seed, trial, StreamId::kServiceRate));
}

// 8. M/M/1 occupancy and conditional sojourn.
Outcome queue_fidelity() {
  // 2 * lambda * horizon = 2e6 expected arrivals plus departures.
  const double horizon = 200000.0, dt = 0.05;
  auto node = mm1(8, 0);
  double area = 0.0;
  std::size_t samples = 0;
  for (double t = dt; t <= horizon + 1e-9; t += dt) {
    node.advance(t);
    area += static_cast<double>(node.queue_length());
    ++samples;
  }
  const double l = area / static_cast<double>(samples);
  const double l_err = std::abs(l - 5.0) / 5.0;

  const std::size_t preload = 4;
  const double work = 0.2 * 5.0;  // k * b
  const int trials = 100000;
  double sojourn = 0.0;
  for (int i = 0; i < trials; ++i) {
    auto fresh = mm1(9, static_cast<std::uint64_t>(i));
    fresh.preload(preload);
    sojourn += fresh.execute(work);
  }
  sojourn /= trials;
  const double expected = (static_cast<double>(preload) + work) / 6.0;
  const double s_err = std::abs(sojourn - expected) / expected;
  return {l_err <= 0.15 && s_err <= 0.05,
          "time-average L=" + num(l) + " (5, rel err " + num(l_err) + " <= 0.15); sojourn=" +
              num(sojourn) + " vs (Q+kb)/mu=" + num(expected) + " (rel err " + num(s_err) +
              " <= 0.05)"};
}

// 9. Equilibrium convergence.
Outcome ne_convergence() {
  double mass = 0.0;
  std::size_t runs = 0;
  run_preset("ne_two_agent", std::nullopt, [&](const harness::RunMetrics& m) {
    const auto& a = m.agents[0].arms;
    const auto& b = m.agents[1].arms;
    const std::size_t begin = a.size() - a.size() / 3;
    std::size_t hits = 0;
    for (std::size_t i = begin; i < a.size(); ++i) {
      hits += (a[i] == 0 && b[i] == 1) || (a[i] == 1 && b[i] == 0);
    }
    mass += static_cast<double>(hits) / static_cast<double>(a.size() - begin);
    ++runs;
  });
  mass /= static_cast<double>(runs);

  std::vector<double> gaps;
  std::size_t games = 0;
  run_preset("matching_pennies", std::nullopt, [&](const harness::RunMetrics& m) {
    gaps.resize(m.ne_checkpoints.size(), 0.0);
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      gaps[i] += std::max(m.ne_checkpoints[i].row_gap, m.ne_checkpoints[i].column_gap);
    }
    ++games;
  });
  for (auto& g : gaps) g /= static_cast<double>(games);
  const double first = gaps.front(), last = gaps.back();
  const bool pass = mass >= 0.8 && last <= 0.05 && last <= first;
  return {pass, "ne_two_agent final-third mass=" + num(mass) + " (>= 0.8); matching_pennies mean gap " +
                    "T/3=" + num(first) + " T=" + num(last) + " (<= 0.05 and <= T/3 value)"};
}

// 10. Step-size rule against the scripted oracle.
struct Case {
  std::size_t k;
  Slot t;
  double d_hat;
  double delta;
  double eta;
};

constexpr Case kCases[] = {
#include "oracles/theorem1_cases.inc"
};

Outcome step_size_rule() {
  std::size_t exact_half = 0;
  double worst = 0.0;
  for (const auto& c : kCases) {
    const auto s = policies::theorem1_params(c.k, c.t, c.d_hat, c.delta);
    exact_half += s.beta == s.eta / 2.0;
    worst = std::max(worst, std::abs(s.eta - c.eta));
  }
  const std::size_t n = std::size(kCases);
  return {n == 20 && exact_half == n && worst <= 1e-12,
          std::to_string(n) + " cases; beta == eta/2 exactly in " + std::to_string(exact_half) +
              "; max |eta - oracle|=" + num(worst) + " (<= 1e-12)"};
}

const std::map<int, std::function<Outcome()>> kCriteria = {
    {1, regret_shrinks},   {2, best_arm_identified}, {3, baseline_ordering},
    {4, dynamic_recovery}, {5, no_delay_reduction},  {6, estimator_law},
    {7, invariants},       {8, queue_fidelity},      {9, ne_convergence},
    {10, step_size_rule},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: fog_acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) {
    for (const auto& [n, _] : kCriteria) selected.push_back(n);
  }
  int failed = 0;
  for (int n : selected) {
    const auto it = kCriteria.find(n);
    if (it == kCriteria.end()) {
      std::cerr << "unknown criterion " << n << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
