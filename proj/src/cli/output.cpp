#include "fog/cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <span>

#include "fog/cli/scenario_json.hpp"
#include "fog/common/errors.hpp"
#include "fog/game/equilibrium.hpp"
#include "json.hpp"

namespace fog::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (const auto& h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(std::string_view text) {
  if (!first_) out_.put(',');
  out_.write(text.data(), static_cast<std::streamsize>(text.size()));
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_number(value)); }
CsvWriter& CsvWriter::field(std::uint64_t value) { return field(std::to_string(value)); }
CsvWriter& CsvWriter::field(std::int64_t value) { return field(std::to_string(value)); }

void CsvWriter::end_row() {
  out_.put('\n');
  first_ = true;
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw std::runtime_error("failed writing '" + path_.string() + "'");
}

void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  CsvWriter csv(path, {"policy", "runs", "final_regret_mean", "final_regret_se",
                       "final_latency_mean", "best_arm_frequency"});
  for (const auto& r : rows) {
    csv.field(r.policy)
        .field(static_cast<std::uint64_t>(r.summary.runs))
        .field(r.summary.final_regret_mean)
        .field(r.summary.final_regret_se)
        .field(r.summary.final_latency_mean)
        .field(r.summary.best_arm_frequency);
    csv.end_row();
  }
  csv.close();
}

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// [begin, end) slot windows (1-based): thirds of the horizon and the whole run.
std::vector<std::array<i64, 2>> joint_windows(i64 horizon) {
  const i64 a = horizon / 3, b = 2 * horizon / 3;
  return {{1, a + 1}, {a + 1, b + 1}, {b + 1, horizon + 1}, {1, horizon + 1}};
}

std::string policy_label(const harness::ScenarioConfig& s) {
  if (s.agent_policies.empty()) return std::string(policies::to_string(s.policy.kind));
  std::string label;
  for (const auto& p : s.agent_policies) {
    label += (label.empty() ? "" : "+") + std::string(policies::to_string(p.kind));
  }
  return label;
}

}  // namespace

BundleWriter::BundleWriter(std::filesystem::path dir, harness::ScenarioConfig scenario,
                           std::int64_t stride)
    : dir_(std::move(dir)), scenario_(std::move(scenario)), stride_(stride) {
  if (stride_ < 1) throw UsageError("stride must be at least 1");
  std::filesystem::create_directories(dir_);
  timeseries_ = std::make_unique<CsvWriter>(
      dir_ / "timeseries.csv", std::vector<std::string>{"run", "slot", "agent", "arm", "loss",
                                                        "cum_regret", "window_latency"});
  files_.push_back("timeseries.csv");
  if (scenario_.mode == harness::ScenarioMode::kMatrixGame) {
    ne_gaps_ = std::make_unique<CsvWriter>(
        dir_ / "ne_gaps.csv",
        std::vector<std::string>{"run", "slot", "row_gap", "column_gap", "max_gap"});
  }
  if (scenario_.agents >= 2) {
    const std::size_t pairs = scenario_.agents * (scenario_.agents - 1) / 2;
    joint_.assign(pairs, std::vector<std::vector<double>>(
                             4, std::vector<double>(scenario_.arms * scenario_.arms, 0.0)));
  }
  write_meta("running", "", nullptr);
}

BundleWriter::~BundleWriter() {
  if (!done_) {
    try {
      fail("interrupted");
    } catch (...) {
    }
  }
}

bool BundleWriter::keep_slot(std::int64_t slot) const {
  return slot % stride_ == 0 || slot == scenario_.horizon || slot == 1;
}

void BundleWriter::add_run(const harness::RunMetrics& m) {
  const auto run = static_cast<u64>(m.run);
  for (std::size_t a = 0; a < m.agents.size(); ++a) {
    const auto& s = m.agents[a];
    for (std::size_t i = 0; i < s.arms.size(); ++i) {
      const auto slot = static_cast<i64>(i + 1);
      if (!keep_slot(slot)) continue;
      timeseries_->field(run)
          .field(slot)
          .field(static_cast<u64>(a))
          .field(static_cast<u64>(s.arms[i]))
          .field(s.losses[i])
          .field(s.cum_regret[i])
          .field(s.window_latency[i]);
      timeseries_->end_row();
    }
  }
  if (ne_gaps_) {
    for (const auto& cp : m.ne_checkpoints) {
      ne_gaps_->field(run)
          .field(static_cast<i64>(cp.slot))
          .field(cp.row_gap)
          .field(cp.column_gap)
          .field(std::max(cp.row_gap, cp.column_gap));
      ne_gaps_->end_row();
    }
  }
  if (!joint_.empty()) {
    const auto windows = joint_windows(scenario_.horizon);
    std::size_t pair = 0;
    for (std::size_t a = 0; a < m.agents.size(); ++a) {
      for (std::size_t b = a + 1; b < m.agents.size(); ++b, ++pair) {
        const std::span<const std::uint32_t> ra(m.agents[a].arms), rb(m.agents[b].arms);
        std::vector<Arm> row(ra.begin(), ra.end()), col(rb.begin(), rb.end());
        for (std::size_t w = 0; w < windows.size(); ++w) {
          const auto freq = game::joint_frequency(row, col, static_cast<std::size_t>(windows[w][0] - 1),
                                                  static_cast<std::size_t>(windows[w][1] - 1),
                                                  scenario_.arms);
          for (std::size_t c = 0; c < freq.size(); ++c) joint_[pair][w][c] += freq[c];
        }
      }
    }
  }
  ++runs_seen_;
}

void BundleWriter::finish(const harness::MonteCarloResult& result) {
  timeseries_->close();
  if (ne_gaps_) {
    ne_gaps_->close();
    files_.push_back("ne_gaps.csv");
  }

  write_summary(dir_ / "summary.csv", {{policy_label(scenario_), result.summary}});
  files_.push_back("summary.csv");

  {
    CsvWriter csv(dir_ / "selections.csv", {"agent", "arm", "selections_mean", "share"});
    for (std::size_t a = 0; a < result.agents.size(); ++a) {
      const auto& sel = result.agents[a].selection_mean;
      double total = 0.0;
      for (double v : sel) total += v;
      for (std::size_t j = 0; j < sel.size(); ++j) {
        csv.field(static_cast<u64>(a)).field(static_cast<u64>(j)).field(sel[j]).field(
            total > 0.0 ? sel[j] / total : 0.0);
        csv.end_row();
      }
    }
    csv.close();
    files_.push_back("selections.csv");
  }

  if (!joint_.empty()) {
    CsvWriter csv(dir_ / "joint_frequency.csv",
                  {"window", "slot_begin", "slot_end", "row_agent", "col_agent", "row_arm",
                   "col_arm", "frequency"});
    const auto windows = joint_windows(scenario_.horizon);
    const char* names[] = {"first_third", "second_third", "final_third", "all"};
    const auto k = scenario_.arms;
    const auto runs = static_cast<double>(std::max<std::size_t>(runs_seen_, 1));
    for (std::size_t w = 0; w < windows.size(); ++w) {
      std::size_t pair = 0;
      for (std::size_t a = 0; a < scenario_.agents; ++a) {
        for (std::size_t b = a + 1; b < scenario_.agents; ++b, ++pair) {
          for (std::size_t c = 0; c < k * k; ++c) {
            csv.field(names[w])
                .field(windows[w][0])
                .field(windows[w][1] - 1)
                .field(static_cast<u64>(a))
                .field(static_cast<u64>(b))
                .field(static_cast<u64>(c / k))
                .field(static_cast<u64>(c % k))
                .field(joint_[pair][w][c] / runs);
            csv.end_row();
          }
        }
      }
    }
    csv.close();
    files_.push_back("joint_frequency.csv");
  }

  {
    CsvWriter csv(dir_ / "aggregate.csv", {"agent", "slot", "regret_mean", "regret_se",
                                          "regret_ratio", "window_latency_mean",
                                          "window_latency_se"});
    for (std::size_t a = 0; a < result.agents.size(); ++a) {
      const auto& agg = result.agents[a];
      const auto& rm = agg.regret.mean();
      const auto rse = agg.regret.standard_error();
      const auto& lm = agg.window_latency.mean();
      const auto lse = agg.window_latency.standard_error();
      for (std::size_t i = 0; i < rm.size(); ++i) {
        const auto slot = static_cast<i64>(i + 1);
        if (!keep_slot(slot)) continue;
        csv.field(static_cast<u64>(a))
            .field(slot)
            .field(rm[i])
            .field(rse[i])
            .field(rm[i] / static_cast<double>(slot))
            .field(lm[i])
            .field(lse[i]);
        csv.end_row();
      }
    }
    csv.close();
    files_.push_back("aggregate.csv");
  }

  write_meta("complete", "", &result);
  done_ = true;
}

void BundleWriter::fail(const std::string& message) {
  done_ = true;
  write_meta("partial", message, nullptr);
}

void BundleWriter::write_meta(const std::string& status, const std::string& error,
                              const harness::MonteCarloResult* result) {
  nlohmann::json meta;
  meta["schema_version"] = std::string(kSchemaVersion);
  meta["version"] = std::string(kToolVersion);
  meta["status"] = status;
  if (!error.empty()) meta["error"] = error;
  meta["scenario"] = scenario_to_json(scenario_);
  meta["seed"] = scenario_.seed;
  meta["runs"] = scenario_.runs;
  meta["stride"] = stride_;
  meta["policy"] = policy_label(scenario_);
  meta["comparator"] = scenario_.arrival_switch ? "per_phase" : "fixed";
  meta["arm_indexing"] = "0-based";
  meta["files"] = files_;
  if (result) {
    meta["runs_completed"] = result->summaries.size();
  }
  std::ofstream out(dir_ / "meta.json", std::ios::binary | std::ios::trunc);
  out << meta.dump(2) << '\n';
}

}  // namespace fog::cli
