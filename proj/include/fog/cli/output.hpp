#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fog/harness/monte_carlo.hpp"
#include "fog/harness/scenario.hpp"

namespace fog::cli {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Shortest round-trip form at 9 significant digits, locale independent.
std::string format_number(double value);

// Comma-separated rows with '\n' endings, written in binary mode.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double value);
  CsvWriter& field(std::uint64_t value);
  CsvWriter& field(std::int64_t value);
  void end_row();
  void close();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  bool first_ = true;
};

struct SummaryRow {
  std::string policy;
  harness::Summary summary;
};

void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);

// Writes one scenario's output directory. Per-run series stream in through
// add_run (in run order), everything else is written by finish().
class BundleWriter {
 public:
  // `stride` keeps every stride-th slot (and the last) in the per-slot files.
  BundleWriter(std::filesystem::path dir, harness::ScenarioConfig scenario, std::int64_t stride);
  ~BundleWriter();

  void add_run(const harness::RunMetrics& metrics);
  void finish(const harness::MonteCarloResult& result);
  // Marks the bundle partial in meta.json.
  void fail(const std::string& message);

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  bool keep_slot(std::int64_t slot) const;
  void write_meta(const std::string& status, const std::string& error,
                  const harness::MonteCarloResult* result);

  std::filesystem::path dir_;
  harness::ScenarioConfig scenario_;
  std::int64_t stride_;
  std::unique_ptr<CsvWriter> timeseries_;
  std::unique_ptr<CsvWriter> ne_gaps_;
  std::vector<std::string> files_;
  // Joint selection frequencies summed over runs: [pair][window][cell].
  std::vector<std::vector<std::vector<double>>> joint_;
  std::size_t runs_seen_ = 0;
  bool done_ = false;
};

}  // namespace fog::cli
