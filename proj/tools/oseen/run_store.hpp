#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace oseen::cli {

/// Writes to a sibling temporary file and renames it into place.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

/// Round-trip decimal form of a double ("%.17g"); identical inputs give identical text.
std::string format_number(double x);

/// CSV text with '#'-prefixed metadata lines before the column header and
/// optional '#' footer lines after the body.
class CsvWriter {
 public:
  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void columns(std::vector<std::string> names);
  void row(const std::vector<std::string>& cells);
  void footer(const std::string& key, const std::string& value);
  void footer(const std::string& key, double value);
  std::string str() const;
  /// Body only: the column header and data rows.
  std::string body() const;

 private:
  std::vector<std::string> meta_, footer_, rows_;
  std::vector<std::string> columns_;
};

/// Splits a CSV file into its non-comment lines (header plus rows).
std::string csv_body(const std::string& text);

struct CellRecord {
  std::string key;
  std::string file;
  bool stable = true;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
};

/// One run directory with a single manifest.json describing every artifact in it.
class RunStore {
 public:
  RunStore(std::filesystem::path dir, std::string command, std::vector<std::string> argv,
           nlohmann::ordered_json config, bool resume);

  const std::filesystem::path& dir() const { return dir_; }

  /// Cell from the previous manifest, when resuming and its file still exists.
  std::optional<CellRecord> completed_cell(const std::string& key) const;
  /// Files from the previous manifest are listed again unless rewritten in this run.
  bool resumed() const { return resumed_; }

  void write_artifact(const std::string& file, const std::string& kind, const std::string& contents);
  void record_cell(const CellRecord& cell);
  void set_summary(nlohmann::ordered_json summary) { summary_ = std::move(summary); }
  void add_unstable(const std::string& what) { unstable_.push_back(what); }
  bool all_stable() const { return unstable_.empty(); }

  /// Writes manifest.json atomically; returns `exit_code` for convenience.
  int finish(int exit_code);

 private:
  std::filesystem::path dir_;
  std::string command_;
  bool resumed_ = false;
  std::vector<std::string> argv_;
  nlohmann::ordered_json config_;
  std::vector<CellRecord> previous_cells_;
  std::vector<std::pair<std::string, std::string>> previous_artifacts_;
  std::vector<CellRecord> cells_;
  std::vector<std::pair<std::string, std::string>> artifacts_;
  std::vector<std::string> unstable_;
  nlohmann::ordered_json summary_ = nlohmann::ordered_json::object();
  std::chrono::system_clock::time_point started_;
  std::chrono::steady_clock::time_point started_steady_;
};

inline constexpr const char* kManifestSchema = "oseen.run-manifest/1";

}  // namespace oseen::cli
