#include "oseen/run_store.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "oseen/errors.hpp"
#include "oseen/linalg.hpp"

#ifndef OSEEN_VERSION
#define OSEEN_VERSION "unknown"
#endif

namespace oseen::cli {
namespace fs = std::filesystem;

namespace {

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

void atomic_write(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  meta_.push_back("# " + key + " = " + value);
}
void CsvWriter::meta(const std::string& key, double value) { meta(key, format_number(value)); }

void CsvWriter::columns(std::vector<std::string> names) { columns_ = std::move(names); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw InternalError("CsvWriter: row width mismatch");
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  rows_.push_back(std::move(line));
}

void CsvWriter::footer(const std::string& key, const std::string& value) {
  footer_.push_back("# " + key + " = " + value);
}
void CsvWriter::footer(const std::string& key, double value) { footer(key, format_number(value)); }

std::string CsvWriter::body() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const auto& r : rows_) out += r + '\n';
  return out;
}

std::string CsvWriter::str() const {
  std::string out;
  for (const auto& m : meta_) out += m + '\n';
  out += body();
  for (const auto& f : footer_) out += f + '\n';
  return out;
}

std::string csv_body(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line + '\n';
  }
  return out;
}

RunStore::RunStore(fs::path dir, std::string command, std::vector<std::string> argv,
                   nlohmann::ordered_json config, bool resume)
    : dir_(std::move(dir)),
      command_(std::move(command)),
      argv_(std::move(argv)),
      config_(std::move(config)),
      started_(std::chrono::system_clock::now()),
      started_steady_(std::chrono::steady_clock::now()) {
  fs::create_directories(dir_);
  const fs::path manifest = dir_ / "manifest.json";
  if (!resume || !fs::exists(manifest)) return;
  const auto old = nlohmann::ordered_json::parse(read_file(manifest));
  if (old.value("command", "") != command_ || old.at("config") != config_) {
    throw ConfigError("--resume: existing manifest in '" + dir_.string() +
                      "' was written by a different command or configuration");
  }
  for (const auto& c : old.at("cells")) {
    CellRecord rec;
    rec.key = c.at("key").get<std::string>();
    rec.file = c.at("file").get<std::string>();
    rec.stable = c.at("stable").get<bool>();
    rec.values = c.at("values");
    if (fs::exists(dir_ / rec.file)) previous_cells_.push_back(std::move(rec));
  }
  for (const auto& a : old.at("artifacts")) {
    const auto file = a.at("file").get<std::string>();
    if (fs::exists(dir_ / file)) previous_artifacts_.emplace_back(file, a.at("kind").get<std::string>());
  }
  resumed_ = true;
}

std::optional<CellRecord> RunStore::completed_cell(const std::string& key) const {
  for (const auto& c : previous_cells_) {
    if (c.key == key) return c;
  }
  return std::nullopt;
}

void RunStore::write_artifact(const std::string& file, const std::string& kind,
                              const std::string& contents) {
  atomic_write(dir_ / file, contents);
  auto it = std::find_if(artifacts_.begin(), artifacts_.end(), [&](const auto& a) { return a.first == file; });
  if (it == artifacts_.end()) artifacts_.emplace_back(file, kind);
}

void RunStore::record_cell(const CellRecord& cell) {
  if (!fs::exists(dir_ / cell.file)) throw InternalError("cell file missing: " + cell.file);
  auto it = std::find_if(artifacts_.begin(), artifacts_.end(), [&](const auto& a) { return a.first == cell.file; });
  if (it == artifacts_.end()) artifacts_.emplace_back(cell.file, "cell-csv");
  cells_.push_back(cell);
  if (!cell.stable) add_unstable(cell.key);
}

int RunStore::finish(int exit_code) {
  nlohmann::ordered_json m;
  m["schema"] = kManifestSchema;
  m["tool_version"] = OSEEN_VERSION;
  m["command"] = command_;
  m["argv"] = argv_;
  m["config"] = config_;
  m["started_utc"] = iso_utc(started_);
  m["finished_utc"] = iso_utc(std::chrono::system_clock::now());
  m["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started_steady_).count();
  m["environment"] = {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                    "." + std::to_string(EIGEN_MINOR_VERSION)},
                      {"worker_threads", worker_count()}};
  for (const auto& prev : previous_artifacts_) {
    auto it = std::find_if(artifacts_.begin(), artifacts_.end(), [&](const auto& a) { return a.first == prev.first; });
    if (it == artifacts_.end()) artifacts_.push_back(prev);
  }
  m["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& [file, kind] : artifacts_) m["artifacts"].push_back({{"file", file}, {"kind", kind}});
  m["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : cells_) {
    m["cells"].push_back({{"key", c.key}, {"file", c.file}, {"stable", c.stable}, {"values", c.values}});
  }
  m["stability"] = {{"all_stable", unstable_.empty()}, {"unstable", unstable_}};
  m["summary"] = summary_;
  m["exit_code"] = exit_code;
  atomic_write(dir_ / "manifest.json", m.dump(2) + "\n");
  return exit_code;
}

}  // namespace oseen::cli
