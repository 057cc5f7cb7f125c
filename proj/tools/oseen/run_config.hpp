#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace oseen::cli {

/// Settings shared by every command. Precedence: flags, then the config file, then defaults.
struct RunConfig {
  double t_min = -12.0;
  double t_max = 3.0;
  int n = 601;
  double eps0 = 0.462;
  double eps1 = 0.426;
  bool include_nonlocal = true;
  std::string output_dir;
  std::string route = "half";       // half | log
  double stability_tol = 0.01;      // relative change allowed on the refined grid
  double rel_tol = 1e-3;            // golden-section tolerance on lambda
  double exponent_target = 1.0 / 3.0;
  double exponent_band = 0.08;
  std::uint64_t seed = 20240611;
  bool svg = true;

  /// Throws ConfigError on any inconsistent value.
  void validate() const;
};

/// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "OSEEN_OUTPUT_ROOT";

/// Output root when neither a flag nor the config file sets one.
std::string default_output_root();

/// Parses `key = value` lines; '#' starts a comment. Unknown keys are a ConfigError.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies parsed entries to `cfg`, skipping keys for which `is_locked(key)` is true
/// (the ones already given on the command line).
template <class Locked>
void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& entries,
                          Locked is_locked);

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

template <class Locked>
void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& entries,
                          Locked is_locked) {
  for (const auto& [key, value] : entries) {
    if (!is_locked(key)) apply_config_entry(cfg, key, value);
  }
}

}  // namespace oseen::cli
