#include "oseen/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "oseen/errors.hpp"

namespace oseen::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

long long to_integer(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, std::string v) {
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "t_min", "t_max", "n", "eps0", "eps1", "include_nonlocal", "output_dir", "route",
      "stability_tol", "rel_tol", "exponent_target", "exponent_band", "seed", "svg"};
  return keys;
}

}  // namespace

void RunConfig::validate() const {
  if (!(std::isfinite(t_min) && std::isfinite(t_max) && t_min < t_max)) {
    throw ConfigError("t_min must be below t_max");
  }
  if (n < 16) throw ConfigError("n must be at least 16");
  if (!(eps0 > 0.0 && eps1 > 0.0 && eps1 < 1.0 / eps0)) {
    throw ConfigError("eps0, eps1 must be positive with eps1 < 1/eps0");
  }
  if (route != "half" && route != "log") throw ConfigError("route must be 'half' or 'log'");
  if (!(stability_tol > 0.0)) throw ConfigError("stability_tol must be positive");
  if (!(rel_tol > 0.0 && rel_tol < 0.5)) throw ConfigError("rel_tol must lie in (0, 0.5)");
  if (!(exponent_band >= 0.0)) throw ConfigError("exponent_band must be non-negative");
  if (output_dir.empty()) throw ConfigError("output_dir is empty");
}

std::string default_output_root() {
  const char* env = std::getenv(kOutputRootEnv);
  return env && *env ? std::string(env) : std::string("oseen_runs");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "t_min") cfg.t_min = to_double(key, value);
  else if (key == "t_max") cfg.t_max = to_double(key, value);
  else if (key == "n") cfg.n = static_cast<int>(to_integer(key, value));
  else if (key == "eps0") cfg.eps0 = to_double(key, value);
  else if (key == "eps1") cfg.eps1 = to_double(key, value);
  else if (key == "include_nonlocal") cfg.include_nonlocal = to_bool(key, value);
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "route") cfg.route = value;
  else if (key == "stability_tol") cfg.stability_tol = to_double(key, value);
  else if (key == "rel_tol") cfg.rel_tol = to_double(key, value);
  else if (key == "exponent_target") cfg.exponent_target = to_double(key, value);
  else if (key == "exponent_band") cfg.exponent_band = to_double(key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_integer(key, value));
  else if (key == "svg") cfg.svg = to_bool(key, value);
  else throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace oseen::cli
