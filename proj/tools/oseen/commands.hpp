#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oseen/run_config.hpp"

namespace oseen::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFalsified = 1,  // a checked inequality or coercivity bound failed
  kExitUsage = 2,      // bad flags or configuration
  kExitUnstable = 3,   // results did not survive the truncation check
  kExitInternal = 4,
};

struct Invocation {
  std::vector<std::string> argv;
  std::string run_name;  // empty: derived from the command parameters
  bool resume = false;
  std::ostream* out = nullptr;
};

struct SweepArgs {
  double alpha = 0.0;
  int k = 0;
  double nu_min = -0.5;
  double nu_max = 1.5;
  int nu_count = 41;
  std::vector<double> lambdas;  // overrides the nu range when non-empty
};

struct ScalingArgs {
  std::vector<double> alphas;
  int k = 0;
};

struct PseudospectrumArgs {
  double alpha = 0.0;
  int k = 0;
  std::optional<double> re_min, re_max, im_min, im_max;
  int nx = 31;
  int ny = 31;
  bool check_truncation = true;
};

struct SpectrumArgs {
  double alpha = 0.0;
  int k = 0;
  int count = 0;  // 0: all eigenvalues
  double tol = 1e-4;
};

struct VerifyArgs {
  std::optional<double> delta;
  std::optional<long> random_samples;
  std::optional<long> metric_samples;
};

struct MultiplierArgs {
  double alpha = 0.0;
  int k = 0;
  double nu = 0.0;
  double c0 = 0.1;
  double truncation_tol = 0.05;
};

int cmd_sweep(const RunConfig& cfg, const SweepArgs& args, const Invocation& inv);
int cmd_scaling(const RunConfig& cfg, const ScalingArgs& args, const Invocation& inv);
int cmd_pseudospectrum(const RunConfig& cfg, const PseudospectrumArgs& args, const Invocation& inv);
int cmd_spectrum(const RunConfig& cfg, const SpectrumArgs& args, const Invocation& inv);
int cmd_verify(const RunConfig& cfg, const VerifyArgs& args, const Invocation& inv);
int cmd_multiplier(const RunConfig& cfg, const MultiplierArgs& args, const Invocation& inv);

/// Parses "1e3,3e3,1e4" into numbers; throws ConfigError on malformed input.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace oseen::cli
