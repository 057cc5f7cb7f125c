#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "oseen/commands.hpp"
#include "oseen/errors.hpp"
#include "oseen/run_config.hpp"

using namespace oseen::cli;

namespace {

// A flag bound to a scratch RunConfig and copied over the config-file value only when given.
struct Override {
  CLI::Option* option;
  std::string key;
  std::function<void(RunConfig&, const RunConfig&)> copy;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolvent, spectrum and multiplier computations for the linearized Oseen vortex"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig given;
  std::string config_path;
  Invocation inv;
  std::vector<Override> overrides;
  auto bind = [&](CLI::Option* opt, std::string key, std::function<void(RunConfig&, const RunConfig&)> copy) {
    overrides.push_back({opt, std::move(key), std::move(copy)});
  };

  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  bind(app.add_option("--output-dir", given.output_dir,
                      std::string("output root (default: $") + kOutputRootEnv + " or ./oseen_runs)"),
       "output_dir", [](RunConfig& c, const RunConfig& g) { c.output_dir = g.output_dir; });
  bind(app.add_option("--t-min", given.t_min, "left end of the log grid"), "t_min",
       [](RunConfig& c, const RunConfig& g) { c.t_min = g.t_min; });
  bind(app.add_option("--t-max", given.t_max, "right end of the log grid"), "t_max",
       [](RunConfig& c, const RunConfig& g) { c.t_max = g.t_max; });
  bind(app.add_option("--n", given.n, "number of grid nodes"), "n",
       [](RunConfig& c, const RunConfig& g) { c.n = g.n; });
  bind(app.add_option("--eps0", given.eps0, "case threshold eps0"), "eps0",
       [](RunConfig& c, const RunConfig& g) { c.eps0 = g.eps0; });
  bind(app.add_option("--eps1", given.eps1, "case threshold eps1"), "eps1",
       [](RunConfig& c, const RunConfig& g) { c.eps1 = g.eps1; });
  bool no_nonlocal = false;
  bind(app.add_flag("--no-nonlocal", no_nonlocal, "drop the Biot-Savart term (model operator)"),
       "include_nonlocal", [&](RunConfig& c, const RunConfig&) { c.include_nonlocal = !no_nonlocal; });
  bind(app.add_option("--route", given.route, "assembly route: half or log")->check(CLI::IsMember({"half", "log"})),
       "route", [](RunConfig& c, const RunConfig& g) { c.route = g.route; });
  bind(app.add_option("--stability-tol", given.stability_tol, "relative change allowed under grid refinement"),
       "stability_tol", [](RunConfig& c, const RunConfig& g) { c.stability_tol = g.stability_tol; });
  bind(app.add_option("--rel-tol", given.rel_tol, "golden-section tolerance on lambda"), "rel_tol",
       [](RunConfig& c, const RunConfig& g) { c.rel_tol = g.rel_tol; });
  bind(app.add_option("--exponent-target", given.exponent_target, "expected scaling exponent"),
       "exponent_target", [](RunConfig& c, const RunConfig& g) { c.exponent_target = g.exponent_target; });
  bind(app.add_option("--exponent-band", given.exponent_band, "accepted deviation from the target exponent"),
       "exponent_band", [](RunConfig& c, const RunConfig& g) { c.exponent_band = g.exponent_band; });
  bind(app.add_option("--seed", given.seed, "seed for sampled checks"), "seed",
       [](RunConfig& c, const RunConfig& g) { c.seed = g.seed; });
  bool no_svg = false;
  bind(app.add_flag("--no-svg", no_svg, "skip SVG plots"), "svg",
       [&](RunConfig& c, const RunConfig&) { c.svg = !no_svg; });
  app.add_option("--name", inv.run_name, "run directory name under the output root");
  app.add_flag("--resume", inv.resume, "reuse completed cells listed in an existing manifest");

  SweepArgs sweep;
  std::string lambdas;
  auto* sc_sweep = app.add_subcommand("sweep", "resolvent norm along the imaginary axis");
  sc_sweep->add_option("--alpha", sweep.alpha, "circulation Reynolds number")->required();
  sc_sweep->add_option("--k", sweep.k, "angular mode")->required();
  sc_sweep->add_option("--nu-min", sweep.nu_min, "first nu = lambda / beta_k");
  sc_sweep->add_option("--nu-max", sweep.nu_max, "last nu");
  sc_sweep->add_option("--nu-count", sweep.nu_count, "number of nu points");
  sc_sweep->add_option("--lambdas", lambdas, "explicit comma-separated lambda values");

  ScalingArgs scaling;
  std::string alphas = "1e3,3e3,1e4,3e4,1e5";
  auto* sc_scaling = app.add_subcommand("scaling", "Psi(alpha, k) and its fitted exponent");
  sc_scaling->add_option("--alphas", alphas, "comma-separated alpha values")->capture_default_str();
  sc_scaling->add_option("--k", scaling.k, "angular mode")->required();

  PseudospectrumArgs pseudo;
  bool no_check = false;
  auto* sc_pseudo = app.add_subcommand("pseudospectrum", "resolvent norm on a rectangle of the complex plane");
  sc_pseudo->add_option("--alpha", pseudo.alpha, "circulation Reynolds number")->required();
  sc_pseudo->add_option("--k", pseudo.k, "angular mode")->required();
  sc_pseudo->add_option("--re-min", pseudo.re_min, "default 0");
  sc_pseudo->add_option("--re-max", pseudo.re_max, "default 2k + 10");
  sc_pseudo->add_option("--im-min", pseudo.im_min, "default -0.1 beta_k");
  sc_pseudo->add_option("--im-max", pseudo.im_max, "default 1.1 beta_k");
  sc_pseudo->add_option("--nx", pseudo.nx, "points along Re z")->capture_default_str();
  sc_pseudo->add_option("--ny", pseudo.ny, "points along Im z")->capture_default_str();
  sc_pseudo->add_flag("--no-truncation-check", no_check, "skip the refined-grid comparison");

  SpectrumArgs spectrum;
  auto* sc_spectrum = app.add_subcommand("spectrum", "eigenvalues of the mode operator");
  sc_spectrum->add_option("--alpha", spectrum.alpha, "circulation Reynolds number (0 allowed)")->required();
  sc_spectrum->add_option("--k", spectrum.k, "angular mode")->required();
  sc_spectrum->add_option("--count", spectrum.count, "keep the first N by real part (0 = all)");
  sc_spectrum->add_option("--tol", spectrum.tol, "relative tolerance of the refined-grid match")->capture_default_str();

  VerifyArgs verify;
  auto* sc_verify = app.add_subcommand("verify", "inequality battery");
  sc_verify->add_option("--delta", verify.delta, "constant in delta r^2 g^2 <= sigma");
  sc_verify->add_option("--random-samples", verify.random_samples, "samples per randomized family");
  sc_verify->add_option("--metric-samples", verify.metric_samples, "samples per metric check");

  MultiplierArgs multiplier;
  auto* sc_mult = app.add_subcommand("multiplier", "coercivity of the case multiplier at alpha, 2 alpha, 4 alpha");
  sc_mult->add_option("--alpha", multiplier.alpha, "circulation Reynolds number")->required();
  sc_mult->add_option("--k", multiplier.k, "angular mode")->required();
  sc_mult->add_option("--nu", multiplier.nu, "nu = lambda / beta_k")->required();
  sc_mult->add_option("--c0", multiplier.c0, "cutoff scale")->capture_default_str();
  sc_mult->add_option("--truncation-tol", multiplier.truncation_tol,
                      "relative c_fit change allowed on the widened window")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  for (int i = 0; i < argc; ++i) inv.argv.emplace_back(argv[i]);
  try {
    RunConfig cfg;
    cfg.output_dir = default_output_root();
    if (!config_path.empty()) {
      const auto entries = read_config_file(config_path);
      apply_config_entries(cfg, entries, [&](const std::string& key) {
        for (const auto& o : overrides) {
          if (o.key == key && o.option->count() > 0) return true;
        }
        return false;
      });
    }
    for (const auto& o : overrides) {
      if (o.option->count() > 0) o.copy(cfg, given);
    }
    cfg.validate();

    if (*sc_sweep) {
      if (!lambdas.empty()) sweep.lambdas = parse_number_list(lambdas);
      return cmd_sweep(cfg, sweep, inv);
    }
    if (*sc_scaling) {
      scaling.alphas = parse_number_list(alphas);
      return cmd_scaling(cfg, scaling, inv);
    }
    if (*sc_pseudo) {
      pseudo.check_truncation = !no_check;
      return cmd_pseudospectrum(cfg, pseudo, inv);
    }
    if (*sc_spectrum) return cmd_spectrum(cfg, spectrum, inv);
    if (*sc_verify) return cmd_verify(cfg, verify, inv);
    if (*sc_mult) return cmd_multiplier(cfg, multiplier, inv);
  } catch (const oseen::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const oseen::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const oseen::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
