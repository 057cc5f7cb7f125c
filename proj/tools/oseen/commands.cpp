#include "oseen/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oseen/errors.hpp"
#include "oseen/grid.hpp"
#include "oseen/multiplier.hpp"
#include "oseen/resolvent.hpp"
#include "oseen/run_store.hpp"
#include "oseen/svg.hpp"
#include "oseen/verify.hpp"

namespace oseen::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string flag(bool b) { return b ? "1" : "0"; }

json config_json(const RunConfig& cfg) {
  return json{{"t_min", cfg.t_min},
              {"t_max", cfg.t_max},
              {"n", cfg.n},
              {"eps0", cfg.eps0},
              {"eps1", cfg.eps1},
              {"include_nonlocal", cfg.include_nonlocal},
              {"output_dir", cfg.output_dir},
              {"route", cfg.route},
              {"stability_tol", cfg.stability_tol},
              {"rel_tol", cfg.rel_tol},
              {"exponent_target", cfg.exponent_target},
              {"exponent_band", cfg.exponent_band},
              {"seed", cfg.seed},
              {"svg", cfg.svg}};
}

void grid_meta(CsvWriter& csv, const RunConfig& cfg) {
  csv.meta("t_min", cfg.t_min);
  csv.meta("t_max", cfg.t_max);
  csv.meta("n", static_cast<double>(cfg.n));
  csv.meta("include_nonlocal", flag(cfg.include_nonlocal));
  csv.meta("route", cfg.route);
  csv.meta("stability_tol", cfg.stability_tol);
}

LogGrid grid_of(const RunConfig& cfg) { return make_log_grid(cfg.t_min, cfg.t_max, cfg.n); }

ResolventOptions resolvent_options(const RunConfig& cfg) {
  ResolventOptions o;
  o.include_nonlocal = cfg.include_nonlocal;
  o.route = cfg.route == "log" ? Route::LogLine : Route::HalfLine;
  o.stability_tol = cfg.stability_tol;
  return o;
}

fs::path run_dir(const RunConfig& cfg, const Invocation& inv, std::string derived) {
  if (!cfg.include_nonlocal) derived += "_nolocal";
  return fs::path(cfg.output_dir) / (inv.run_name.empty() ? derived : inv.run_name);
}

std::ostream& out(const Invocation& inv) { return inv.out ? *inv.out : std::cout; }

void require_mode(double alpha, int k, bool allow_zero_alpha = false) {
  if (k < 1) throw ConfigError("--k must be >= 1");
  if (!(std::isfinite(alpha) && (alpha > 0.0 || (allow_zero_alpha && alpha == 0.0)))) {
    throw ConfigError(allow_zero_alpha ? "--alpha must be >= 0" : "--alpha must be > 0");
  }
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("malformed number '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

int cmd_sweep(const RunConfig& cfg, const SweepArgs& args, const Invocation& inv) {
  require_mode(args.alpha, args.k);
  if (args.lambdas.empty() && (args.nu_count < 2 || !(args.nu_min < args.nu_max))) {
    throw ConfigError("sweep: need nu_min < nu_max and nu_count >= 2");
  }
  json config = config_json(cfg);
  config["alpha"] = args.alpha;
  config["k"] = args.k;
  config["nu_min"] = args.nu_min;
  config["nu_max"] = args.nu_max;
  config["nu_count"] = args.nu_count;
  config["lambdas"] = args.lambdas;
  RunStore store(run_dir(cfg, inv, "sweep_a" + short_number(args.alpha) + "_k" + std::to_string(args.k)),
                 "sweep", inv.argv, config, inv.resume);

  if (auto done = store.completed_cell("sweep")) {
    out(inv) << "resumed: " << (store.dir() / done->file).string() << "\n"
             << "psi = " << format_number(done->values.at("psi").get<double>()) << "\n";
    store.record_cell(*done);
    store.set_summary(done->values);
    return store.finish(done->values.at("any_stable").get<bool>() ? kExitOk : kExitUnstable);
  }

  const LambdaSpec spec = args.lambdas.empty()
                              ? LambdaSpec::nu_range(args.nu_min, args.nu_max, args.nu_count)
                              : LambdaSpec::lambdas(args.lambdas);
  const SweepResult r = sweep_lambda(args.alpha, args.k, spec, grid_of(cfg), resolvent_options(cfg));
  const double beta = ModeParams::make(args.alpha, args.k, 0.0).beta_k;

  CsvWriter csv;
  csv.meta("command", "sweep");
  csv.meta("alpha", args.alpha);
  csv.meta("k", static_cast<double>(args.k));
  csv.meta("beta_k", beta);
  grid_meta(csv, cfg);
  csv.columns({"nu", "lambda", "sigma_min", "resnorm", "stable"});
  for (const auto& rec : r.records) {
    csv.row({format_number(rec.nu), format_number(rec.lambda), format_number(rec.sigma_min),
             format_number(rec.resnorm), flag(rec.stable)});
  }
  csv.footer("psi", r.psi);
  csv.footer("argmax_nu", r.argmax_nu);
  csv.footer("argmax_lambda", r.argmax_lambda);
  csv.footer("argmax_stable", flag(r.argmax_stable));
  store.write_artifact("sweep.csv", "csv", csv.str());

  if (cfg.svg) {
    svg::Series s{"||(H - i lambda)^-1||", {}, {}, true};
    for (const auto& rec : r.records) {
      s.x.push_back(rec.nu);
      s.y.push_back(rec.resnorm);
    }
    store.write_artifact("sweep.svg", "svg",
                         svg::line_plot({s}, {"resolvent norm, alpha = " + short_number(args.alpha) +
                                                  ", k = " + std::to_string(args.k),
                                              "nu = lambda / beta_k", "resolvent norm", false, true}));
  }

  CellRecord cell{"sweep", "sweep.csv", r.any_stable(),
                  json{{"psi", r.psi},
                       {"argmax_nu", r.argmax_nu},
                       {"argmax_lambda", r.argmax_lambda},
                       {"argmax_stable", r.argmax_stable},
                       {"any_stable", r.any_stable()}}};
  store.record_cell(cell);
  for (const auto& rec : r.records) {
    if (!rec.stable) store.add_unstable("nu=" + format_number(rec.nu));
  }
  store.set_summary(cell.values);
  out(inv) << "psi = " << format_number(r.psi) << " at nu = " << format_number(r.argmax_nu)
           << (r.argmax_stable ? "" : " (unstable under grid refinement)") << "\n"
           << "wrote " << (store.dir() / "sweep.csv").string() << "\n";
  return store.finish(r.any_stable() ? kExitOk : kExitUnstable);
}

int cmd_scaling(const RunConfig& cfg, const ScalingArgs& args, const Invocation& inv) {
  for (double a : args.alphas) require_mode(a, args.k);
  const auto [amin, amax] = std::minmax_element(args.alphas.begin(), args.alphas.end());
  if (args.alphas.size() < 4 || std::log10(*amax / *amin) < 1.5) {
    throw ConfigError("scaling: need at least 4 alphas spanning at least 1.5 decades");
  }
  json config = config_json(cfg);
  config["alphas"] = args.alphas;
  config["k"] = args.k;
  RunStore store(run_dir(cfg, inv, "scaling_k" + std::to_string(args.k)), "scaling", inv.argv, config,
                 inv.resume);

  const LogGrid grid = grid_of(cfg);
  PsiOptions popts;
  popts.resolvent = resolvent_options(cfg);
  popts.rel_tol = cfg.rel_tol;

  std::vector<PsiPoint> points;
  for (double alpha : args.alphas) {
    const std::string key = "alpha=" + format_number(alpha);
    const std::string file = "cell_alpha_" + short_number(alpha) + ".csv";
    PsiPoint p;
    if (auto done = store.completed_cell(key)) {
      const auto& v = done->values;
      p.alpha = alpha;
      p.k = args.k;
      p.psi = v.at("psi").get<double>();
      p.argmax_nu = v.at("argmax_nu").get<double>();
      p.argmax_lambda = v.at("argmax_lambda").get<double>();
      p.psi_refined = v.at("psi_refined").get<double>();
      p.stable = done->stable;
      p.evaluations = v.at("evaluations").get<int>();
      store.record_cell(*done);
      out(inv) << "alpha = " << short_number(alpha) << ": resumed\n";
    } else {
      p = psi_of_alpha(alpha, args.k, grid, popts);
      CsvWriter csv;
      csv.meta("command", "scaling");
      csv.meta("k", static_cast<double>(args.k));
      grid_meta(csv, cfg);
      csv.columns({"alpha", "psi", "argmax_nu", "argmax_lambda", "psi_refined", "stable", "evaluations"});
      csv.row({format_number(p.alpha), format_number(p.psi), format_number(p.argmax_nu),
               format_number(p.argmax_lambda), format_number(p.psi_refined), flag(p.stable),
               std::to_string(p.evaluations)});
      store.write_artifact(file, "cell-csv", csv.str());
      store.record_cell({key, file, p.stable,
                         json{{"psi", p.psi},
                              {"argmax_nu", p.argmax_nu},
                              {"argmax_lambda", p.argmax_lambda},
                              {"psi_refined", p.psi_refined},
                              {"evaluations", p.evaluations}}});
      out(inv) << "alpha = " << short_number(alpha) << ": psi = " << format_number(p.psi)
               << (p.stable ? "" : " (unstable)") << "\n";
    }
    points.push_back(p);
  }

  std::vector<double> xs, ys, xs_all, ys_all;
  for (const auto& p : points) {
    xs_all.push_back(p.alpha);
    ys_all.push_back(p.psi);
    if (p.stable) {
      xs.push_back(p.alpha);
      ys.push_back(p.psi);
    }
  }
  ScalingFit fit;
  std::string fit_points = "stable";
  try {
    fit = fit_scaling(xs, ys);
  } catch (const ConfigError&) {
    fit_points = "all";
    fit = fit_scaling(xs_all, ys_all);
  }
  const bool in_band = std::abs(fit.exponent - cfg.exponent_target) <= cfg.exponent_band;

  CsvWriter csv;
  csv.meta("command", "scaling");
  csv.meta("k", static_cast<double>(args.k));
  grid_meta(csv, cfg);
  csv.columns({"alpha", "psi", "argmax_nu", "argmax_lambda", "psi_refined", "stable"});
  for (const auto& p : points) {
    csv.row({format_number(p.alpha), format_number(p.psi), format_number(p.argmax_nu),
             format_number(p.argmax_lambda), format_number(p.psi_refined), flag(p.stable)});
  }
  csv.footer("exponent", fit.exponent);
  csv.footer("intercept", fit.intercept);
  csv.footer("residual", fit.residual);
  csv.footer("fit_points", fit_points);
  csv.footer("exponent_target", cfg.exponent_target);
  csv.footer("exponent_band", cfg.exponent_band);
  csv.footer("within_band", flag(in_band));
  store.write_artifact("scaling.csv", "csv", csv.str());

  if (cfg.svg) {
    svg::Series data{"Psi(alpha)", xs_all, ys_all, true};
    svg::Series line{"fit: exponent " + short_number(fit.exponent), {}, {}, false};
    for (double a : {xs_all.front(), xs_all.back()}) {
      line.x.push_back(a);
      line.y.push_back(std::exp(fit.intercept) * std::pow(a, fit.exponent));
    }
    store.write_artifact("scaling.svg", "svg",
                         svg::line_plot({data, line}, {"Psi scaling, k = " + std::to_string(args.k), "alpha",
                                                       "Psi", true, true}));
  }

  store.set_summary(json{{"exponent", fit.exponent},
                         {"intercept", fit.intercept},
                         {"residual", fit.residual},
                         {"fit_points", fit_points},
                         {"within_band", in_band}});
  out(inv) << "fitted exponent = " << format_number(fit.exponent) << " (target "
           << short_number(cfg.exponent_target) << " +/- " << short_number(cfg.exponent_band) << ", "
           << (in_band ? "within band" : "outside band") << ", fit over " << fit_points << " points)\n";
  if (fit_points == "all") return store.finish(kExitUnstable);
  if (!in_band) return store.finish(kExitFalsified);
  return store.finish(store.all_stable() ? kExitOk : kExitUnstable);
}

int cmd_pseudospectrum(const RunConfig& cfg, const PseudospectrumArgs& args, const Invocation& inv) {
  require_mode(args.alpha, args.k);
  const double beta = ModeParams::make(args.alpha, args.k, 0.0).beta_k;
  const double re_min = args.re_min.value_or(0.0);
  const double re_max = args.re_max.value_or(2.0 * args.k + 10.0);
  const double im_min = args.im_min.value_or(-0.1 * beta);
  const double im_max = args.im_max.value_or(1.1 * beta);
  json config = config_json(cfg);
  config["alpha"] = args.alpha;
  config["k"] = args.k;
  config["window"] = {re_min, re_max, im_min, im_max};
  config["nx"] = args.nx;
  config["ny"] = args.ny;
  config["check_truncation"] = args.check_truncation;
  RunStore store(run_dir(cfg, inv, "pseudospectrum_a" + short_number(args.alpha) + "_k" + std::to_string(args.k)),
                 "pseudospectrum", inv.argv, config, inv.resume);
  if (auto done = store.completed_cell("grid")) {
    out(inv) << "resumed: " << (store.dir() / done->file).string() << "\n";
    store.record_cell(*done);
    store.set_summary(done->values);
    return store.finish(done->stable ? kExitOk : kExitUnstable);
  }

  const LogGrid grid = grid_of(cfg);
  const ResolventOptions opts = resolvent_options(cfg);
  const PseudospectrumGrid ps =
      pseudospectrum(args.alpha, args.k, re_min, re_max, im_min, im_max, args.nx, args.ny, grid, opts);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> stable =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(args.ny, args.nx, true);
  long stable_count = static_cast<long>(args.nx) * args.ny;
  if (args.check_truncation) {
    const PseudospectrumGrid fine = pseudospectrum(args.alpha, args.k, re_min, re_max, im_min, im_max, args.nx,
                                                   args.ny, refined_grid(grid), opts);
    stable_count = 0;
    for (int j = 0; j < args.ny; ++j) {
      for (int i = 0; i < args.nx; ++i) {
        const double a = ps.resnorm(j, i), b = fine.resnorm(j, i);
        stable(j, i) = std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= cfg.stability_tol * std::abs(b);
        stable_count += stable(j, i);
      }
    }
  }

  CsvWriter csv;
  csv.meta("command", "pseudospectrum");
  csv.meta("alpha", args.alpha);
  csv.meta("k", static_cast<double>(args.k));
  csv.meta("beta_k", beta);
  grid_meta(csv, cfg);
  csv.meta("truncation_check", args.check_truncation ? "on" : "off");
  csv.columns({"re", "im", "resnorm", "stable"});
  for (int j = 0; j < args.ny; ++j) {
    for (int i = 0; i < args.nx; ++i) {
      csv.row({format_number(ps.re[i]), format_number(ps.im[j]), format_number(ps.resnorm(j, i)),
               flag(stable(j, i))});
      if (!stable(j, i)) store.add_unstable("z=" + format_number(ps.re[i]) + "+" + format_number(ps.im[j]) + "i");
    }
  }
  store.write_artifact("pseudospectrum.csv", "csv", csv.str());
  if (cfg.svg) {
    store.write_artifact("pseudospectrum.svg", "svg",
                         svg::contour_plot(ps.resnorm, ps.re, ps.im,
                                           {"resolvent norm level sets 10^j, alpha = " + short_number(args.alpha) +
                                                ", k = " + std::to_string(args.k),
                                            "Re z", "Im z", false, false}));
  }
  const bool any = stable_count > 0;
  const json summary{{"points", args.nx * args.ny},
                     {"stable_points", stable_count},
                     {"max_resnorm", ps.resnorm.maxCoeff()}};
  store.record_cell({"grid", "pseudospectrum.csv", any, summary});
  store.set_summary(summary);
  out(inv) << "stable points: " << stable_count << " / " << args.nx * args.ny << "\n"
           << "wrote " << (store.dir() / "pseudospectrum.csv").string() << "\n";
  return store.finish(any ? kExitOk : kExitUnstable);
}

int cmd_spectrum(const RunConfig& cfg, const SpectrumArgs& args, const Invocation& inv) {
  require_mode(args.alpha, args.k, true);
  if (args.count < 0) throw ConfigError("--count must be >= 0");
  json config = config_json(cfg);
  config["alpha"] = args.alpha;
  config["k"] = args.k;
  config["count"] = args.count;
  config["tol"] = args.tol;
  RunStore store(run_dir(cfg, inv, "spectrum_a" + short_number(args.alpha) + "_k" + std::to_string(args.k)),
                 "spectrum", inv.argv, config, inv.resume);
  if (auto done = store.completed_cell("spectrum")) {
    out(inv) << "resumed: " << (store.dir() / done->file).string() << "\n";
    store.record_cell(*done);
    store.set_summary(done->values);
    return store.finish(done->stable ? kExitOk : kExitUnstable);
  }

  auto ev = eigenvalues(args.alpha, args.k, grid_of(cfg), resolvent_options(cfg), args.tol);
  if (args.count > 0 && static_cast<std::size_t>(args.count) < ev.size()) ev.resize(args.count);

  CsvWriter csv;
  csv.meta("command", "spectrum");
  csv.meta("alpha", args.alpha);
  csv.meta("k", static_cast<double>(args.k));
  grid_meta(csv, cfg);
  csv.meta("tol", args.tol);
  csv.columns({"index", "re", "im", "stable"});
  double min_re = std::numeric_limits<double>::infinity();
  long stable_count = 0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    csv.row({std::to_string(i), format_number(ev[i].value.real()), format_number(ev[i].value.imag()),
             flag(ev[i].stable)});
    if (ev[i].stable) {
      ++stable_count;
      min_re = std::min(min_re, ev[i].value.real());
    }
  }
  csv.footer("stable_count", static_cast<double>(stable_count));
  csv.footer("min_re_stable", min_re);
  csv.footer("half_k", 0.5 * args.k);
  store.write_artifact("spectrum.csv", "csv", csv.str());
  if (cfg.svg) {
    svg::Series s{"stable eigenvalues", {}, {}, true};
    for (const auto& e : ev) {
      if (e.stable) {
        s.x.push_back(e.value.real());
        s.y.push_back(e.value.imag());
      }
    }
    // Markers only: consecutive eigenvalues are not joined.
    std::string text = svg::line_plot({s}, {"spectrum, alpha = " + short_number(args.alpha) + ", k = " +
                                                std::to_string(args.k),
                                            "Re z", "Im z", false, false});
    const auto pos = text.find("<polyline");
    if (pos != std::string::npos) text.erase(pos, text.find("/>\n", pos) + 3 - pos);
    store.write_artifact("spectrum.svg", "svg", text);
  }
  const json summary{{"eigenvalues", ev.size()}, {"stable", stable_count}, {"min_re_stable", min_re}};
  store.record_cell({"spectrum", "spectrum.csv", stable_count > 0, summary});
  store.set_summary(summary);
  out(inv) << "stable eigenvalues: " << stable_count << " / " << ev.size()
           << "; min Re (stable) = " << format_number(min_re) << ", k/2 = " << short_number(0.5 * args.k) << "\n";
  return store.finish(stable_count > 0 ? kExitOk : kExitUnstable);
}

int cmd_verify(const RunConfig& cfg, const VerifyArgs& args, const Invocation& inv) {
  VerifyConfig vc;
  vc.eps0 = cfg.eps0;
  vc.eps1 = cfg.eps1;
  vc.t_min = cfg.t_min;
  vc.t_max = cfg.t_max;
  vc.n = cfg.n;
  vc.seed = cfg.seed;
  if (args.delta) vc.delta = *args.delta;
  if (args.random_samples) vc.random_samples = *args.random_samples;
  if (args.metric_samples) vc.metric_samples = *args.metric_samples;
  if (vc.random_samples < 1 || vc.metric_samples < 1) throw ConfigError("sample counts must be >= 1");

  json config = config_json(cfg);
  config["delta"] = vc.delta;
  config["random_samples"] = vc.random_samples;
  config["metric_samples"] = vc.metric_samples;
  RunStore store(run_dir(cfg, inv, "verify"), "verify", inv.argv, config, inv.resume);
  if (auto done = store.completed_cell("report")) {
    out(inv) << "resumed: " << (store.dir() / done->file).string() << "\n";
    store.record_cell(*done);
    store.set_summary(done->values);
    return store.finish(done->values.at("pass").get<bool>() ? kExitOk : kExitFalsified);
  }

  const VerificationReport rep = run_all(vc);
  CsvWriter csv;
  csv.meta("command", "verify");
  csv.meta("delta", vc.delta);
  csv.meta("eps0", vc.eps0);
  csv.meta("eps1", vc.eps1);
  csv.meta("seed", std::to_string(vc.seed));
  csv.columns({"name", "samples", "worst_margin", "pass", "witness"});
  for (const auto& it : rep.items) {
    std::string witness = it.witness;
    for (char& c : witness) {
      if (c == ',') c = ';';
    }
    csv.row({it.name, std::to_string(it.samples), format_number(it.worst_margin), flag(it.pass), witness});
  }
  csv.footer("pass", flag(rep.pass));
  store.write_artifact("verify.csv", "csv", csv.str());
  store.write_artifact("report.json", "json", rep.to_json() + "\n");
  store.write_artifact("report.txt", "text", rep.to_text());
  long failed = 0;
  for (const auto& it : rep.items) failed += !it.pass;
  const json summary{{"pass", rep.pass}, {"items", rep.items.size()}, {"failed", failed}};
  store.record_cell({"report", "verify.csv", true, summary});
  store.set_summary(summary);
  out(inv) << rep.to_text();
  return store.finish(rep.pass ? kExitOk : kExitFalsified);
}

int cmd_multiplier(const RunConfig& cfg, const MultiplierArgs& args, const Invocation& inv) {
  require_mode(args.alpha, args.k);
  if (!std::isfinite(args.nu)) throw ConfigError("--nu must be finite");
  if (!(args.c0 > 0.0)) throw ConfigError("--c0 must be positive");
  json config = config_json(cfg);
  config["alpha"] = args.alpha;
  config["k"] = args.k;
  config["nu"] = args.nu;
  config["c0"] = args.c0;
  config["truncation_tol"] = args.truncation_tol;
  RunStore store(run_dir(cfg, inv, "multiplier_a" + short_number(args.alpha) + "_k" + std::to_string(args.k) +
                                       "_nu" + short_number(args.nu)),
                 "multiplier", inv.argv, config, inv.resume);
  if (auto done = store.completed_cell("family")) {
    out(inv) << "resumed: " << (store.dir() / done->file).string() << "\n";
    store.record_cell(*done);
    store.set_summary(done->values);
    return store.finish(done->values.at("exit_code").get<int>());
  }

  CoercivityOptions opts;
  opts.c0 = args.c0;
  opts.include_nonlocal = cfg.include_nonlocal;
  opts.thresholds = CaseThresholds{cfg.eps0, cfg.eps1};
  const CoercivityFamily fam = coercivity_family(args.alpha, args.k, args.nu, opts);
  const CaseTag tag = fam.members.front().case_tag;

  CsvWriter csv;
  csv.meta("command", "multiplier");
  csv.meta("k", static_cast<double>(args.k));
  csv.meta("nu", args.nu);
  csv.meta("c0", args.c0);
  csv.meta("case", std::string(to_string(tag)));
  csv.meta("include_nonlocal", flag(cfg.include_nonlocal));
  csv.columns({"alpha", "beta_k", "t_k", "power", "shift", "min_eigenvalue", "c_fit", "c_fit_widened",
               "truncation_change", "grid_t_min", "grid_t_max", "grid_n", "stable"});
  json members = json::array();
  bool positive = true;
  for (const auto& r : fam.members) {
    const bool stable = r.truncation_change <= args.truncation_tol;
    positive = positive && r.positive();
    if (!stable) store.add_unstable("alpha=" + format_number(r.mp.alpha));
    const double tk = r.mp.t_k.value_or(std::numeric_limits<double>::quiet_NaN());
    csv.row({format_number(r.mp.alpha), format_number(r.mp.beta_k), format_number(tk), format_number(r.power),
             format_number(r.shift), format_number(r.min_eigenvalue), format_number(r.c_fit),
             format_number(r.c_fit_widened), format_number(r.truncation_change), format_number(r.t_min),
             format_number(r.t_max), std::to_string(r.n), flag(stable)});
    members.push_back({{"alpha", r.mp.alpha},
                       {"beta_k", r.mp.beta_k},
                       {"t_k", r.mp.t_k ? json(*r.mp.t_k) : json(nullptr)},
                       {"power", r.power},
                       {"shift", r.shift},
                       {"min_eigenvalue", r.min_eigenvalue},
                       {"c_fit", r.c_fit},
                       {"c_fit_widened", r.c_fit_widened},
                       {"truncation_change", r.truncation_change},
                       {"grid", {{"t_min", r.t_min}, {"t_max", r.t_max}, {"n", r.n}}},
                       {"stable", stable}});
  }
  csv.footer("drift", fam.drift);
  csv.footer("all_positive", flag(fam.all_positive));
  store.write_artifact("multiplier.csv", "csv", csv.str());

  const int code = !positive ? kExitFalsified : (store.all_stable() ? kExitOk : kExitUnstable);
  const json report{{"case", std::string(to_string(tag))},
                    {"power", case_power(tag)},
                    {"shift", fam.shift},
                    {"drift", fam.drift},
                    {"all_positive", fam.all_positive},
                    {"members", members}};
  store.write_artifact("multiplier.json", "json", report.dump(2) + "\n");
  json summary{{"case", std::string(to_string(tag))},
               {"c_fit", fam.members.front().c_fit},
               {"drift", fam.drift},
               {"all_positive", fam.all_positive},
               {"exit_code", code}};
  store.record_cell({"family", "multiplier.csv", store.all_stable(), summary});
  store.set_summary(summary);
  out(inv) << "case " << to_string(tag) << ", power " << short_number(case_power(tag)) << ", shift "
           << short_number(fam.shift) << "\n";
  for (const auto& r : fam.members) {
    out(inv) << "  alpha = " << short_number(r.mp.alpha) << "  c_fit = " << format_number(r.c_fit)
             << "  truncation change = " << short_number(r.truncation_change) << "\n";
  }
  out(inv) << "drift = " << short_number(fam.drift) << "\n";
  return store.finish(code);
}

}  // namespace oseen::cli
