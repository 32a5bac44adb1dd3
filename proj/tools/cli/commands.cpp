// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "example_constants.hpp"
#include "mvsde/analysis.hpp"
#include "mvsde/bounds.hpp"
#include "mvsde/errors.hpp"

namespace mvsde::cli {
namespace {

using Record = nlohmann::ordered_json;

std::filesystem::path output_path(const RunConfig& cfg, std::string_view suffix) {
  return std::filesystem::path(cfg.output.directory) / (cfg.output.prefix + std::string(suffix));
}

void print_row(std::ostream& out, std::string_view key, double value) {
  out << "  " << std::left << std::setw(22) << key << format_double(value) << '\n';
}

void print_row(std::ostream& out, std::string_view key, std::string_view value) {
  out << "  " << std::left << std::setw(22) << key << value << '\n';
}

std::string dump(const Record& record) { return record.dump(2) + "\n"; }

}  // namespace

void apply(RunConfig& config, const Overrides& overrides) {
  if (overrides.seed) config.sim.seed = *overrides.seed;
  if (overrides.out_dir) config.output.directory = *overrides.out_dir;
  if (overrides.threads) config.threads = std::max<std::size_t>(1, *overrides.threads);
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.has_constants) {
    throw ConfigError("bounds: missing section 'constants' (supply A, B and/or C, D)");
  }
  const auto& k = cfg.constants;
  const bool boundedness = k.A && k.B;
  const bool stabilization = k.C && k.D;
  if (!boundedness && !stabilization) {
    throw ConfigError("bounds: section 'constants' needs A and B, or C and D");
  }
  const double alpha = cfg.alpha;
  const double tau = cfg.sim.tau();

  Record rec;
  rec["alpha"] = alpha;
  rec["delay_steps"] = cfg.sim.delay_steps;
  rec["dt"] = cfg.sim.dt;
  rec["tau"] = tau;

  out << "delay-feedback bounds (alpha=" << format_double(alpha)
      << ", tau=" << format_double(tau) << " = " << cfg.sim.delay_steps << " x "
      << format_double(cfg.sim.dt) << ")\n";
  try {
    if (boundedness) {
      const auto b = bounds::boundedness_thresholds(alpha, *k.A, *k.B);
      const auto w = bounds::lyapunov_weights(alpha, *k.B);
      print_row(out, "tau1", b.tau1);
      print_row(out, "tau2", b.tau2);
      print_row(out, "tau_star", b.tau_star);
      print_row(out, "binding_star", bounds::to_string(b.binding));
      print_row(out, "zeta_B", w.zeta);
      print_row(out, "sigma_B", w.sigma);
      rec["tau1"] = b.tau1;
      rec["tau2"] = b.tau2;
      rec["tau_star"] = b.tau_star;
      rec["binding_star"] = std::string(bounds::to_string(b.binding));
      rec["zeta_B"] = w.zeta;
      rec["sigma_B"] = w.sigma;
      rec["tau_admissible_boundedness"] = tau > 0.0 && tau < b.tau_star;
    }
    if (stabilization) {
      const auto s = bounds::stabilization_thresholds(alpha, *k.C, *k.D);
      const auto w = bounds::lyapunov_weights(alpha, *k.D);
      print_row(out, "tau3", s.tau3);
      print_row(out, "tau4", s.tau4);
      print_row(out, "tau_double_star", s.tau_double_star);
      print_row(out, "binding_double_star", bounds::to_string(s.binding));
      print_row(out, "zeta_D", w.zeta);
      print_row(out, "sigma_D", w.sigma);
      rec["tau3"] = s.tau3;
      rec["tau4"] = s.tau4;
      rec["tau_double_star"] = s.tau_double_star;
      rec["binding_double_star"] = std::string(bounds::to_string(s.binding));
      rec["zeta_D"] = w.zeta;
      rec["sigma_D"] = w.sigma;
      if (tau > 0.0 && tau < s.tau_double_star) {
        const auto g = bounds::decay_rate(tau, alpha, *k.C, *k.D);
        print_row(out, "gamma", g.gamma);
        print_row(out, "gamma_delay_branch", g.delay_branch);
        print_row(out, "gamma_growth_branch", g.growth_branch);
        rec["gamma"] = g.gamma;
        rec["gamma_delay_branch"] = g.delay_branch;
        rec["gamma_growth_branch"] = g.growth_branch;
      } else {
        print_row(out, "gamma", "n/a (tau outside (0, tau_double_star))");
      }
    }
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("bounds: ") + e.what() +
                      "; raise control.alpha above the growth constant (B for boundedness, "
                      "D for stabilization)");
  }

  const auto path = output_path(cfg, "_bounds.json");
  write_file(path, dump(rec));
  out << "wrote " << path.string() << '\n';
  return kSuccess;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto model = cfg.build_model();
  auto records =
      run_replications(cfg.sim, model, cfg.control(), cfg.x0, RunOptions{cfg.threads});

  std::optional<double> aborted_at;
  std::size_t usable = records.front().size();
  for (const auto& rec : records) {
    if (rec.aborted_at) aborted_at = std::min(aborted_at.value_or(*rec.aborted_at), *rec.aborted_at);
    usable = std::min(usable, rec.size());
  }
  if (aborted_at) {
    for (auto& rec : records) {
      rec.aborted_at.reset();
      rec.times.resize(usable);
      rec.particle_mean_sq.resize(usable);
      rec.particle_mean.resize(usable);
      rec.i2_values.resize(usable);
      rec.delay_gap_sq.resize(usable);
      rec.generator_integral.resize(usable);
      for (auto& p : rec.sample_paths) p.resize(usable);
    }
  }
  const auto result = aggregate(std::move(records));

  std::ostringstream meansq;
  write_meansq_csv(meansq, result.series, aborted_at);
  const auto meansq_path = output_path(cfg, "_meansq.csv");
  write_file(meansq_path, meansq.str());
  out << "wrote " << meansq_path.string() << '\n';

  if (cfg.sim.sample_paths > 0) {
    std::ostringstream paths;
    write_paths_csv(paths, result.records, cfg.path_replications);
    const auto paths_path = output_path(cfg, "_paths.csv");
    write_file(paths_path, paths.str());
    out << "wrote " << paths_path.string() << '\n';
  }
  write_file(output_path(cfg, "_config.json"), to_json(cfg).dump(2) + "\n");

  out << "tau = " << format_double(cfg.sim.tau()) << " (" << cfg.sim.delay_steps << " steps of "
      << format_double(cfg.sim.dt) << ")\n";
  if (aborted_at) {
    out << "ABORTED: non-finite state at t=" << format_double(*aborted_at) << '\n';
    return kBlowUp;
  }
  return kSuccess;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const auto model = cfg.build_model();
  const auto& ch = cfg.check;
  Record rec;
  bool all_ok = true;
  auto verdict = [&](std::string_view name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    rec[std::string(name) + "_passed"] = ok;
    all_ok = all_ok && ok;
  };

  if (ch.audit) {
    if (!cfg.has_constants) throw ConfigError("check: audit requested but no 'constants' section");
    const auto report =
        audit_constants(model, cfg.constants, ch.audit_radius, ch.audit_samples, ch.audit_seed);
    for (const auto& c : report.checks) {
      const std::string name = "audit_" + std::string(to_string(c.which));
      verdict(name, c.passed,
              "constant=" + format_double(c.constant) +
                  " worst_ratio=" + format_double(c.worst_ratio));
      rec[name + "_worst_ratio"] = c.worst_ratio;
    }
  }

  const bool needs_sim = ch.delay_gap || ch.dynkin || ch.boundedness || ch.stability;
  if (needs_sim) {
    const auto result = run_monte_carlo(cfg.sim, model, cfg.control(), cfg.x0,
                                        RunOptions{cfg.threads});
    if (ch.delay_gap) {
      if (result.records.size() < 2) {
        throw ConfigError("check: delay_gap needs sim.n_replications >= 2");
      }
      const auto report = delay_gap_check(result.records);
      verdict("delay_gap", report.passed, "worst_margin=" + format_double(report.worst_margin));
      rec["delay_gap_worst_margin"] = report.worst_margin;
    }
    if (ch.dynkin) {
      const auto report = dynkin_from_records(result.records);
      verdict("dynkin", report.passed,
              "lhs=" + format_double(report.lhs) + " rhs=" + format_double(report.rhs) +
                  " relative=" + format_double(report.relative_discrepancy) +
                  " se=" + format_double(report.std_error));
      rec["dynkin_lhs"] = report.lhs;
      rec["dynkin_rhs"] = report.rhs;
      rec["dynkin_relative_discrepancy"] = report.relative_discrepancy;
    }
    if (ch.boundedness) {
      const auto report = boundedness_report(result.series, ch.burn_in_fraction);
      verdict("boundedness", report.passed,
              "max_post=" + format_double(report.max_post) +
                  " median_post=" + format_double(report.median_post) +
                  " max_pre=" + format_double(report.max_pre));
      rec["boundedness_max_post"] = report.max_post;
      rec["boundedness_median_post"] = report.median_post;
    }
    if (ch.stability) {
      if (!(cfg.has_constants && cfg.constants.C && cfg.constants.D)) {
        throw ConfigError("check: stability needs constants C and D");
      }
      double gamma = 0.0;
      try {
        gamma = bounds::decay_rate(cfg.sim.tau(), cfg.alpha, *cfg.constants.C,
                                   *cfg.constants.D).gamma;
      } catch (const PreconditionError& e) {
        throw ConfigError(std::string("check: stability: ") + e.what());
      }
      const auto fit = lyapunov_fit(result.series, ch.window_fraction);
      verdict("stability", fit.slope <= -gamma,
              "fitted_exponent=" + format_double(fit.slope) + " bound=-" + format_double(gamma) +
                  " r2=" + format_double(fit.r_squared));
      rec["stability_fitted_exponent"] = fit.slope;
      rec["stability_gamma"] = gamma;
    }
  }
  rec["all_passed"] = all_ok;
  write_file(output_path(cfg, "_check.json"), dump(rec));
  return all_ok ? kSuccess : kCheckFailed;
}

namespace {

RunConfig example_base() {
  namespace ex = example;
  RunConfig cfg;
  cfg.model = LinearMeanFieldModel::scalar(ex::kDriftState, ex::kDriftMean, ex::kDiffusionState,
                                           ex::kDiffusionMean, ex::kCommonState,
                                           ex::kCommonMean)
                  .coefficients();
  cfg.has_constants = true;
  cfg.constants.L = ex::kLipschitz;
  cfg.constants.A = ex::kGrowth;
  cfg.constants.B = ex::kMonotone;
  cfg.constants.C = ex::kGrowth;
  cfg.constants.D = ex::kMonotone;
  cfg.x0 = {ex::kInitialState};
  cfg.sim.n_particles = ex::kParticles;
  cfg.sim.n_replications = ex::kReplications;
  cfg.sim.sample_paths = ex::kSamplePaths;
  cfg.sim.seed = ex::kSeed;
  cfg.path_replications = 1;
  return cfg;
}

void write_run(const RunConfig& cfg, const MonteCarloResult& result,
               const std::filesystem::path& dir, std::string_view name) {
  std::ostringstream meansq, paths;
  write_meansq_csv(meansq, result.series);
  write_paths_csv(paths, result.records, cfg.path_replications);
  write_file(dir / (std::string(name) + "_meansq.csv"), meansq.str());
  write_file(dir / (std::string(name) + "_paths.csv"), paths.str());
}

}  // namespace

RunConfig example_uncontrolled_config() {
  RunConfig cfg = example_base();
  cfg.alpha = 0.0;
  cfg.sim.delay_steps = 0;
  cfg.sim.dt = example::kUncontrolledDt;
  cfg.sim.horizon = example::kUncontrolledHorizon;
  cfg.output.prefix = "uncontrolled";
  return cfg;
}

RunConfig example_controlled_config() {
  RunConfig cfg = example_base();
  cfg.alpha = example::kGain;
  cfg.sim.delay_steps = example::kControlledDelaySteps;
  cfg.sim.dt = example::kControlledDt;
  cfg.sim.horizon = example::kControlledHorizon;
  cfg.output.prefix = "controlled";
  cfg.check.stability = true;
  return cfg;
}

ExampleSummary reproduce_example(const std::filesystem::path& out_dir, std::size_t threads) {
  const RunConfig unc = example_uncontrolled_config();
  const RunConfig ctl = example_controlled_config();
  const RunOptions options{std::max<std::size_t>(1, threads)};

  const auto unc_result =
      run_monte_carlo(unc.sim, unc.build_model(), unc.control(), unc.x0, options);
  const auto ctl_result =
      run_monte_carlo(ctl.sim, ctl.build_model(), ctl.control(), ctl.x0, options);
  write_run(unc, unc_result, out_dir, "uncontrolled");
  write_run(ctl, ctl_result, out_dir, "controlled");

  const auto thresholds =
      bounds::stabilization_thresholds(ctl.alpha, *ctl.constants.C, *ctl.constants.D);
  const auto rate =
      bounds::decay_rate(ctl.sim.tau(), ctl.alpha, *ctl.constants.C, *ctl.constants.D);
  const auto ctl_fit = lyapunov_fit(ctl_result.series);
  const auto unc_fit = lyapunov_fit(unc_result.series);

  ExampleSummary s;
  s.tau_double_star = thresholds.tau_double_star;
  s.gamma = rate.gamma;
  s.fitted_exponent = ctl_fit.slope;
  s.fitted_r_squared = ctl_fit.r_squared;
  s.uncontrolled_exponent = unc_fit.slope;
  s.uncontrolled_initial_mean_sq = unc_result.series.values.front();
  s.uncontrolled_terminal_mean_sq = unc_result.series.values.back();
  s.controlled_terminal_mean_sq = ctl_result.series.values.back();

  Record rec;
  rec["alpha"] = ctl.alpha;
  rec["tau"] = ctl.sim.tau();
  rec["tau3"] = thresholds.tau3;
  rec["tau4"] = thresholds.tau4;
  rec["tau_double_star"] = s.tau_double_star;
  rec["gamma"] = s.gamma;
  rec["fitted_exponent"] = s.fitted_exponent;
  rec["fitted_r_squared"] = s.fitted_r_squared;
  rec["fit_window_t_lo"] = ctl_fit.t_lo;
  rec["fit_window_t_hi"] = ctl_fit.t_hi;
  rec["controlled_terminal_mean_sq"] = s.controlled_terminal_mean_sq;
  rec["uncontrolled_fitted_exponent"] = s.uncontrolled_exponent;
  rec["uncontrolled_initial_mean_sq"] = s.uncontrolled_initial_mean_sq;
  rec["uncontrolled_terminal_mean_sq"] = s.uncontrolled_terminal_mean_sq;
  rec["n_particles"] = ctl.sim.n_particles;
  rec["n_replications"] = ctl.sim.n_replications;
  rec["seed"] = ctl.sim.seed;
  write_file(out_dir / "summary.json", dump(rec));
  return s;
}

int cmd_reproduce_example(const std::filesystem::path& out_dir, std::size_t threads,
                          std::ostream& out) {
  const auto s = reproduce_example(out_dir, threads);
  out << "benchmark system, controlled with alpha=" << format_double(example::kGain)
      << ", tau=" << format_double(example::kDelay) << '\n';
  print_row(out, "tau_double_star", s.tau_double_star);
  print_row(out, "gamma", s.gamma);
  print_row(out, "fitted_exponent", s.fitted_exponent);
  print_row(out, "fitted_r_squared", s.fitted_r_squared);
  print_row(out, "uncontrolled_exponent", s.uncontrolled_exponent);
  out << "wrote CSVs and summary.json to " << out_dir.string() << '\n';
  return kSuccess;
}

}  // namespace mvsde::cli
