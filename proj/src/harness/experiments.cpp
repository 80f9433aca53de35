#include "sdwave/harness/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "sdwave/diagnostics.hpp"
#include "sdwave/propagator.hpp"

namespace sdw::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string out_dir(const ExperimentConfig &c, const RunOptions &o) { return o.out_dir ? *o.out_dir : c.outputs.dir; }

double tolerance(const RunOptions &o, double fallback, const ExperimentConfig &c) {
  if (o.tolerance) return *o.tolerance;
  if (c.fit.tolerance) return *c.fit.tolerance;
  return fallback;
}

bool any_failed(const std::vector<RateReport> &reports) {
  for (const auto &r : reports)
    if (r.verdict == Verdict::fail) return true;
  return false;
}

json constants_json(const ProfileConstants &c) {
  json j;
  j["theta0"] = c.theta0;
  j["theta1"] = c.theta1;
  j["big_theta"] = c.big_theta;
  j["integral"] = c.integral;
  j["tail_bound"] = number_or_null(c.tail_bound);
  j["tail_exponent"] = c.tail_exponent;
  j["tail_coefficient"] = c.tail_coefficient;
  j["horizon"] = c.horizon;
  j["tail_warning"] = c.tail_warning;
  return j;
}

json grid_json(const Grid &g) {
  json j;
  j["n"] = g.n;
  j["N"] = g.N;
  j["L"] = g.L;
  j["dx"] = g.dx;
  j["dk"] = g.dk;
  j["spectrum_bytes"] = g.spectrum_bytes();
  return j;
}

std::vector<double> ratio_h(const NormSeries &s) {
  std::vector<double> out;
  for (const auto &r : s.rows) {
    const double g = r.g_norm.value_or(0);
    out.push_back(r.herr && g > 0 ? *r.herr / g : std::nan(""));
  }
  return out;
}

/// Shared by linear and simulate so that f = none gives identical bytes.
Outcome evolve(const ExperimentConfig &cfg_in, const RunOptions &options, bool force_linear,
               const std::string &subcommand) {
  const auto start = Clock::now();
  ExperimentConfig cfg = cfg_in;
  if (force_linear) cfg.params.f_kind = FKind::none;
  const SimParams &prm = cfg.params;
  const bool linear = prm.f_kind == FKind::none;
  Outcome out;

  if (cfg.verify && !linear) {
    const auto report = validate_hypotheses(prm, cfg.mode);
    if (!report.overall) {
      std::ostringstream os;
      os << "parameters violate the hypotheses of " << to_string(cfg.mode) << ":";
      for (const auto &h : report.entries)
        if (!h.satisfied) os << " [" << h.name << "]";
      warn(os.str());
      out.summary["hypotheses"] = to_json(report);
      out.exit_code = 1;
      return out;
    }
  }

  const Grid grid = build_grid(cfg);
  const Field u0 = build_data(grid, cfg.u0);
  const Field u1 = build_data(grid, cfg.u1);
  const double sigma = prm.sigma.value();

  RunSpec spec;
  spec.params = prm;
  spec.t_final = cfg.integrator.t_final;
  spec.order = cfg.integrator.order;
  spec.dt = resolve_dt(cfg, grid);
  spec.sample_times = geometric_schedule(spec.t_final, cfg.integrator.ratio, cfg.integrator.start);
  spec.keep_states = !linear;

  ProfileConstants constants = profile_constants(grid, u0, u1, {}, {}, prm);
  double initial_l2 = 0, peak_l2 = 0;
  auto observer = [&](const State &s, NormRow &row) {
    const double full = l2_spectral(grid, s.u_hat);
    if (s.t == 0) initial_l2 = data_size(grid, s);
    peak_l2 = std::max(peak_l2, full);
    if (linear) diagnose(grid, s, constants, sigma, true, row);
  };
  RunResult res;
  try {
    res = run(grid, u0, u1, spec, observer);
  } catch (const BlowUpError &e) {
    out.exit_code = 1;
    out.summary["error"] = e.what();
    return out;
  }
  if (!linear) {
    constants = profile_constants(grid, u0, u1, res.integral_times, res.integral_values, prm);
    diffusion_diagnostic(grid, res.trajectory, constants, prm, res.series);
  }
  out.series = res.series;

  const WindowPolicy window = resolve_window(cfg);
  const auto t = out.series.times();
  const int n = prm.n;
  if (linear) {
    const double tol = tolerance(options, kLinearTolerance, cfg);
    const double predicted = constants.theta1 != 0 ? profile_g_rate(n, prm.sigma).value()
                                                   : profile_h_rate(n, prm.sigma).value();
    out.reports.push_back(rate_report("l2", t, out.series.column("l2"), window, predicted, tol));
    const double remainder = linear_remainder_rate(n, prm.sigma, prm.theta, prm.theta).value();
    out.reports.push_back(
        rate_report("herr", t, out.series.column("herr"), window, remainder, tol, Comparison::at_most));
  } else {
    const double tol = tolerance(options, kSemilinearTolerance, cfg);
    const auto decay = predicted_decay(n, prm.sigma, prm.r, prm.delta, prm.sbar);
    out.reports.push_back(rate_report("l2", t, out.series.column("l2"), window, decay.l2.value(), tol));
    out.reports.push_back(rate_report("wdelta", t, out.series.column("wdelta"), window, decay.weighted.value(), tol));
    out.reports.push_back(rate_report("hs1", t, out.series.column("hs1"), window, decay.hsbar.value(), tol));
    std::optional<double> remainder;
    std::string note;
    try {
      remainder = profile_remainder_rate(n, prm.sigma, prm.p, prm.delta, prm.theta, prm.nu, prm.sbar).value();
    } catch (const std::exception &e) {
      note = e.what();
    }
    auto r = rate_report("gerr", t, out.series.column("gerr"), window, remainder, tol, Comparison::at_most);
    if (!note.empty()) r.note = note;
    out.reports.push_back(r);
  }

  const double t_end = t.empty() ? 0 : t.back();
  const bool ratio_g_decreasing = strictly_decreasing(t, out.series.column("ratio_g"), t_end / 10, t_end);
  out.summary["subcommand"] = subcommand;
  out.summary["grid"] = grid_json(grid);
  out.summary["dt"] = linear ? json(nullptr) : json(spec.dt);
  out.summary["integrator"] = res.trajectory.integrator;
  out.summary["steps"] = res.steps;
  out.summary["constants"] = constants_json(constants);
  out.summary["ratio_g_decreasing_last_decade"] = ratio_g_decreasing;
  if (linear)
    out.summary["ratio_h_decreasing_last_decade"] = strictly_decreasing(t, ratio_h(out.series), t_end / 10, t_end);
  out.summary["final_mean_mode"] = out.series.rows.empty() ? 0.0 : out.series.rows.back().mean;
  out.summary["wraparound"] = res.wraparound;
  out.summary["max_aliasing"] = res.max_aliasing;
  out.summary["guard_margin"] = peak_l2 > 0 ? kBlowUpFactor * initial_l2 / peak_l2 : kBlowUpFactor;
  out.summary["reports"] = to_json(out.reports);
  out.exit_code = any_failed(out.reports) ? 1 : 0;

  if (options.write) {
    OutputDir dir(out_dir(cfg, options));
    dir.write_text("norms.csv", out.series.to_csv());
    dir.write_json("rates.json", to_json(out.reports));
    if (cfg.outputs.snapshots) {
      State final_state = linear ? linear_solution(grid, sigma, forward(grid, u0), forward(grid, u1), t_end)
                                 : res.trajectory.states.back();
      dir.write_field("u_final.bin", grid, inverse(grid, final_state.u_hat));
    }
    dir.add_timing("run", res.wall_seconds);
    dir.add_timing("total", seconds_since(start));
    dir.write_manifest(subcommand, dump_config(cfg_in));
  }
  return out;
}

} // namespace

Outcome cli_validate(const ExperimentConfig &config, const RunOptions &options) {
  Outcome out;
  const auto report = validate_hypotheses(config.params, config.mode);
  out.summary = to_json(report);
  out.exit_code = report.overall ? 0 : 1;
  if (options.write) {
    OutputDir dir(out_dir(config, options));
    dir.write_json("hypotheses.json", out.summary);
    dir.write_manifest("validate", dump_config(config));
  }
  return out;
}

Outcome cli_linear(const ExperimentConfig &config, const RunOptions &options) {
  return evolve(config, options, true, "linear");
}

Outcome cli_simulate(const ExperimentConfig &config, const RunOptions &options) {
  return evolve(config, options, false, "simulate");
}

Outcome cli_kernel_table(const ExperimentConfig &config, const RunOptions &options) {
  const auto start = Clock::now();
  Outcome out;
  const Grid grid = build_grid(config);
  const Field datum = build_data(grid, config.u1);
  std::vector<double> times = config.kernel.times;
  if (times.empty()) {
    times = geometric_schedule(config.integrator.t_final, config.integrator.ratio, config.integrator.start);
    times.erase(times.begin());
  }
  const double sigma = config.params.sigma.value();
  KernelTable table = kernel_rate_table(grid, sigma, config.kernel.which, config.kernel.piece, config.kernel.theta,
                                        datum, times);
  out.reports.push_back(kernel_table_report(table, resolve_window(config), tolerance(options, kLinearTolerance, config)));
  out.exit_code = any_failed(out.reports) ? 1 : 0;
  std::string csv = "t,norm\n";
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    std::ostringstream os;
    os.precision(17);
    os << table.t[i] << ',' << table.norm[i] << '\n';
    csv += os.str();
  }
  out.summary["grid"] = grid_json(grid);
  out.summary["kernel"] = to_string(table.which);
  out.summary["piece"] = to_string(table.piece);
  out.summary["theta"] = table.theta;
  out.summary["reports"] = to_json(out.reports);
  if (options.write) {
    OutputDir dir(out_dir(config, options));
    dir.write_text("kernel_table.csv", csv);
    dir.write_json("rates.json", to_json(out.reports));
    dir.add_timing("total", seconds_since(start));
    dir.write_manifest("kernel-table", dump_config(config));
  }
  return out;
}

Outcome cli_picard(const ExperimentConfig &config, const RunOptions &options) {
  const auto start = Clock::now();
  Outcome out;
  const Grid grid = build_grid(config);
  const Field u0 = build_data(grid, config.u0);
  const Field u1 = build_data(grid, config.u1);
  const SimParams &prm = config.params;
  const PicardResult pic = picard_solve(grid, u0, u1, prm, config.picard);
  const double picard_seconds = seconds_since(start);

  // ETD marching on the same nodes.
  const auto nodes = uniform_nodes(config.picard.T, config.picard.dt);
  const double h = nodes[1];
  EtdIntegrator etd(grid, prm.sigma.value(), prm.p.value(), prm.f_kind, h, 2);
  State s{0, forward(grid, u0), forward(grid, u1)};
  double gap = 0, scale = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j > 0) {
      s = etd.step(s);
      s.t = nodes[j];
    }
    gap = std::max(gap, l2_spectral(grid, pic.solution.states[j].u_hat - s.u_hat));
    scale = std::max(scale, l2_spectral(grid, s.u_hat));
  }
  const double relative_gap = scale > 0 ? gap / scale : gap;

  bool monotone_after_2 = true;
  // ratios[i] is r_{i+1}; check r_k for k >= 2.
  for (std::size_t k = 1; k + 1 < pic.ratios.size(); ++k)
    if (pic.ratios[k + 1] > pic.ratios[k]) monotone_after_2 = false;
  json ratios = json::array(), diffs = json::array();
  for (double r : pic.ratios) ratios.push_back(number_or_null(r));
  for (double d : pic.differences) diffs.push_back(number_or_null(d));
  out.summary["grid"] = grid_json(grid);
  out.summary["nodes"] = nodes.size();
  out.summary["iterations"] = pic.iterations;
  out.summary["converged"] = pic.converged;
  out.summary["non_contraction"] = pic.non_contraction;
  out.summary["differences"] = diffs;
  out.summary["ratios"] = ratios;
  out.summary["final_ratio"] = pic.ratios.empty() ? json(nullptr) : number_or_null(pic.ratios.back());
  out.summary["ratios_nonincreasing_after_2"] = monotone_after_2;
  out.summary["marching_gap_relative"] = relative_gap;
  out.exit_code = pic.converged && !pic.non_contraction ? 0 : 1;
  if (options.write) {
    OutputDir dir(out_dir(config, options));
    dir.write_json("picard.json", out.summary);
    dir.add_timing("picard", picard_seconds);
    dir.add_timing("total", seconds_since(start));
    dir.write_manifest("picard", dump_config(config));
  }
  return out;
}

} // namespace sdw::harness
