#include "sdwave/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sdwave/diagnostics.hpp"

namespace sdw {

namespace dsp = dispersion;

Field nonlinearity(const Field &u, double p, FKind kind) {
  switch (kind) {
  case FKind::none: return Field::Zero(u.size());
  case FKind::abs_power: return u.abs().pow(p);
  case FKind::signed_power: return u * u.abs().pow(p - 1);
  }
  return Field::Zero(u.size());
}

NonlinearEvaluator::NonlinearEvaluator(const Grid &grid, double p, FKind kind)
    : grid_(&grid), p_(p), kind_(kind), M_(3 * grid.N / 2) {
  const int N = grid.N, n = grid.n;
  const int cut = N / 3;
  pad_index_.assign(static_cast<std::size_t>(grid.size()), -1);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    Eigen::Index rest = i, padded = 0, stride = 1;
    bool nyquist = false, kept = true;
    for (int a = 0; a < n; ++a) {
      const int m = grid.signed_mode(static_cast<int>(rest % N));
      rest /= N;
      nyquist = nyquist || m == -N / 2;
      kept = kept && std::abs(m) <= cut;
      padded += ((m + M_) % M_) * stride;
      stride *= M_;
    }
    if (nyquist) continue;
    pad_index_[i] = padded;
    if (kept) keep_.emplace_back(padded, i);
  }
}

NonlinearEvaluator::Result NonlinearEvaluator::operator()(const Spectrum &u_hat) const {
  Result r;
  r.f_hat = Spectrum::Zero(u_hat.size());
  if (kind_ == FKind::none) return r;
  const int n = grid_->n;
  Eigen::Index padded_size = 1;
  for (int a = 0; a < n; ++a) padded_size *= M_;
  Spectrum padded = Spectrum::Zero(padded_size);
  for (Eigen::Index i = 0; i < u_hat.size(); ++i)
    if (pad_index_[i] >= 0) padded[pad_index_[i]] = u_hat[i];
  Spectrum phys;
  fft(n, M_, padded, phys, +1);
  const Field u = phys.real() * grid_->mode_measure();
  const Field f = nonlinearity(u, p_, kind_);
  fft(n, M_, Spectrum(f.cast<std::complex<double>>()), padded, -1);
  padded *= std::pow(2 * grid_->L / M_, n);
  r.integral = padded[0].real();
  const double total = padded.abs2().sum();
  double kept = 0;
  for (const auto &[pi, gi] : keep_) {
    r.f_hat[gi] = padded[pi];
    kept += std::norm(padded[pi]);
  }
  r.aliasing = total > 0 ? std::max(0.0, total - kept) / total : 0.0;
  return r;
}

double max_stiff_rate(const Grid &grid, double sigma) {
  double worst = 0;
  for (Eigen::Index s = 0; s < grid.shell_rho.size(); ++s)
    worst = std::max(worst, std::abs(dsp::roots(sigma, grid.shell_rho[s]).lambda_minus));
  return worst;
}

double default_time_step(const Grid &grid, double sigma) {
  const double rate = max_stiff_rate(grid, sigma);
  return rate > 0 ? std::min(0.1, 0.25 / rate) : 0.1;
}

EtdIntegrator::EtdIntegrator(const Grid &grid, double sigma, double p, FKind kind, double dt, int order)
    : grid_(&grid), dt_(dt), order_(order), prop_(grid, sigma), nonlinear_(grid, p, kind) {
  if (!(dt > 0)) throw std::invalid_argument("time step must be positive");
  if (order != 1 && order != 2) throw std::invalid_argument("integrator order must be 1 or 2");
  if (kind == FKind::none) return;
  const auto weights = per_shell(grid, [&](double rho) { return dsp::duhamel_weights(sigma, dt, rho, order); });
  w0_.resize(grid.size());
  w1_.resize(grid.size());
  v0_.resize(grid.size());
  v1_.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const auto &w = weights[grid.shell_of[i]];
    w0_[i] = w.w0;
    w1_[i] = w.w1 / dt;
    v0_[i] = w.v0;
    v1_[i] = w.v1 / dt;
  }
}

double data_size(const Grid &grid, const State &state) {
  return std::hypot(l2_spectral(grid, state.u_hat), l2_spectral(grid, state.v_hat));
}

void EtdIntegrator::arm_guard(const State &initial) {
  guard_ = kBlowUpFactor * data_size(*grid_, initial);
}

double EtdIntegrator::integral(const State &state) const { return nonlinear_(state.u_hat).integral; }

State EtdIntegrator::step(const State &state, double *integral, double *aliasing) const {
  State out = prop_.step(state, dt_);
  if (nonlinear_.kind() == FKind::none) {
    if (integral) *integral = 0;
    if (aliasing) *aliasing = 0;
    return out;
  }
  const auto f0 = nonlinear_(state.u_hat);
  if (integral) *integral = f0.integral;
  double alias = f0.aliasing;
  if (order_ == 1) {
    out.u_hat += w0_ * f0.f_hat;
    out.v_hat += v0_ * f0.f_hat;
  } else {
    const Spectrum predictor = out.u_hat + w0_ * f0.f_hat;
    const auto f1 = nonlinear_(predictor);
    alias = std::max(alias, f1.aliasing);
    const Spectrum df = f1.f_hat - f0.f_hat;
    out.u_hat += w0_ * f0.f_hat + w1_ * df;
    out.v_hat += v0_ * f0.f_hat + v1_ * df;
  }
  if (aliasing) *aliasing = alias;
  if (guard_ > 0) {
    const double norm = l2_spectral(*grid_, out.u_hat);
    if (!(norm <= guard_)) {
      std::ostringstream os;
      os << "blow-up guard tripped at t = " << out.t << ": L2 norm " << norm << " exceeds " << guard_
         << "; initial data are not small enough";
      throw BlowUpError(os.str());
    }
  }
  return out;
}

State etd_step(const EtdIntegrator &integrator, const State &state) { return integrator.step(state); }

std::vector<double> geometric_schedule(double t_final, double ratio, double start) {
  if (!(ratio > 1)) throw std::invalid_argument("sample ratio must exceed 1");
  std::vector<double> out{0.0};
  for (double t = start; t < t_final * (1 - 1e-12); t *= ratio) out.push_back(t);
  if (t_final > 0) out.push_back(t_final);
  return out;
}

NormRow sample_norms(const Grid &grid, const State &state, double delta, double sbar) {
  NormRow row;
  row.t = state.t;
  row.mean = std::abs(state.u_hat[0]);
  row.l2 = l2_spectral(grid, state.u_hat, true);
  Spectrum centered = state.u_hat;
  centered[0] = 0;
  row.wdelta = weighted_l2(grid, inverse(grid, centered), delta);
  row.hs1 = hsdot_norm(grid, state.u_hat, sbar);
  row.energy = energy(grid, state);
  return row;
}

namespace {

double wraparound_share(const Grid &grid, const Spectrum &u_hat) {
  Spectrum centered = u_hat;
  centered[0] = 0;
  const Field u = inverse(grid, centered);
  const double total = u.square().sum();
  if (total == 0) return 0;
  const double outer = (grid.radius > 0.75 * grid.L).select(u.square(), 0.0).sum();
  return std::sqrt(outer / total);
}

} // namespace

RunResult run(const Grid &grid, const Field &u0, const Field &u1, const RunSpec &spec, const SampleObserver &observer) {
  const auto start = std::chrono::steady_clock::now();
  const SimParams &prm = spec.params;
  const double sigma = prm.sigma.value();
  const double delta = prm.delta.value();
  const double sbar = prm.sbar.value();
  RunResult res;
  std::vector<double> targets = spec.sample_times.empty() ? geometric_schedule(spec.t_final) : spec.sample_times;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const Spectrum u0_hat = forward(grid, u0), u1_hat = forward(grid, u1);
  State last{0, u0_hat, u1_hat};

  auto record = [&](const State &s) {
    res.series.rows.push_back(sample_norms(grid, s, delta, sbar));
    if (observer) observer(s, res.series.rows.back());
    if (spec.keep_states) res.trajectory.states.push_back(s);
    last = s;
  };

  if (prm.f_kind == FKind::none) {
    res.trajectory.integrator = "exact";
    for (double t : targets) {
      if (t < 0 || t > spec.t_final * (1 + 1e-12)) continue;
      record(linear_solution(grid, sigma, u0_hat, u1_hat, t));
    }
  } else {
    res.trajectory.integrator = "etd" + std::to_string(spec.order);
    res.trajectory.dt = spec.dt;
    EtdIntegrator etd(grid, sigma, prm.p.value(), prm.f_kind, spec.dt, spec.order);
    State s = last;
    etd.arm_guard(s);
    const long total = std::lround(spec.t_final / spec.dt);
    std::vector<long> sample_steps;
    for (double t : targets) {
      const long k = std::lround(t / spec.dt);
      if (k >= 0 && k <= total && (sample_steps.empty() || sample_steps.back() != k)) sample_steps.push_back(k);
    }
    std::size_t next = 0;
    bool warned = false;
    for (long k = 0;; ++k) {
      s.t = k * spec.dt;
      if (next < sample_steps.size() && sample_steps[next] == k) {
        record(s);
        ++next;
      }
      if (k == total) {
        res.integral_times.push_back(s.t);
        res.integral_values.push_back(etd.integral(s));
        break;
      }
      double integral = 0, alias = 0;
      State n1 = etd.step(s, &integral, &alias);
      res.integral_times.push_back(s.t);
      res.integral_values.push_back(integral);
      res.max_aliasing = std::max(res.max_aliasing, alias);
      if (alias > 1e-8 && !warned && s.t > 0) {
        std::ostringstream os;
        os << "aliasing share " << alias << " above 1e-8 at t = " << s.t;
        warn(os.str());
        warned = true;
      }
      s = std::move(n1);
      ++res.steps;
    }
  }
  res.wraparound = wraparound_share(grid, last.u_hat);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::vector<double> uniform_nodes(double T, double dt) {
  if (!(T > 0) || !(dt > 0)) throw std::invalid_argument("uniform_nodes: T and dt must be positive");
  const long m = std::max(1L, std::lround(T / dt));
  std::vector<double> out(static_cast<std::size_t>(m + 1));
  for (long j = 0; j <= m; ++j) out[j] = T * static_cast<double>(j) / static_cast<double>(m);
  return out;
}

Trajectory phi_map(const Grid &grid, const Trajectory &traj, const Spectrum &u0_hat, const Spectrum &u1_hat,
                   const SimParams &params) {
  const auto &nodes = traj.states;
  if (nodes.size() < 2) throw std::invalid_argument("phi_map: trajectory needs at least two nodes");
  const double h = nodes[1].t - nodes[0].t;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (nodes[j].u_hat.size() != grid.size()) throw std::invalid_argument("phi_map: trajectory is on another grid");
    if (std::abs(nodes[j].t - j * h) > 1e-9 * std::max(1.0, j * h))
      throw std::invalid_argument("phi_map: trajectory nodes are not uniform from t = 0");
  }
  const double sigma = params.sigma.value();
  Trajectory out;
  out.integrator = "picard";
  out.dt = h;
  out.states.reserve(nodes.size());
  const State initial{0, u0_hat, u1_hat};
  out.states.push_back(initial);
  if (params.f_kind == FKind::none) {
    for (std::size_t j = 1; j < nodes.size(); ++j)
      out.states.push_back(linear_solution(grid, sigma, u0_hat, u1_hat, nodes[j].t));
    return out;
  }
  const LinearPropagator prop(grid, sigma);
  const NonlinearEvaluator nonlinear(grid, params.p.value(), params.f_kind);
  const auto weights = per_shell(grid, [&](double rho) { return dsp::duhamel_weights(sigma, h, rho, 2); });
  Eigen::ArrayXd w0(grid.size()), w1(grid.size()), v0(grid.size()), v1(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const auto &w = weights[grid.shell_of[i]];
    w0[i] = w.w0;
    w1[i] = w.w1 / h;
    v0[i] = w.v0;
    v1[i] = w.v1 / h;
  }
  // Linear part stepped exactly; Duhamel part carried as its own state.
  State lin = initial;
  State duh{0, Spectrum::Zero(grid.size()), Spectrum::Zero(grid.size())};
  Spectrum f_prev = nonlinear(nodes[0].u_hat).f_hat;
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    lin = prop.step(lin, h);
    duh = prop.step(duh, h);
    const Spectrum f_next = nonlinear(nodes[j].u_hat).f_hat;
    const Spectrum df = f_next - f_prev;
    duh.u_hat += w0 * f_prev + w1 * df;
    duh.v_hat += v0 * f_prev + v1 * df;
    f_prev = f_next;
    out.states.push_back(State{nodes[j].t, lin.u_hat + duh.u_hat, lin.v_hat + duh.v_hat});
  }
  return out;
}

namespace {

Trajectory difference(const Trajectory &a, const Trajectory &b) {
  Trajectory d;
  d.states.reserve(a.states.size());
  for (std::size_t j = 0; j < a.states.size(); ++j)
    d.states.push_back(State{a.states[j].t, a.states[j].u_hat - b.states[j].u_hat, a.states[j].v_hat - b.states[j].v_hat});
  return d;
}

} // namespace

PicardResult picard_solve(const Grid &grid, const Field &u0, const Field &u1, const SimParams &params,
                          const PicardOptions &options) {
  const double sigma = params.sigma.value();
  const XNormSpec xs = x_norm_spec(grid.n, sigma, params.delta.value(), params.sbar.value());
  const Spectrum u0_hat = forward(grid, u0), u1_hat = forward(grid, u1);
  PicardResult res;
  Trajectory current;
  current.integrator = "picard";
  for (double t : uniform_nodes(options.T, options.dt))
    current.states.push_back(linear_solution(grid, sigma, u0_hat, u1_hat, t));
  current.dt = current.states[1].t;
  for (int k = 0; k < options.max_iter; ++k) {
    Trajectory next = phi_map(grid, current, u0_hat, u1_hat, params);
    const double d = x_norm(grid, difference(next, current).states, xs);
    const double size = x_norm(grid, next.states, xs);
    res.differences.push_back(d);
    if (res.differences.size() >= 2) {
      const double prev = res.differences[res.differences.size() - 2];
      res.ratios.push_back(prev > 0 ? d / prev : 0.0);
    }
    res.iterations = k + 1;
    current = std::move(next);
    if (res.ratios.size() >= 2 && res.ratios.back() >= 1 && res.ratios[res.ratios.size() - 2] >= 1 &&
        !res.non_contraction) {
      res.non_contraction = true;
      warn("Picard iteration is not contracting: two consecutive ratios >= 1");
    }
    if (d <= options.tol * size) {
      res.converged = true;
      break;
    }
  }
  res.solution = std::move(current);
  return res;
}

} // namespace sdw
