#ifndef SDWAVE_SOLVER_HPP
#define SDWAVE_SOLVER_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdwave/exponents.hpp"
#include "sdwave/grid.hpp"
#include "sdwave/norms.hpp"
#include "sdwave/propagator.hpp"
#include "sdwave/state.hpp"

namespace sdw {

/// Pointwise |u|^p, u|u|^{p-1}, or 0.
Field nonlinearity(const Field &u, double p, FKind kind);

/// f(u) evaluated on the 3/2 zero-padded grid and truncated back with the
/// 2/3 rule.
class NonlinearEvaluator {
public:
  NonlinearEvaluator(const Grid &grid, double p, FKind kind);

  struct Result {
    Spectrum f_hat;
    /// ∫ f(u) dx, the ρ = 0 coefficient before truncation.
    double integral = 0;
    /// Share of Σ|f̂|² on the padded grid lying outside the 2/3 shell.
    double aliasing = 0;
  };

  Result operator()(const Spectrum &u_hat) const;
  FKind kind() const { return kind_; }
  int padded_points() const { return M_; }

private:
  const Grid *grid_;
  double p_;
  FKind kind_;
  int M_;
  /// Padded flat index for each kept mode and its position on the grid.
  std::vector<Eigen::Index> pad_index_;
  /// Padded indices that survive the 2/3 truncation, paired with grid indices.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> keep_;
};

class BlowUpError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kBlowUpFactor = 1e12;

/// L² size of the data pair, hypot(‖u‖₂, ‖u_t‖₂); the blow-up guard scales with it.
double data_size(const Grid &grid, const State &state);

/// Largest |λ-| over the grid.
double max_stiff_rate(const Grid &grid, double sigma);
/// min(0.1, 0.25/max|λ-|).
double default_time_step(const Grid &grid, double sigma);

/// Exponential integrator for the semilinear problem with a fixed step.
/// Order 1 holds f(u) at the left end; order 2 is the exponential
/// trapezoid with an order-1 predictor. With f ≡ 0 a step is exactly the
/// linear propagator step.
class EtdIntegrator {
public:
  EtdIntegrator(const Grid &grid, double sigma, double p, FKind kind, double dt, int order);

  double dt() const { return dt_; }
  int order() const { return order_; }

  /// Arms the blow-up guard at kBlowUpFactor × data_size(initial).
  void arm_guard(const State &initial);
  /// One step. `integral` receives ∫ f(u) dx at the step's left end.
  State step(const State &state, double *integral = nullptr, double *aliasing = nullptr) const;
  /// ∫ f(u) dx for a state.
  double integral(const State &state) const;

private:
  const Grid *grid_;
  double dt_;
  int order_;
  LinearPropagator prop_;
  NonlinearEvaluator nonlinear_;
  Eigen::ArrayXd w0_, w1_, v0_, v1_;
  double guard_ = 0;
};

State etd_step(const EtdIntegrator &integrator, const State &state);

/// t = 0 followed by 1, r, r², ... up to t_final, and t_final itself.
std::vector<double> geometric_schedule(double t_final, double ratio = 1.1, double start = 1);

struct RunSpec {
  SimParams params;
  double dt = 0.1;
  int order = 2;
  double t_final = 10;
  std::vector<double> sample_times;
  /// Keep every sampled State in the result.
  bool keep_states = false;
};

struct Trajectory {
  std::vector<State> states;
  std::string integrator;
  double dt = 0;
};

struct RunResult {
  Trajectory trajectory;
  NormSeries series;
  /// ∫ f(u(t), x) dx at every step node.
  std::vector<double> integral_times;
  std::vector<double> integral_values;
  double max_aliasing = 0;
  /// Share of ‖u(T)‖₂ (mean removed) carried by points with |x| > 3L/4.
  double wraparound = 0;
  double wall_seconds = 0;
  long steps = 0;
};

/// Called once per sample with the state and its freshly computed norm row.
using SampleObserver = std::function<void(const State &, NormRow &)>;

/// Per-sample norms: mean-free L², mean-free |x|^δ L², Ḣ^{s̄}, energy, |û(0)|.
NormRow sample_norms(const Grid &grid, const State &state, double delta, double sbar);

/// Marches from (u0, u1). With f = none the state at each sample time is the
/// one-shot linear solution; otherwise fixed steps of spec.dt, sampling at
/// the step nearest each requested time. The observer sees every sample.
RunResult run(const Grid &grid, const Field &u0, const Field &u1, const RunSpec &spec,
              const SampleObserver &observer = {});

/// Φu on the uniform node set of `traj` (spacing h): linear part plus the
/// Duhamel integral with f(u) interpolated linearly between nodes.
Trajectory phi_map(const Grid &grid, const Trajectory &traj, const Spectrum &u0_hat, const Spectrum &u1_hat,
                   const SimParams &params);

struct PicardOptions {
  double T = 20;
  double dt = 0.2;
  int max_iter = 30;
  double tol = 1e-12;
};

struct PicardResult {
  Trajectory solution;
  /// ‖u_{k+1} - u_k‖_X for k = 0, 1, ...
  std::vector<double> differences;
  /// differences[k] / differences[k-1].
  std::vector<double> ratios;
  int iterations = 0;
  bool converged = false;
  bool non_contraction = false;
};

PicardResult picard_solve(const Grid &grid, const Field &u0, const Field &u1, const SimParams &params,
                          const PicardOptions &options);

/// Uniform nodes 0, h, ..., T with h = T / round(T / dt).
std::vector<double> uniform_nodes(double T, double dt);

} // namespace sdw

#endif
