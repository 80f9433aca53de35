#include "sdwave/profiles.hpp"

#include <cmath>
#include <sstream>

#include "sdwave/diagnostics.hpp"

namespace sdw {

std::string to_string(Profile p) { return p == Profile::G ? "G" : "H"; }

Spectrum profile_spectrum(const Grid &grid, double sigma, Profile which, double t) {
  if (!(t >= 0)) throw std::invalid_argument("profile time must be nonnegative");
  const Eigen::ArrayXd values = radial_array(grid, [&](double rho) {
    const auto s = dispersion::profile_symbols(sigma, t, rho);
    return which == Profile::G ? s.g_hat : s.h_hat;
  });
  return values.cast<std::complex<double>>();
}

Field profile_field(const Grid &grid, double sigma, Profile which, double t) {
  return inverse(grid, profile_spectrum(grid, sigma, which, t));
}

ProfileConstants profile_constants(const Grid &grid, const Field &u0, const Field &u1,
                                   const std::vector<double> &integral_times,
                                   const std::vector<double> &integral_values, const SimParams &params) {
  ProfileConstants c;
  c.theta0 = u0.sum() * grid.cell_measure();
  c.theta1 = u1.sum() * grid.cell_measure();
  c.big_theta = c.theta1;
  if (params.f_kind == FKind::none || integral_times.size() < 2) return c;
  if (integral_times.size() != integral_values.size()) throw std::invalid_argument("integral series length mismatch");
  for (std::size_t i = 1; i < integral_times.size(); ++i)
    c.integral += 0.5 * (integral_times[i] - integral_times[i - 1]) * (integral_values[i] + integral_values[i - 1]);
  const double T = integral_times.back();
  c.horizon = T;
  c.tail_exponent = zeta(grid.n, params.sigma, 1, params.p, 0).value();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < integral_times.size(); ++i) {
    const double t = integral_times[i];
    if (t < T / 10 || t <= 0) continue;
    const double b = std::pow(t, c.tail_exponent);
    num += integral_values[i] * b;
    den += b * b;
  }
  c.tail_coefficient = den > 0 ? num / den : 0;
  if (c.tail_exponent < -1) {
    c.tail_bound = c.tail_coefficient * std::pow(std::sqrt(1 + T * T), c.tail_exponent + 1) / -(c.tail_exponent + 1);
  } else {
    c.tail_bound = std::nan("");
    warn("integrand exponent >= -1: the time integral of f(u) has no finite power-law tail");
  }
  c.big_theta = c.theta1 + c.integral + (std::isfinite(c.tail_bound) ? c.tail_bound : 0.0);
  if (!(std::abs(c.tail_bound) <= 0.01 * std::abs(c.big_theta))) {
    c.tail_warning = true;
    std::ostringstream os;
    os << "tail estimate " << c.tail_bound << " exceeds 1% of Theta = " << c.big_theta;
    warn(os.str());
  }
  return c;
}

void diagnose(const Grid &grid, const State &state, const ProfileConstants &constants, double sigma, bool linear,
              NormRow &row) {
  const Spectrum g = profile_spectrum(grid, sigma, Profile::G, state.t);
  Spectrum rem = state.u_hat - constants.big_theta * g;
  rem[0] = 0;
  const double gerr = l2_spectral(grid, rem);
  row.gerr = gerr;
  const double scale = std::abs(constants.big_theta) * l2_spectral(grid, g);
  row.g_norm = scale;
  if (scale > 0) row.ratio_g = gerr / scale;
  else row.ratio_g.reset();
  if (linear) {
    Spectrum r2 = state.u_hat - constants.theta0 * profile_spectrum(grid, sigma, Profile::H, state.t) -
                  constants.theta1 * g;
    r2[0] = 0;
    row.herr = l2_spectral(grid, r2);
  }
}

void diffusion_diagnostic(const Grid &grid, const Trajectory &traj, const ProfileConstants &constants,
                          const SimParams &params, NormSeries &series) {
  if (traj.states.size() != series.rows.size()) throw std::invalid_argument("trajectory and series differ in length");
  const bool linear = params.f_kind == FKind::none;
  for (std::size_t i = 0; i < traj.states.size(); ++i)
    diagnose(grid, traj.states[i], constants, params.sigma.value(), linear, series.rows[i]);
}

} // namespace sdw
