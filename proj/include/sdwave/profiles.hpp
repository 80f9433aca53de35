#ifndef SDWAVE_PROFILES_HPP
#define SDWAVE_PROFILES_HPP

#include <string>
#include <vector>

#include "sdwave/exponents.hpp"
#include "sdwave/grid.hpp"
#include "sdwave/norms.hpp"
#include "sdwave/solver.hpp"

namespace sdw {

enum class Profile { G, H };
std::string to_string(Profile p);

/// Ĝσ = ρ^{-2σ} e^{-ρ^{2(1-σ)} t} (0 at ρ = 0) or Ĥσ = e^{-ρ^{2(1-σ)} t}.
Spectrum profile_spectrum(const Grid &grid, double sigma, Profile which, double t);
Field profile_field(const Grid &grid, double sigma, Profile which, double t);

struct ProfileConstants {
  double theta0 = 0;
  double theta1 = 0;
  /// θ1 + ∫₀^T ∫ f(u) + tail.
  double big_theta = 0;
  /// ∫₀^T ∫ f(u) dx dt by the trapezoid rule over step nodes.
  double integral = 0;
  /// Power-law extrapolation of ∫_T^∞ ∫ f(u) dx dt.
  double tail_bound = 0;
  double tail_exponent = 0;
  double tail_coefficient = 0;
  double horizon = 0;
  bool tail_warning = false;
};

/// θ_j = ∫ u_j. For f ≠ none the time integral of ∫f(u) runs over the run's
/// step nodes and the tail C·⟨T⟩^{ζ+1}/|ζ+1| uses ζ = zeta(n, σ, 1, p, 0) with
/// C fitted over the last decade of the integrand. Warns when the tail exceeds
/// 1% of |Θ|.
ProfileConstants profile_constants(const Grid &grid, const Field &u0, const Field &u1,
                                   const std::vector<double> &integral_times,
                                   const std::vector<double> &integral_values, const SimParams &params);

/// Fills gerr = ‖u - ΘGσ‖₂ and ratio_g = gerr/‖ΘGσ‖₂, plus
/// herr = ‖u - θ0 Hσ - θ1 Gσ‖₂ when `linear` is set. The ρ = 0 mode is left
/// out of all three; ratio_g is omitted when Θ = 0.
void diagnose(const Grid &grid, const State &state, const ProfileConstants &constants, double sigma, bool linear,
              NormRow &row);

/// diagnose over a kept trajectory, row by row.
void diffusion_diagnostic(const Grid &grid, const Trajectory &traj, const ProfileConstants &constants,
                          const SimParams &params, NormSeries &series);

} // namespace sdw

#endif
