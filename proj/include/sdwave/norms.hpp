#ifndef SDWAVE_NORMS_HPP
#define SDWAVE_NORMS_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sdwave/grid.hpp"
#include "sdwave/state.hpp"

namespace sdw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// (Σ |u|^q dx^n)^{1/q}; q = kInf gives max |u|.
double lq_norm(const Grid &grid, const Field &u, double q);

/// (Σ |û|² (dk/2π)^n)^{1/2}, optionally without the ρ = 0 mode.
double l2_spectral(const Grid &grid, const Spectrum &u_hat, bool exclude_mean = false);

/// ‖(-Δ)^{s/2}u‖₂ from the spectrum. Negative s requires û(0) = 0.
double hsdot_norm(const Grid &grid, const Spectrum &u_hat, double s);

/// ‖|x|^δ u‖₂ with the min-image distance.
double weighted_l2(const Grid &grid, const Field &u, double delta);
/// ‖⟨x⟩^δ u‖₂.
double bracket_weighted_l2(const Grid &grid, const Field &u, double delta);

/// Lorentz quasinorm ‖u‖_{q,r} from the decreasing rearrangement of |u| over
/// cells of measure dx^n. r = kInf is sup_s s^{1/q} u*(s); finite r integrates
/// (s^{1/q} u*(s))^r ds/s exactly over the piecewise-constant u*.
double lorentz_quasinorm(const Grid &grid, const Field &u, double q, double r);

/// ½‖v‖₂² + ½‖∇u‖₂², computed spectrally.
double energy(const Grid &grid, const State &state);

/// Time weights of the X-norm for the r = 1 branch:
/// ⟨t⟩^{hs_exponent}‖(-Δ)^{s̄/2}u‖₂ + ⟨t⟩^{weight_exponent}‖⟨x⟩^δ u‖₂.
struct XNormSpec {
  double sbar = 1;
  double delta = 0;
  double hs_exponent = 0;
  double weight_exponent = 0;
};

XNormSpec x_norm_spec(int n, double sigma, double delta, double sbar);

/// Sampled sup over the given states.
double x_norm(const Grid &grid, const std::vector<State> &samples, const XNormSpec &spec);

struct NormRow {
  double t = 0;
  double l2 = 0;
  double wdelta = 0;
  double hs1 = 0;
  double energy = 0;
  std::optional<double> gerr;
  std::optional<double> herr;
  std::optional<double> ratio_g;
  /// |û(t, 0)|, the mean mode left out of l2, wdelta and the profile errors.
  double mean = 0;
  /// ‖ΘGσ(t)‖₂ once the profile columns are filled.
  std::optional<double> g_norm;
};

/// One row per sample time. The CSV has the fixed header
/// t,l2,wdelta,hs1,energy,gerr,herr,ratio_g; absent entries are empty.
struct NormSeries {
  std::vector<NormRow> rows;

  std::vector<double> times() const;
  std::vector<double> column(const std::string &name) const;
  std::string to_csv() const;
};

} // namespace sdw

#endif
