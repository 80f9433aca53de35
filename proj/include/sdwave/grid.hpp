#ifndef SDWAVE_GRID_HPP
#define SDWAVE_GRID_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sdw {

/// Real samples over the grid points, row-major with axis 0 slowest.
using Field = Eigen::ArrayXd;
/// Complex Fourier coefficients in FFT mode order, same layout as Field.
using Spectrum = Eigen::ArrayXcd;

class GridError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Periodic box [-L, L)^n with N points per axis. Point j on an axis sits at
/// j·dx and is identified with (j - N)·dx for j ≥ N/2, so the origin is index 0.
/// Mode m on an axis has wavenumber m·dk for m < N/2 and (m - N)·dk otherwise.
struct Grid {
  int n = 1;
  int N = 16;
  double L = 1;
  double dx = 0;
  double dk = 0;
  /// |ξ| for every mode.
  Eigen::ArrayXd rho;
  /// Min-image |x| for every point.
  Eigen::ArrayXd radius;
  /// Distinct values of |ξ|, ascending; shell_rho[0] = 0.
  Eigen::ArrayXd shell_rho;
  /// Index into shell_rho for every mode.
  std::vector<std::int32_t> shell_of;

  Eigen::Index size() const { return rho.size(); }
  /// dx^n, the quadrature weight of a point.
  double cell_measure() const;
  /// (dk/2π)^n, the quadrature weight of a mode.
  double mode_measure() const;
  /// Bytes held by one Spectrum on this grid.
  std::size_t spectrum_bytes() const { return static_cast<std::size_t>(size()) * 16; }
  /// Signed integer mode index along one axis.
  int signed_mode(int m) const { return m < N / 2 ? m : m - N; }
  /// Flat index of the mode -k for the mode at flat index i.
  Eigen::Index negated(Eigen::Index i) const;
};

/// Requires n ∈ {1,2,3}, N a power of two with N ≥ 16, and L > 0.
Grid make_grid(int n, int N, double L);

/// Continuum-normalized transform: û = dx^n · Σ u e^{-iξ·x}.
Spectrum forward(const Grid &grid, const Field &u);
Spectrum forward(const Grid &grid, const Spectrum &u);
/// Inverse of forward; returns the complex field.
Spectrum inverse_complex(const Grid &grid, const Spectrum &u_hat);
/// Real part of inverse_complex.
Field inverse(const Grid &grid, const Spectrum &u_hat);

/// Raw unnormalized FFT on an N^n box; sign = -1 forward, +1 backward.
/// Plans are created once per shape and shared between threads.
void fft(int n, int N, const Spectrum &in, Spectrum &out, int sign);

/// max |û(k) - conj(û(-k))| relative to max |û|.
double hermitian_defect(const Grid &grid, const Spectrum &u_hat);

/// A·exp(-|x|²/(2w²)) with min-image |x|. Warns when w > L/8.
Field gaussian_data(const Grid &grid, double amplitude, double width);

/// |x|^δ with min-image |x| and 0^0 = 1.
Field min_image_weight(const Grid &grid, double delta);
/// ⟨x⟩^δ = (1 + |x|²)^{δ/2}.
Field bracket_weight(const Grid &grid, double delta);

/// 2/3-rule mask: 1 where every axis satisfies |m| ≤ N/3, else 0.
Eigen::ArrayXd dealias_mask(const Grid &grid);

/// Evaluates f once per distinct |ξ| and returns the per-shell results.
template <typename F> auto per_shell(const Grid &grid, F &&f) {
  using T = decltype(f(0.0));
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(grid.shell_rho.size()));
  for (Eigen::Index s = 0; s < grid.shell_rho.size(); ++s) out.push_back(f(grid.shell_rho[s]));
  return out;
}

/// Radial real function of |ξ| as a per-mode array.
template <typename F> Eigen::ArrayXd radial_array(const Grid &grid, F &&f) {
  Eigen::ArrayXd shell(grid.shell_rho.size());
  for (Eigen::Index s = 0; s < shell.size(); ++s) shell[s] = f(grid.shell_rho[s]);
  Eigen::ArrayXd out(grid.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = shell[grid.shell_of[i]];
  return out;
}

/// Multiplies û by symbol(|ξ|) mode by mode.
template <typename Symbol> Spectrum apply_radial(const Grid &grid, const Spectrum &u_hat, Symbol &&symbol) {
  return radial_array(grid, symbol) * u_hat;
}

/// Flat binary layout: "SDWFIELD", int32 n, int32 N, float64 L, then N^n
/// float64 values, row-major, little-endian.
void write_field(const std::string &path, const Grid &grid, const Field &u);

struct FieldFile {
  int n = 0;
  int N = 0;
  double L = 0;
  Field values;
};
FieldFile read_field(const std::string &path);

/// Two-column "x,u" CSV of an n = 1 field ordered by x.
void write_field_csv(const std::string &path, const Grid &grid, const Field &u);

} // namespace sdw

#endif
