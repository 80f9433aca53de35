#ifndef SDWAVE_PROPAGATOR_HPP
#define SDWAVE_PROPAGATOR_HPP

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "sdwave/dispersion.hpp"
#include "sdwave/fit.hpp"
#include "sdwave/grid.hpp"
#include "sdwave/state.hpp"

namespace sdw {

/// Per-mode symbol arrays k0, k1, ∂_t k0, ∂_t k1 at one time.
struct SymbolArrays {
  Eigen::ArrayXd k0, k1, dk0, dk1;
};

SymbolArrays symbol_arrays(const Grid &grid, double sigma, double t);

/// û(t) = k0 û0 + k1 û1, v̂(t) = ∂_t k0 û0 + ∂_t k1 û1.
State linear_solution(const Grid &grid, double sigma, const Spectrum &u0_hat, const Spectrum &u1_hat, double t);
State linear_solution(const Grid &grid, double sigma, const Field &u0, const Field &u1, double t);

/// Applies the exact 2×2 mode map for one time increment.
void apply_symbols(const SymbolArrays &s, const State &in, State &out);

/// Exact linear step map on one grid. Symbol arrays are cached per step size,
/// keyed by the bit pattern of dt, with the least recently used entry evicted
/// beyond kCacheSize.
class LinearPropagator {
public:
  static constexpr std::size_t kCacheSize = 4;

  LinearPropagator(const Grid &grid, double sigma);

  const Grid &grid() const { return *grid_; }
  double sigma() const { return sigma_; }

  std::shared_ptr<const SymbolArrays> symbols(double dt) const;
  State step(const State &state, double dt) const;

private:
  const Grid *grid_;
  double sigma_;
  mutable std::mutex mutex_;
  mutable std::list<std::pair<std::uint64_t, std::shared_ptr<const SymbolArrays>>> cache_;
};

State linear_step(const LinearPropagator &prop, const State &state, double dt);

enum class KernelWhich { K0, K1, K1plus, K1minus, K0plus, K0minus };
enum class KernelPiece { full, low, mid, high, mh };

std::string to_string(KernelWhich w);
std::string to_string(KernelPiece p);
KernelWhich kernel_which_from_string(const std::string &name);
KernelPiece kernel_piece_from_string(const std::string &name);

/// Cutoff-multiplied symbol of the chosen kernel on the grid. Split kernels
/// are set to 0 at ρ = 0 and throw DegenerateSplitError when a cell with
/// nonzero cutoff weight lies in the degenerate band or in the oscillatory
/// regime, where the split pieces are singular or complex-valued.
Spectrum kernel_spectrum(const Grid &grid, double sigma, KernelWhich which, KernelPiece piece, double t,
                         dispersion::CutoffShape shape = dispersion::CutoffShape::smooth_step);

/// Inverse transform of kernel_spectrum.
Field kernel_field(const Grid &grid, double sigma, KernelWhich which, KernelPiece piece, double t,
                   dispersion::CutoffShape shape = dispersion::CutoffShape::smooth_step);

/// Decay exponent of ‖|x|^θ (K_piece(t) ∗ φ)‖₂ for the low piece (and the full
/// kernel, which the low piece dominates) with integrable φ. Mid and high
/// pieces decay exponentially and have no power prediction.
std::optional<double> kernel_predicted_exponent(int n, double sigma, KernelWhich which, KernelPiece piece,
                                                double theta);

struct KernelTable {
  KernelWhich which = KernelWhich::K1;
  KernelPiece piece = KernelPiece::low;
  double theta = 0;
  std::vector<double> t;
  /// ‖|x|^θ (K_piece(t) ∗ φ)‖₂ with the ρ = 0 mode removed.
  std::vector<double> norm;
  std::optional<double> predicted;
};

KernelTable kernel_rate_table(const Grid &grid, double sigma, KernelWhich which, KernelPiece piece, double theta,
                              const Field &datum, const std::vector<double> &t_list,
                              dispersion::CutoffShape shape = dispersion::CutoffShape::smooth_step);

/// Power fit for pieces with a prediction, exponential fit (model "exponential",
/// pass iff the rate is negative) otherwise.
RateReport kernel_table_report(const KernelTable &table, const WindowPolicy &window, double tolerance);

} // namespace sdw

#endif
