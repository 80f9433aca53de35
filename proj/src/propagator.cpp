#include "sdwave/propagator.hpp"

#include <bit>
#include <cmath>

namespace sdw {

namespace dsp = dispersion;

SymbolArrays symbol_arrays(const Grid &grid, double sigma, double t) {
  const auto shells = per_shell(grid, [&](double rho) { return dsp::kernel_symbols(sigma, t, rho); });
  SymbolArrays s;
  s.k0.resize(grid.size());
  s.k1.resize(grid.size());
  s.dk0.resize(grid.size());
  s.dk1.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const auto &sym = shells[grid.shell_of[i]];
    s.k0[i] = sym.k0;
    s.k1[i] = sym.k1;
    s.dk0[i] = sym.dk0;
    s.dk1[i] = sym.dk1;
  }
  return s;
}

void apply_symbols(const SymbolArrays &s, const State &in, State &out) {
  Spectrum u = s.k0 * in.u_hat + s.k1 * in.v_hat;
  Spectrum v = s.dk0 * in.u_hat + s.dk1 * in.v_hat;
  out.u_hat = std::move(u);
  out.v_hat = std::move(v);
}

State linear_solution(const Grid &grid, double sigma, const Spectrum &u0_hat, const Spectrum &u1_hat, double t) {
  if (!(t >= 0)) throw std::invalid_argument("linear_solution: t must be nonnegative");
  State s{0, u0_hat, u1_hat};
  if (t == 0) return s;
  apply_symbols(symbol_arrays(grid, sigma, t), s, s);
  s.t = t;
  return s;
}

State linear_solution(const Grid &grid, double sigma, const Field &u0, const Field &u1, double t) {
  return linear_solution(grid, sigma, forward(grid, u0), forward(grid, u1), t);
}

LinearPropagator::LinearPropagator(const Grid &grid, double sigma) : grid_(&grid), sigma_(sigma) {}

std::shared_ptr<const SymbolArrays> LinearPropagator::symbols(double dt) const {
  const auto key = std::bit_cast<std::uint64_t>(dt);
  {
    std::lock_guard lock(mutex_);
    for (auto it = cache_.begin(); it != cache_.end(); ++it) {
      if (it->first == key) {
        cache_.splice(cache_.begin(), cache_, it);
        return cache_.front().second;
      }
    }
  }
  auto fresh = std::make_shared<const SymbolArrays>(symbol_arrays(*grid_, sigma_, dt));
  std::lock_guard lock(mutex_);
  cache_.emplace_front(key, fresh);
  if (cache_.size() > kCacheSize) cache_.pop_back();
  return fresh;
}

State LinearPropagator::step(const State &state, double dt) const {
  if (!(dt > 0)) throw std::invalid_argument("linear_step: dt must be positive");
  State out;
  apply_symbols(*symbols(dt), state, out);
  out.t = state.t + dt;
  return out;
}

State linear_step(const LinearPropagator &prop, const State &state, double dt) { return prop.step(state, dt); }

std::string to_string(KernelWhich w) {
  switch (w) {
  case KernelWhich::K0: return "K0";
  case KernelWhich::K1: return "K1";
  case KernelWhich::K1plus: return "K1plus";
  case KernelWhich::K1minus: return "K1minus";
  case KernelWhich::K0plus: return "K0plus";
  case KernelWhich::K0minus: return "K0minus";
  }
  return "?";
}

std::string to_string(KernelPiece p) {
  switch (p) {
  case KernelPiece::full: return "full";
  case KernelPiece::low: return "low";
  case KernelPiece::mid: return "mid";
  case KernelPiece::high: return "high";
  case KernelPiece::mh: return "mh";
  }
  return "?";
}

KernelWhich kernel_which_from_string(const std::string &name) {
  for (auto w : {KernelWhich::K0, KernelWhich::K1, KernelWhich::K1plus, KernelWhich::K1minus, KernelWhich::K0plus,
                 KernelWhich::K0minus})
    if (to_string(w) == name) return w;
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

KernelPiece kernel_piece_from_string(const std::string &name) {
  for (auto p : {KernelPiece::full, KernelPiece::low, KernelPiece::mid, KernelPiece::high, KernelPiece::mh})
    if (to_string(p) == name) return p;
  throw std::invalid_argument("unknown kernel piece '" + name + "'");
}

namespace {

double piece_weight(double sigma, double rho, KernelPiece piece, dsp::CutoffShape shape) {
  if (piece == KernelPiece::full) return 1;
  const auto c = dsp::cutoffs(sigma, rho, shape);
  switch (piece) {
  case KernelPiece::low: return c.low;
  case KernelPiece::mid: return c.mid;
  case KernelPiece::high: return c.high;
  case KernelPiece::mh: return c.mid + c.high;
  case KernelPiece::full: break;
  }
  return 1;
}

double symbol_value(double sigma, double t, double rho, KernelWhich which) {
  switch (which) {
  case KernelWhich::K0: return dsp::kernel_symbols(sigma, t, rho).k0;
  case KernelWhich::K1: return dsp::kernel_symbols(sigma, t, rho).k1;
  default: break;
  }
  if (rho == 0) return 0;
  const auto rt = dsp::roots(sigma, rho);
  if (rt.regime == dsp::Regime::oscillatory)
    throw dsp::DegenerateSplitError("split kernels are complex-valued in the oscillatory regime (rho = " +
                                    std::to_string(rho) + "); use K0 or K1 for this piece");
  const auto s = dsp::split_symbols(sigma, t, rho);
  switch (which) {
  case KernelWhich::K1plus: return s.k1_plus.real();
  case KernelWhich::K1minus: return s.k1_minus.real();
  case KernelWhich::K0plus: return s.k0_plus.real();
  case KernelWhich::K0minus: return s.k0_minus.real();
  default: break;
  }
  return 0;
}

} // namespace

Spectrum kernel_spectrum(const Grid &grid, double sigma, KernelWhich which, KernelPiece piece, double t,
                         dsp::CutoffShape shape) {
  const Eigen::ArrayXd values = radial_array(grid, [&](double rho) {
    const double w = piece_weight(sigma, rho, piece, shape);
    return w == 0 ? 0.0 : w * symbol_value(sigma, t, rho, which);
  });
  return values.cast<std::complex<double>>();
}

Field kernel_field(const Grid &grid, double sigma, KernelWhich which, KernelPiece piece, double t,
                   dsp::CutoffShape shape) {
  return inverse(grid, kernel_spectrum(grid, sigma, which, piece, t, shape));
}

std::optional<double> kernel_predicted_exponent(int n, double sigma, KernelWhich which, KernelPiece piece,
                                                double theta) {
  if (piece != KernelPiece::low && piece != KernelPiece::full) return std::nullopt;
  const double base = -n / 4.0 + theta / 2;
  switch (which) {
  case KernelWhich::K1:
  case KernelWhich::K1plus: return (base + sigma) / (1 - sigma);
  case KernelWhich::K1minus: return (base + sigma) / sigma;
  case KernelWhich::K0:
  case KernelWhich::K0plus: return base / (1 - sigma);
  case KernelWhich::K0minus: return (base + 2 * sigma - 1) / sigma;
  }
  return std::nullopt;
}

KernelTable kernel_rate_table(const Grid &grid, double sigma, KernelWhich which, KernelPiece piece, double theta,
                              const Field &datum, const std::vector<double> &t_list, dsp::CutoffShape shape) {
  KernelTable table;
  table.which = which;
  table.piece = piece;
  table.theta = theta;
  table.predicted = kernel_predicted_exponent(grid.n, sigma, which, piece, theta);
  const Spectrum phi_hat = forward(grid, datum);
  const Field weight = min_image_weight(grid, theta);
  for (double t : t_list) {
    Spectrum conv = kernel_spectrum(grid, sigma, which, piece, t, shape) * phi_hat;
    conv[0] = 0;
    const Field u = inverse(grid, conv);
    table.t.push_back(t);
    table.norm.push_back(std::sqrt((weight * u).square().sum() * grid.cell_measure()));
  }
  return table;
}

RateReport kernel_table_report(const KernelTable &table, const WindowPolicy &window, double tolerance) {
  const std::string name = to_string(table.which) + "_" + to_string(table.piece);
  if (table.predicted) return rate_report(name, table.t, table.norm, window, table.predicted, tolerance);
  RateReport r;
  try {
    r = make_report(name, fit_exponential(table.t, table.norm, window), std::nullopt, 0);
    r.verdict = r.fitted < 0 ? Verdict::pass : Verdict::fail;
    r.comparison = Comparison::at_most;
    r.predicted = 0.0;
    r.note = "log-linear fit; pass iff the exponential rate is negative";
  } catch (const FitError &e) {
    r.quantity = name;
    r.note = e.what();
  }
  r.model = "exponential";
  return r;
}

} // namespace sdw
