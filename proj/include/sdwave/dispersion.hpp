#ifndef SDWAVE_DISPERSION_HPP
#define SDWAVE_DISPERSION_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

/// Fourier-side symbols of the linear structurally damped wave equation.
///
/// Each mode ρ = |ξ| obeys w'' + ρ^{2σ} w' + ρ² w = 0 with characteristic
/// roots λ± = (-ρ^{2σ} ± sqrt(ρ^{4σ} - 4ρ²))/2. Writing λ± = m ± d with
/// m = -ρ^{2σ}/2, the symbols are evaluated through e^{λ+ t}·(1 - e^{-2dt})/(2d)
/// (real roots) or e^{mt} sin(bt)/b (complex roots, d = ib), which stay accurate
/// through the double root and at ρ → 0.
namespace sdw::dispersion {

enum class Regime { zero, subcritical, degenerate, oscillatory };

inline const char *to_string(Regime r) {
  switch (r) {
  case Regime::zero: return "zero";
  case Regime::subcritical: return "subcritical";
  case Regime::degenerate: return "degenerate";
  case Regime::oscillatory: return "oscillatory";
  }
  return "?";
}

/// Width of the degenerate band in units of the root scale ρ^{2σ}.
inline constexpr double kDegenerateBand = 1e-6;

template <typename Real> struct Roots {
  std::complex<Real> lambda_plus;
  std::complex<Real> lambda_minus;
  Regime regime = Regime::zero;
  /// m = -ρ^{2σ}/2, the common real part.
  Real mean = 0;
  /// d (real roots) or b (complex roots), half the root separation.
  Real half_gap = 0;
  bool complex_pair = false;
};

template <typename Real> Roots<Real> roots(Real sigma, Real rho) {
  using std::pow;
  using std::sqrt;
  Roots<Real> out;
  if (rho == Real(0)) return out;
  const Real a = pow(rho, 2 * sigma);
  const Real c = Real(1) - 4 * pow(rho, 2 - 4 * sigma);
  out.mean = -a / 2;
  if (c >= 0) {
    const Real sc = sqrt(c);
    out.half_gap = a * sc / 2;
    out.lambda_plus = -2 * pow(rho, 2 - 2 * sigma) / (Real(1) + sc);
    out.lambda_minus = -a * (Real(1) + sc) / 2;
  } else {
    const Real sc = sqrt(-c);
    out.half_gap = a * sc / 2;
    out.complex_pair = true;
    out.lambda_plus = {out.mean, out.half_gap};
    out.lambda_minus = {out.mean, -out.half_gap};
  }
  if (sqrt(std::abs(c)) < Real(kDegenerateBand)) out.regime = Regime::degenerate;
  else out.regime = out.complex_pair ? Regime::oscillatory : Regime::subcritical;
  return out;
}

/// K̂0, K̂1 and their time derivatives at one (t, ρ). All real for real ρ.
template <typename Real> struct SymbolPair {
  Real k0 = 1;
  Real k1 = 0;
  Real dk0 = 0;
  Real dk1 = 1;
};

namespace detail {

/// (1 - e^{-x})/x for x ≥ 0, equal to 1 at x = 0.
template <typename Real> Real one_minus_exp_ratio(Real x) {
  if (x == Real(0)) return Real(1);
  return -std::expm1(-x) / x;
}

/// sin(x)/x with a series near zero.
template <typename Real> Real sinc(Real x) {
  if (std::abs(x) < Real(1e-4)) {
    const Real x2 = x * x;
    return Real(1) - x2 / 6 + x2 * x2 / 120;
  }
  return std::sin(x) / x;
}

} // namespace detail

template <typename Real> SymbolPair<Real> kernel_symbols(const Roots<Real> &rt, Real rho, Real t) {
  SymbolPair<Real> s;
  if (rho == Real(0)) {
    s.k1 = t;
    return s;
  }
  const Real m = rt.mean;
  Real cosh_part;
  if (!rt.complex_pair) {
    const Real lp = rt.lambda_plus.real();
    const Real lm = rt.lambda_minus.real();
    const Real ep = std::exp(lp * t);
    const Real em = std::exp(lm * t);
    s.k1 = ep * t * detail::one_minus_exp_ratio(2 * rt.half_gap * t);
    cosh_part = (ep + em) / 2;
  } else {
    const Real env = std::exp(m * t);
    const Real bt = rt.half_gap * t;
    s.k1 = env * t * detail::sinc(bt);
    cosh_part = env * std::cos(bt);
  }
  s.k0 = cosh_part - m * s.k1;
  s.dk1 = cosh_part + m * s.k1;
  s.dk0 = -rho * rho * s.k1;
  return s;
}

template <typename Real> SymbolPair<Real> kernel_symbols(Real sigma, Real t, Real rho) {
  return kernel_symbols(roots(sigma, rho), rho, t);
}

/// Raised when the split K̂±, which divide by λ+ - λ-, are requested inside
/// the degenerate band or at ρ = 0.
class DegenerateSplitError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

template <typename Real> struct SplitSymbols {
  std::complex<Real> k1_plus, k1_minus, k0_plus, k0_minus;
};

/// K̂1^± = ±e^{λ± t}/(λ+ - λ-), K̂0^± = -λ∓ K̂1^±.
template <typename Real> SplitSymbols<Real> split_symbols(Real sigma, Real t, Real rho) {
  const Roots<Real> rt = roots(sigma, rho);
  if (rho == Real(0) || rt.regime == Regime::degenerate)
    throw DegenerateSplitError("split symbols are singular at the double root");
  const std::complex<Real> gap = rt.lambda_plus - rt.lambda_minus;
  SplitSymbols<Real> s;
  s.k1_plus = std::exp(rt.lambda_plus * t) / gap;
  s.k1_minus = -std::exp(rt.lambda_minus * t) / gap;
  s.k0_plus = -rt.lambda_minus * s.k1_plus;
  s.k0_minus = -rt.lambda_plus * s.k1_minus;
  return s;
}

template <typename Real> struct ProfileSymbols {
  Real g_hat = 0;
  Real h_hat = 1;
};

/// Ĝσ = ρ^{-2σ} e^{-ρ^{2(1-σ)} t}, Ĥσ = e^{-ρ^{2(1-σ)} t}. Ĝσ(ρ = 0) is set to 0.
template <typename Real> ProfileSymbols<Real> profile_symbols(Real sigma, Real t, Real rho) {
  ProfileSymbols<Real> s;
  if (rho == Real(0)) return s;
  s.h_hat = std::exp(-std::pow(rho, 2 * (1 - sigma)) * t);
  s.g_hat = std::pow(rho, -2 * sigma) * s.h_hat;
  return s;
}

enum class CutoffShape {
  /// C^∞ step ψ(1-x)/(ψ(x)+ψ(1-x)), ψ(x) = e^{-1/x}.
  smooth_step,
  /// Half bump exp(1 - 1/(1-x²)); C¹ at the inner edge.
  bump_bridge,
};

namespace detail {

template <typename Real> Real psi(Real x) { return x > 0 ? std::exp(-Real(1) / x) : Real(0); }

/// 1 at x ≤ 0, 0 at x ≥ 1.
template <typename Real> Real falling_edge(Real x, CutoffShape shape) {
  if (x <= 0) return Real(1);
  if (x >= 1) return Real(0);
  if (shape == CutoffShape::bump_bridge) return std::exp(Real(1) - Real(1) / (Real(1) - x * x));
  const Real a = psi(Real(1) - x);
  return a / (a + psi(x));
}

} // namespace detail

template <typename Real> struct Cutoffs {
  Real low = 0;
  Real mid = 0;
  Real high = 0;
};

/// Lower transition band [2^{-3/(1-2σ)}, 2^{-2/(1-2σ)}] of χ_low.
template <typename Real> std::array<Real, 2> low_band(Real sigma) {
  return {std::exp2(-3 / (1 - 2 * sigma)), std::exp2(-2 / (1 - 2 * sigma))};
}

/// Smooth partition χ_low + χ_mid + χ_high = 1 with χ_low = 1 below
/// 2^{-3/(1-2σ)}, 0 above 2^{-2/(1-2σ)}; χ_high = 0 below 1, 1 above 2.
template <typename Real>
Cutoffs<Real> cutoffs(Real sigma, Real rho, CutoffShape shape = CutoffShape::smooth_step) {
  const auto band = low_band(sigma);
  Cutoffs<Real> c;
  c.low = detail::falling_edge((rho - band[0]) / (band[1] - band[0]), shape);
  c.high = Real(1) - detail::falling_edge(rho - Real(1), shape);
  c.mid = Real(1) - c.low - c.high;
  return c;
}

/// Exponential-integrator weights over one step h for data that are linear
/// in time on the step, F(τ) = F0 + (τ/h)(F1 - F0):
///   û(h) += w0·F0 + (w1/h)(F1 - F0),   v̂(h) += v0·F0 + (v1/h)(F1 - F0),
/// with w0 = ∫₀ʰ k1(s) ds, w1 = ∫₀ʰ k1(s)(h-s) ds, v0 = k1(h), v1 = w0.
template <typename Real> struct DuhamelWeights {
  Real w0 = 0;
  Real w1 = 0;
  Real v0 = 0;
  Real v1 = 0;
};

namespace detail {

/// φ1(z) = (e^z - 1)/z and φ2(z) = (e^z - 1 - z)/z².
template <typename Real> std::array<std::complex<Real>, 2> phi12(std::complex<Real> z) {
  if (std::abs(z) < Real(0.5)) {
    // Σ z^k/(k+1)! and Σ z^k/(k+2)!
    std::complex<Real> p1 = 0, p2 = 0, term = 1;
    Real f1 = 1, f2 = 2;
    for (int k = 0; k < 24; ++k) {
      p1 += term / f1;
      p2 += term / f2;
      term *= z;
      f1 *= Real(k + 2);
      f2 *= Real(k + 3);
    }
    return {p1, p2};
  }
  const Real x = z.real(), y = z.imag();
  const Real s = std::sin(y / 2);
  const std::complex<Real> em1(std::expm1(x) * std::cos(y) - 2 * s * s, std::exp(x) * std::sin(y));
  return {em1 / z, (em1 - z) / (z * z)};
}

inline constexpr std::array<double, 8> kGaussNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

} // namespace detail

template <typename Real> DuhamelWeights<Real> duhamel_weights(Real sigma, Real h, Real rho, int order) {
  if (!(h > 0)) throw std::invalid_argument("duhamel_weights: h must be positive");
  if (order != 1 && order != 2) throw std::invalid_argument("duhamel_weights: order must be 1 or 2");
  DuhamelWeights<Real> w;
  if (rho == Real(0)) {
    w.w0 = h * h / 2;
    w.w1 = h * h * h / 6;
    w.v0 = h;
    w.v1 = w.w0;
    return w;
  }
  const Roots<Real> rt = roots(sigma, rho);
  w.v0 = kernel_symbols(rt, rho, h).k1;
  const Real gap_h = 2 * rt.half_gap * h;
  if (gap_h >= Real(1e-2)) {
    const auto pp = detail::phi12(rt.lambda_plus * h);
    const auto pm = detail::phi12(rt.lambda_minus * h);
    const std::complex<Real> gap = rt.lambda_plus - rt.lambda_minus;
    w.w0 = std::real(h * (pp[0] - pm[0]) / gap);
    w.w1 = std::real(h * h * (pp[1] - pm[1]) / gap);
  } else {
    // 16-point Gauss-Legendre on the stable k1; |λ|h is small here.
    Real s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < detail::kGaussNodes.size(); ++i) {
      for (int sgn : {-1, 1}) {
        const Real s = h / 2 * (Real(1) + sgn * Real(detail::kGaussNodes[i]));
        const Real k1 = kernel_symbols(rt, rho, s).k1;
        s0 += Real(detail::kGaussWeights[i]) * k1;
        s1 += Real(detail::kGaussWeights[i]) * k1 * (h - s);
      }
    }
    w.w0 = h / 2 * s0;
    w.w1 = h / 2 * s1;
  }
  if (order == 1) w.w1 = 0;
  w.v1 = w.w0;
  return w;
}

} // namespace sdw::dispersion

#endif
