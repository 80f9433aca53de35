#ifndef SDWAVE_VERIFICATION_ORACLE_HPP
#define SDWAVE_VERIFICATION_ORACLE_HPP

#include <complex>

namespace sdw::verification {

/// Per-mode solution of w'' + ρ^{2σ}w' + ρ²w = 0 by adaptive Dormand–Prince,
/// with no use of the characteristic roots.
struct OdeSymbols {
  /// (w, w') for w(0) = 1, w'(0) = 0.
  double k0 = 0, dk0 = 0;
  /// (w, w') for w(0) = 0, w'(0) = 1.
  double k1 = 0, dk1 = 0;
};

OdeSymbols ode_symbols(double sigma, double rho, double t, double tol = 1e-14);

/// ∫₀^h k1(h-τ)dτ and ∫₀^h k1(h-τ)τ dτ, appended to the same ODE as running integrals.
struct OdeMoments {
  double m0 = 0;
  double m1 = 0;
};

OdeMoments ode_duhamel_moments(double sigma, double rho, double h, double tol = 1e-14);

/// Textbook k1 = (e^{λ+t} - e^{λ-t})/(λ+ - λ-) in long double complex arithmetic.
/// Loses accuracy near the double root; callers stay away from it.
long double textbook_k1(long double sigma, long double rho, long double t);

/// Adaptive Gauss–Kronrod quadrature of ∫₀^h textbook_k1(h-τ) τ^m dτ, m ∈ {0, 1}.
double quadrature_k1_moment(double sigma, double rho, double h, int m);

/// ∫_{R^n} A e^{-|x|²/(2w²)} dx.
double gaussian_mass(int n, double amplitude, double width);

} // namespace sdw::verification

#endif
