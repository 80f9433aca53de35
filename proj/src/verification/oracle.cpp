#include "sdwave/verification/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

namespace sdw::verification {

namespace {

using Vec = std::array<double, 4>;

/// (w, w', ∫w, ∫∫w) under w'' = -a w' - ρ² w.
Vec integrate_mode(double sigma, double rho, double t, Vec y, double tol) {
  namespace odeint = boost::numeric::odeint;
  const double a = std::pow(rho, 2 * sigma);
  const double b = rho * rho;
  auto rhs = [a, b](const Vec &x, Vec &dx, double) {
    dx[0] = x[1];
    dx[1] = -a * x[1] - b * x[0];
    dx[2] = x[0];
    dx[3] = x[2];
  };
  if (t == 0) return y;
  // Tiny absolute tolerance: solutions decay to e^{-20} of their start and
  // must stay relatively accurate. The initial step only seeds the controller.
  const double h0 = std::min(t, 1e-3 / (1 + rho));
  odeint::integrate_adaptive(odeint::make_controlled(tol * 1e-12, tol, odeint::runge_kutta_dopri5<Vec>()), rhs, y, 0.0, t,
                             h0);
  return y;
}

} // namespace

OdeSymbols ode_symbols(double sigma, double rho, double t, double tol) {
  if (!(t >= 0)) throw std::invalid_argument("oracle time must be nonnegative");
  const Vec a = integrate_mode(sigma, rho, t, {1, 0, 0, 0}, tol);
  const Vec b = integrate_mode(sigma, rho, t, {0, 1, 0, 0}, tol);
  return {a[0], a[1], b[0], b[1]};
}

OdeMoments ode_duhamel_moments(double sigma, double rho, double h, double tol) {
  const Vec y = integrate_mode(sigma, rho, h, {0, 1, 0, 0}, tol);
  return {y[2], y[3]};
}

long double textbook_k1(long double sigma, long double rho, long double t) {
  using C = std::complex<long double>;
  const long double a = std::pow(rho, 2 * sigma);
  const C disc = std::sqrt(C(a * a - 4 * rho * rho, 0));
  const C lp = (-a + disc) / 2.0L;
  const C lm = (-a - disc) / 2.0L;
  return ((std::exp(lp * t) - std::exp(lm * t)) / (lp - lm)).real();
}

double quadrature_k1_moment(double sigma, double rho, double h, int m) {
  if (m != 0 && m != 1) throw std::invalid_argument("moment must be 0 or 1");
  auto f = [&](double tau) {
    const double k = static_cast<double>(textbook_k1(sigma, rho, h - tau));
    return m == 0 ? k : k * tau;
  };
  // The textbook form cancels near t = 0, so a tighter target only buys refinement.
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, h, 10, 1e-12);
}

double gaussian_mass(int n, double amplitude, double width) {
  return amplitude * std::pow(2 * std::numbers::pi * width * width, 0.5 * n);
}

} // namespace sdw::verification
