#include <doctest.h>

#include <cmath>
#include <random>

#include "sdwave/dispersion.hpp"
#include "sdwave/verification/oracle.hpp"

using namespace sdw::dispersion;
namespace oracle = sdw::verification;

namespace {

/// Double root of ρ^{4σ} = 4ρ², i.e. ρ* = 2^{-1/(1-2σ)}.
double double_root(double sigma) { return std::exp2(-1 / (1 - 2 * sigma)); }

} // namespace

TEST_CASE("regimes around the double root") {
  const double s = 0.25, rs = double_root(s);
  CHECK(roots(s, 0.0).regime == Regime::zero);
  CHECK(roots(s, rs / 2).regime == Regime::subcritical);
  CHECK(roots(s, rs * 2).regime == Regime::oscillatory);
  CHECK(roots(s, rs * (1 + 1e-13)).regime == Regime::degenerate);
  const auto r = roots(s, rs * 2);
  CHECK(r.complex_pair);
  CHECK(r.lambda_plus == std::conj(r.lambda_minus));
}

TEST_CASE("roots solve the characteristic equation") {
  for (double s : {0.05, 0.25, 0.45})
    for (double rho : {1e-6, 1e-3, 0.1, 0.9, 3.0, 50.0}) {
      const auto r = roots(s, rho);
      const double a = std::pow(rho, 2 * s);
      for (auto l : {r.lambda_plus, r.lambda_minus}) {
        const auto res = l * l + a * l + rho * rho;
        CHECK(std::abs(res) <= 1e-12 * (std::norm(l) + a * std::abs(l) + rho * rho));
      }
    }
}

TEST_CASE("symbols at rho = 0 and t = 0") {
  const auto z = kernel_symbols(0.25, 3.0, 0.0);
  CHECK(z.k0 == 1);
  CHECK(z.k1 == 3);
  CHECK(z.dk0 == 0);
  CHECK(z.dk1 == 1);
  for (double rho : {1e-3, 0.5, 7.0}) {
    const auto s = kernel_symbols(0.3, 0.0, rho);
    CHECK(s.k0 == doctest::Approx(1).epsilon(1e-15));
    CHECK(s.k1 == doctest::Approx(0).epsilon(1e-15));
    CHECK(s.dk1 == doctest::Approx(1).epsilon(1e-15));
  }
}

TEST_CASE("symbols agree with an adaptive ODE solve in every regime") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> us(0.05, 0.45), ut(0.0, 1.0), ul(-4, 2);
  for (int i = 0; i < 40; ++i) {
    const double s = us(rng), rs = double_root(s);
    double rho;
    switch (i % 4) {
    case 0: rho = std::pow(10.0, ul(rng)) * rs * 1e-2; break;
    case 1: rho = rs * (1 + (ut(rng) - 0.5) * 2e-13); break;
    case 2: rho = rs * (1 + 10 * ut(rng)); break;
    default: rho = rs * (0.2 + 0.7 * ut(rng)); break;
    }
    // Keep the solution above e^{-20} of its start.
    const double decay = std::max(std::pow(rho, 2 * s) / 2, 1e-12);
    const double tmax = std::min(20 / decay, 1e4);
    const double t = tmax * ut(rng);
    const auto got = kernel_symbols(s, t, rho);
    const auto ref = oracle::ode_symbols(s, rho, t);
    const double scale = std::hypot(std::hypot(ref.k0, ref.dk0), std::hypot(ref.k1, ref.dk1));
    const double err = std::hypot(std::hypot(got.k0 - ref.k0, got.dk0 - ref.dk0), std::hypot(got.k1 - ref.k1, got.dk1 - ref.dk1));
    CHECK_MESSAGE(err <= 1e-9 * scale, "sigma=", s, " rho=", rho, " t=", t);
  }
}

TEST_CASE("stable k1 matches the textbook formula away from the double root") {
  for (double rho : {0.01, 0.05, 2.0, 10.0})
    for (double t : {0.5, 3.0, 40.0}) {
      const double ref = static_cast<double>(oracle::textbook_k1(0.25L, rho, t));
      CHECK(kernel_symbols(0.25, t, rho).k1 == doctest::Approx(ref).epsilon(1e-10).scale(1e-300));
    }
}

TEST_CASE("symbols are continuous across the degenerate band") {
  const double s = 0.2, rs = double_root(s), t = 30;
  const auto at = kernel_symbols(s, t, rs);
  for (double e : {1e-13, 1e-10, 1e-8, 1e-6}) {
    for (double side : {-1.0, 1.0}) {
      const auto near = kernel_symbols(s, t, rs * (1 + side * e));
      CHECK(std::abs(near.k1 - at.k1) <= 1e-4 * std::abs(at.k1) + 50 * e * std::abs(at.k1) * t);
    }
  }
}

TEST_CASE("property: the 2x2 mode map is a semigroup") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> us(0.05, 0.45), ur(-3, 1), ut(0, 5);
  for (int i = 0; i < 200; ++i) {
    const double s = us(rng), rho = std::pow(10.0, ur(rng)), a = ut(rng), b = ut(rng);
    const auto A = kernel_symbols(s, a, rho), B = kernel_symbols(s, b, rho), C = kernel_symbols(s, a + b, rho);
    const double k0 = B.k0 * A.k0 + B.k1 * A.dk0;
    const double k1 = B.k0 * A.k1 + B.k1 * A.dk1;
    const double scale = 1 + std::abs(C.k1) + std::abs(C.k0);
    CHECK(std::abs(k0 - C.k0) <= 1e-12 * scale);
    CHECK(std::abs(k1 - C.k1) <= 1e-12 * scale);
  }
}

TEST_CASE("property: dk0 = -rho^2 k1 and the Wronskian decays as e^{-a t}") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> us(0.05, 0.45), ur(-3, 1), ut(0, 5);
  for (int i = 0; i < 200; ++i) {
    const double s = us(rng), rho = std::pow(10.0, ur(rng)), t = ut(rng);
    const auto k = kernel_symbols(s, t, rho);
    CHECK(k.dk0 == doctest::Approx(-rho * rho * k.k1).epsilon(1e-14).scale(1e-300));
    const double w = k.k0 * k.dk1 - k.k1 * k.dk0;
    CHECK(w == doctest::Approx(std::exp(-std::pow(rho, 2 * s) * t)).epsilon(1e-10));
  }
}

TEST_CASE("split symbols sum to the full symbols and refuse the double root") {
  for (double rho : {1e-3, 0.01, 3.0}) {
    const auto sp = split_symbols(0.25, 2.0, rho);
    const auto full = kernel_symbols(0.25, 2.0, rho);
    CHECK((sp.k1_plus + sp.k1_minus).real() == doctest::Approx(full.k1).epsilon(1e-9));
    CHECK((sp.k0_plus + sp.k0_minus).real() == doctest::Approx(full.k0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(split_symbols(0.25, 1.0, 0.0), DegenerateSplitError);
  CHECK_THROWS_AS(split_symbols(0.25, 1.0, double_root(0.25)), DegenerateSplitError);
}

TEST_CASE("profile symbols") {
  const auto p = profile_symbols(0.25, 2.0, 4.0);
  CHECK(p.h_hat == doctest::Approx(std::exp(-std::pow(4.0, 1.5) * 2)));
  CHECK(p.g_hat == doctest::Approx(p.h_hat / 2));
  const auto z = profile_symbols(0.25, 2.0, 0.0);
  CHECK(z.g_hat == 0);
  CHECK(z.h_hat == 1);
}

TEST_CASE("property: cutoffs form a partition of unity with the stated supports") {
  for (double s : {0.1, 0.25, 0.4})
    for (auto shape : {CutoffShape::smooth_step, CutoffShape::bump_bridge}) {
      const auto band = low_band(s);
      for (int i = 0; i <= 4000; ++i) {
        const double rho = 3.0 * i / 4000;
        const auto c = cutoffs(s, rho, shape);
        CHECK(c.low + c.mid + c.high == doctest::Approx(1).epsilon(1e-15));
        CHECK(c.low >= 0);
        CHECK(c.mid >= -1e-15);
        CHECK(c.high >= 0);
        if (rho <= band[0]) CHECK(c.low == 1);
        if (rho >= band[1]) CHECK(c.low == 0);
        if (rho <= 1) CHECK(c.high == 0);
        if (rho >= 2) CHECK(c.high == 1);
      }
    }
}

TEST_CASE("Duhamel weights agree with ODE moments and with quadrature") {
  for (double s : {0.1, 0.25, 0.4})
    for (double rho : {0.0, 1e-4, 0.02, double_root(s), 0.9, 5.0, 80.0})
      for (double h : {0.01, 0.1, 1.0}) {
        const auto w = duhamel_weights(s, h, rho, 2);
        const auto m = oracle::ode_duhamel_moments(s, rho, h);
        CHECK(w.w0 == doctest::Approx(m.m0).epsilon(1e-11));
        CHECK(w.w1 == doctest::Approx(m.m1).epsilon(1e-11));
        CHECK(w.v1 == w.w0);
        CHECK(w.v0 == doctest::Approx(kernel_symbols(s, h, rho).k1).epsilon(1e-15));
        if (rho > 0 && std::abs(rho / double_root(s) - 1) > 0.05) {
          CHECK(w.w0 == doctest::Approx(oracle::quadrature_k1_moment(s, rho, h, 0)).epsilon(1e-9));
          CHECK(w.w1 == doctest::Approx(oracle::quadrature_k1_moment(s, rho, h, 1)).epsilon(1e-9));
        }
      }
  CHECK(duhamel_weights(0.25, 0.1, 1.0, 1).w1 == 0);
  CHECK_THROWS_AS(duhamel_weights(0.25, 0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(duhamel_weights(0.25, 0.1, 1.0, 3), std::invalid_argument);
}
