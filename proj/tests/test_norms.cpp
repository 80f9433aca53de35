#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sdwave/exponents.hpp"
#include "sdwave/grid.hpp"
#include "sdwave/norms.hpp"

using namespace sdw;

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

TEST_CASE("Gaussian norms match closed forms") {
  const double A = 0.7, w = 1.3;
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_grid(n, n == 3 ? 32 : 128, 12);
    const Field u = gaussian_data(g, A, w);
    const Spectrum u_hat = forward(g, u);
    const double l2 = A * std::pow(pi * w * w, 0.25 * n);
    CHECK(lq_norm(g, u, 2) == doctest::Approx(l2).epsilon(1e-12));
    CHECK(lq_norm(g, u, 1) == doctest::Approx(A * std::pow(2 * pi * w * w, 0.5 * n)).epsilon(1e-12));
    CHECK(lq_norm(g, u, kInf) == doctest::Approx(A));
    CHECK(hsdot_norm(g, u_hat, 1) == doctest::Approx(l2 * std::sqrt(n / (2 * w * w))).epsilon(1e-10));
    CHECK(hsdot_norm(g, u_hat, 0) == doctest::Approx(l2).epsilon(1e-12));
    CHECK(weighted_l2(g, u, 1) == doctest::Approx(l2 * w * std::sqrt(n / 2.0)).epsilon(1e-10));
    CHECK(weighted_l2(g, u, 0) == doctest::Approx(l2).epsilon(1e-12));
    CHECK(bracket_weighted_l2(g, u, 2) > weighted_l2(g, u, 2));
  }
}

TEST_CASE("mean removal and negative orders") {
  const Grid g = make_grid(1, 64, 5);
  Field u = gaussian_data(g, 1, 1);
  Spectrum u_hat = forward(g, u);
  CHECK(l2_spectral(g, u_hat, true) < l2_spectral(g, u_hat));
  CHECK_THROWS_AS(hsdot_norm(g, u_hat, -0.5), DomainError);
  u_hat[0] = 0;
  CHECK(hsdot_norm(g, u_hat, -0.5) > 0);
}

TEST_CASE("Lorentz quasinorm of an indicator") {
  const Grid g = make_grid(1, 64, 8);
  Field u = Field::Zero(g.size());
  u.head(10) = 2.0;
  const double m = 10 * g.dx;
  for (double q : {1.0, 1.5, 3.0}) {
    CHECK(lorentz_quasinorm(g, u, q, kInf) == doctest::Approx(2 * std::pow(m, 1 / q)));
    for (double r : {1.0, 2.0, 5.0})
      CHECK(lorentz_quasinorm(g, u, q, r) == doctest::Approx(2 * std::pow(q / r, 1 / r) * std::pow(m, 1 / q)));
  }
  CHECK_THROWS_AS(lorentz_quasinorm(g, u, 0.5, 1), DomainError);
  CHECK_THROWS_AS(lorentz_quasinorm(g, u, 2, 0.5), DomainError);
}

TEST_CASE("property: L^{q,q} equals L^q and the normalized quasinorm decreases in r") {
  std::mt19937 rng(4);
  std::normal_distribution<double> d;
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_grid(n, 16, 3);
    Field u(g.size());
    for (auto &x : u) x = d(rng);
    for (double q : {1.0, 2.0, 3.5}) {
      CHECK(lorentz_quasinorm(g, u, q, q) == doctest::Approx(lq_norm(g, u, q)).epsilon(1e-12));
      // (r/q)^{1/r}‖u‖_{q,r} is nonincreasing in r.
      const auto scaled = [&](double r) { return std::pow(r / q, 1 / r) * lorentz_quasinorm(g, u, q, r); };
      CHECK(scaled(2 * q) <= scaled(q) * (1 + 1e-12));
      CHECK(lorentz_quasinorm(g, u, q, kInf) <= scaled(2 * q) * (1 + 1e-12));
    }
  }
}

TEST_CASE("energy is computed spectrally") {
  const Grid g = make_grid(1, 128, 12);
  State s;
  s.u_hat = forward(g, gaussian_data(g, 1, 1));
  s.v_hat = forward(g, gaussian_data(g, 2, 1));
  const double grad = std::sqrt(1 / 2.0) * std::pow(pi, 0.25);
  const double v = 2 * std::pow(pi, 0.25);
  CHECK(energy(g, s) == doctest::Approx(0.5 * (v * v + grad * grad)).epsilon(1e-10));
}

TEST_CASE("X-norm weights") {
  const XNormSpec x = x_norm_spec(2, 0.25, 0.25, 1);
  CHECK(x.hs_exponent == doctest::Approx(1.0));
  CHECK(x.weight_exponent == doctest::Approx(1.0 / 6));
  const Grid g = make_grid(1, 32, 4);
  State a;
  a.u_hat = forward(g, gaussian_data(g, 1, 1));
  a.v_hat = Spectrum::Zero(g.size());
  State b = a;
  b.t = 10;
  CHECK(x_norm(g, {a, b}, x) >= x_norm(g, {a}, x));
}

TEST_CASE("norm series CSV has the fixed header and empty optional cells") {
  NormSeries s;
  NormRow r;
  r.t = 1;
  r.l2 = 0.5;
  r.gerr = 0.25;
  s.rows.push_back(r);
  const std::string csv = s.to_csv();
  CHECK(csv.rfind("t,l2,wdelta,hs1,energy,gerr,herr,ratio_g\n", 0) == 0);
  const std::string line = csv.substr(csv.find('\n') + 1);
  CHECK(line.substr(line.size() - 3) == ",,\n");
  CHECK(s.times() == std::vector<double>{1});
  CHECK(std::isnan(s.column("herr")[0]));
  CHECK(s.column("gerr")[0] == 0.25);
}
