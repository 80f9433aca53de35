#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sdwave/diagnostics.hpp"
#include "sdwave/norms.hpp"
#include "sdwave/profiles.hpp"
#include "sdwave/propagator.hpp"
#include "sdwave/verification/oracle.hpp"

using namespace sdw;

namespace {

/// ‖F⁻¹[ρ^{-2a} e^{-ρ^{2(1-σ)} t}]‖₂ in two dimensions.
double profile_l2_2d(double sigma, double a, double t) {
  const double b = 2 - 4 * a, e = 2 - 2 * sigma;
  const double radial = std::tgamma(b / e) * std::pow(2 * t, -b / e) / e;
  return std::sqrt(2 * std::numbers::pi * radial) / (2 * std::numbers::pi);
}

struct SilenceWarnings {
  std::vector<std::string> seen;
  WarningSink previous;
  SilenceWarnings() : previous(set_warning_sink([this](const std::string &m) { seen.push_back(m); })) {}
  ~SilenceWarnings() { set_warning_sink(previous); }
};

} // namespace

TEST_CASE("profile norms match the radial integrals") {
  const double sigma = 0.25;
  const Grid g = make_grid(2, 256, 200);
  for (double t : {2.0, 5.0}) {
    const double h = l2_spectral(g, profile_spectrum(g, sigma, Profile::H, t));
    CHECK(h == doctest::Approx(profile_l2_2d(sigma, 0, t)).epsilon(1e-5));
    const double gn = l2_spectral(g, profile_spectrum(g, sigma, Profile::G, t));
    CHECK(gn == doctest::Approx(profile_l2_2d(sigma, sigma, t)).epsilon(0.02));
  }
  CHECK(profile_spectrum(g, sigma, Profile::G, 1)[0] == 0.0);
  CHECK_THROWS(profile_spectrum(g, sigma, Profile::H, -1));
}

TEST_CASE("profile constants without a nonlinearity are the data masses") {
  const Grid g = make_grid(2, 64, 12);
  const Field u0 = gaussian_data(g, 0.5, 1.5), u1 = gaussian_data(g, 2, 1);
  SimParams p;
  p.f_kind = FKind::none;
  const ProfileConstants c = profile_constants(g, u0, u1, {}, {}, p);
  CHECK(c.theta0 == doctest::Approx(verification::gaussian_mass(2, 0.5, 1.5)).epsilon(1e-12));
  CHECK(c.theta1 == doctest::Approx(verification::gaussian_mass(2, 2, 1)).epsilon(1e-12));
  CHECK(c.big_theta == c.theta1);
}

TEST_CASE("the tail term is fitted with the predicted exponent") {
  const Grid g = make_grid(2, 16, 4);
  const Field zero = Field::Zero(g.size());
  SimParams p;
  const double z = zeta(2, p.sigma, 1, p.p, 0).value();
  std::vector<double> t, y;
  for (int i = 0; i <= 4000; ++i) {
    t.push_back(0.05 * i);
    y.push_back(0.3 * std::pow(std::max(t.back(), 1e-9), z));
  }
  y[0] = y[1];
  SilenceWarnings quiet;
  const ProfileConstants c = profile_constants(g, zero, zero, t, y, p);
  CHECK(c.tail_exponent == doctest::Approx(-5.0 / 3));
  CHECK(c.tail_coefficient == doctest::Approx(0.3).epsilon(1e-12));
  const double T = t.back();
  CHECK(c.tail_bound == doctest::Approx(0.3 * std::pow(std::hypot(1.0, T), z + 1) / -(z + 1)).epsilon(1e-12));
  CHECK(c.big_theta == doctest::Approx(c.integral + c.tail_bound));
  CHECK(c.horizon == T);
}

TEST_CASE("diagnose reports zero remainder for exact profiles") {
  const Grid g = make_grid(2, 64, 30);
  ProfileConstants c;
  c.theta0 = 0.7;
  c.theta1 = 1.3;
  c.big_theta = 1.3;
  State s;
  s.t = 4;
  s.u_hat = c.theta0 * profile_spectrum(g, 0.25, Profile::H, 4) + c.theta1 * profile_spectrum(g, 0.25, Profile::G, 4);
  s.v_hat = Spectrum::Zero(g.size());
  NormRow row;
  diagnose(g, s, c, 0.25, true, row);
  REQUIRE(row.herr);
  CHECK(*row.herr < 1e-14);
  REQUIRE(row.gerr);
  REQUIRE(row.ratio_g);
  CHECK(*row.ratio_g == doctest::Approx(*row.gerr / (1.3 * l2_spectral(g, profile_spectrum(g, 0.25, Profile::G, 4), true))));
  NormRow bare;
  c.big_theta = 0;
  diagnose(g, s, c, 0.25, false, bare);
  CHECK_FALSE(bare.herr);
  CHECK_FALSE(bare.ratio_g);
}

TEST_CASE("property: the linear remainder decays faster than the G profile") {
  const Grid g = make_grid(2, 128, 200);
  const Field u0 = gaussian_data(g, 1, 3), u1 = gaussian_data(g, 1, 3);
  SimParams p;
  p.f_kind = FKind::none;
  const ProfileConstants c = profile_constants(g, u0, u1, {}, {}, p);
  double prev = std::numeric_limits<double>::infinity();
  for (double t : {20.0, 40.0, 80.0, 160.0}) {
    NormRow row;
    diagnose(g, linear_solution(g, 0.25, u0, u1, t), c, 0.25, true, row);
    const double ratio = *row.herr / *row.g_norm;
    CHECK(ratio < prev);
    prev = ratio;
  }
}
