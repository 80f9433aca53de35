#include <doctest.h>

#include <random>

#include "sdwave/exponents.hpp"

using namespace sdw;

namespace {

const Rational quarter(1, 4);

bool exact_equal(const Number &x, const Rational &q) { return x.exact() && x.rational() == q; }

} // namespace

TEST_CASE("critical exponent examples") {
  CHECK(exact_equal(critical_exponent(2, quarter, 1), Rational(7, 3)));
  CHECK(exact_equal(critical_exponent(3, quarter, 1), Rational(9, 5)));
}

TEST_CASE("delta window examples") {
  const DeltaWindow w = delta_window(2, quarter, 1, 3);
  CHECK(exact_equal(w.lo, Rational(0)));
  CHECK(exact_equal(w.hi, Rational(1, 2)));
  CHECK(exact_equal(w.extra, Rational(-1, 3)));
  CHECK(w.extra_strict);
  CHECK(w.contains(quarter));
  CHECK_FALSE(w.contains(Rational(1, 2)));
  CHECK(exact_equal(delta_window(2, Rational(49, 100), 1, 3).hi, Rational(1, 50)));
  CHECK_THROWS_AS(delta_window(2, quarter, Rational(4, 3), 3), DomainError);
}

TEST_CASE("hat q examples") {
  const HatQ a = hat_q(2, 1, quarter, quarter);
  CHECK(exact_equal(a.q0, Rational(8, 5)));
  CHECK(exact_equal(a.q1, Rational(8, 7)));
  const HatQ b = hat_q(2, 1, quarter, 0);
  CHECK(exact_equal(b.q0, Rational(4, 3)));
  CHECK(exact_equal(b.q1, Rational(1)));
}

TEST_CASE("predicted decay examples") {
  const DecayExponents d = predicted_decay(2, quarter, 1, quarter, 1);
  CHECK(exact_equal(d.l2, Rational(-1, 3)));
  CHECK(exact_equal(d.weighted, Rational(-1, 6)));
  CHECK(exact_equal(d.hsbar, Rational(-1)));
  const DecayExponents z = predicted_decay(2, quarter, 1, 0, 1);
  CHECK(z.weighted == z.l2);
}

TEST_CASE("linear remainder rate") {
  CHECK(exact_equal(linear_remainder_rate(2, quarter, 1, 1), Rational(-1)));
  // The four exponents are -2, max(-5/3, -3), -4/3 and -1.
  CHECK(exact_equal(linear_remainder_rate(4, quarter, 0, 0), Rational(-1)));
}

TEST_CASE("profile remainder rate and its nu window") {
  CHECK(exact_equal(profile_remainder_rate(2, quarter, 3, quarter, 1, Rational(1, 5)), Rational(-3, 5)));
  CHECK(exact_equal(nu_upper_bound(2, 3, quarter, 1), quarter));
  CHECK_THROWS_AS(profile_remainder_rate(2, quarter, 3, quarter, 1, quarter), HypothesisError);
  CHECK_THROWS_AS(profile_remainder_rate(2, quarter, 3, quarter, 1, 0), HypothesisError);
}

TEST_CASE("zeta and tilde q") {
  CHECK(exact_equal(zeta(2, quarter, 1, 3, 0), Rational(-5, 3)));
  CHECK(exact_equal(tilde_q(2, 1), Rational(1)));
  CHECK(exact_equal(tilde_q(2, Rational(3, 2)), Rational(4, 3)));
  CHECK(exact_equal(tilde_q(2, 0), Rational(1)));
}

TEST_CASE("profile rates and the middle-frequency rate") {
  CHECK(exact_equal(profile_g_rate(2, quarter), Rational(-1, 3)));
  CHECK(exact_equal(profile_h_rate(2, quarter), Rational(-2, 3)));
  CHECK(mid_frequency_rate(0.25) == doctest::Approx(std::exp2(-13.0)));
}

TEST_CASE("hypothesis reports") {
  SimParams p;
  const HypothesisReport ok = validate_hypotheses(p, Mode::prop1);
  CHECK(ok.overall);
  for (const auto &h : ok.entries) CHECK_MESSAGE(h.satisfied, h.name);
  p.p = 2;
  const HypothesisReport bad = validate_hypotheses(p, Mode::prop1);
  CHECK_FALSE(bad.overall);
  CHECK(validate_hypotheses(SimParams{}, Mode::thm3).overall);
  const HypothesisReport thm2 = validate_hypotheses(SimParams{}, Mode::thm2);
  REQUIRE(thm2.thm2_case);
  CHECK(*thm2.thm2_case == Thm2Case::case2_1);
}

TEST_CASE("global existence case labels") {
  CHECK(classify_thm2(2, quarter, 2) == Thm2Case::below_critical);
  CHECK(classify_thm2(3, quarter, Rational(19, 10)) == Thm2Case::case1);
  CHECK(classify_thm2(3, quarter, 2) == Thm2Case::case1);
  CHECK(classify_thm2(3, quarter, Rational(11, 5)) == Thm2Case::case2_1);
  CHECK(classify_thm2(3, quarter, 3) == Thm2Case::case2_2);
}

TEST_CASE("string conversions reject unknown names") {
  CHECK(fkind_from_string("abs_power") == FKind::abs_power);
  CHECK(fkind_from_string("none") == FKind::none);
  CHECK_THROWS_AS(fkind_from_string("cubic"), std::invalid_argument);
  CHECK(mode_from_string(to_string(Mode::thm2)) == Mode::thm2);
  CHECK_THROWS_AS(mode_from_string("thm9"), std::invalid_argument);
}

TEST_CASE("property: critical exponent with r = 1 is 1 + 2/(n - 2 sigma)") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k < 50; ++k) {
      const Rational sigma(k, 100);
      CHECK(exact_equal(critical_exponent(n, sigma, 1), Rational(1) + Rational(2) / (Rational(n) - Rational(2) * sigma)));
    }
}

TEST_CASE("property: the delta window is nonempty whenever it is defined") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> sig(1, 49), rr(100, 200), pp(101, 500);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + i % 3;
    const Rational sigma(sig(rng), 100), r(rr(rng), 100), p(pp(rng), 100);
    if (!(Number(r) < Number(2 * n) / (Number(n) + Number(4) * Number(sigma)))) continue;
    const DeltaWindow w = delta_window(n, sigma, r, p);
    CHECK(w.lo < w.hi);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("property: profile remainder decays faster than a decaying G when every gain is positive") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> sig(1, 49), pp(101, 600), dd(1, 100), th(1, 100), nu(1, 99);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const int n = 1 + i % 3;
    const Rational sigma(sig(rng), 100), p(pp(rng), 100), delta(dd(rng), 100), theta(th(rng), 100);
    if (!(profile_g_rate(n, sigma) < Number(0))) continue;
    const Number upper = nu_upper_bound(n, p, delta, 1);
    if (!(upper > Number(0))) continue;
    const Number v = upper * Number(Rational(nu(rng), 100));
    const Number gain1 = (Number(p) - Number(1)) * (Number(Rational(n, 2)) - Number(sigma)) - Number(1);
    if (!(gain1 > Number(0))) continue;
    const Number rate = profile_remainder_rate(n, sigma, p, delta, theta, v, 1);
    CHECK(rate < profile_g_rate(n, sigma));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("property: exponent functions are deterministic") {
  for (int i = 0; i < 10; ++i) {
    const Number a = profile_remainder_rate(2, quarter, 3, quarter, 1, Rational(1, 5));
    const Number b = profile_remainder_rate(2, quarter, 3, quarter, 1, Rational(1, 5));
    CHECK(a.str() == b.str());
  }
}
