#include <doctest.h>

#include <cmath>

#include "sdwave/norms.hpp"
#include "sdwave/propagator.hpp"
#include "sdwave/verification/oracle.hpp"

using namespace sdw;

namespace {

double max_abs(const Spectrum &a) { return a.abs().maxCoeff(); }

} // namespace

TEST_CASE("linear solution at t = 0 returns the data") {
  const Grid g = make_grid(2, 16, 6);
  const Field u0 = gaussian_data(g, 1, 1), u1 = gaussian_data(g, 0.5, 0.8);
  const State s = linear_solution(g, 0.25, u0, u1, 0);
  CHECK(max_abs(s.u_hat - forward(g, u0)) < 1e-14);
  CHECK(max_abs(s.v_hat - forward(g, u1)) < 1e-14);
}

TEST_CASE("linear solution matches per-mode ODE solves") {
  const Grid g = make_grid(1, 64, 10);
  const double sigma = 0.3, t = 7;
  const Spectrum u0 = forward(g, gaussian_data(g, 1, 1.2)), u1 = forward(g, gaussian_data(g, 2, 0.9));
  const State s = linear_solution(g, sigma, u0, u1, t);
  CHECK(s.t == t);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto ref = verification::ode_symbols(sigma, g.rho[i], t);
    const std::complex<double> u = ref.k0 * u0[i] + ref.k1 * u1[i];
    const std::complex<double> v = ref.dk0 * u0[i] + ref.dk1 * u1[i];
    CHECK(std::abs(s.u_hat[i] - u) <= 1e-9 * (1 + std::abs(u)));
    CHECK(std::abs(s.v_hat[i] - v) <= 1e-9 * (1 + std::abs(v)));
  }
}

TEST_CASE("property: stepping equals the one-shot solution") {
  const Grid g = make_grid(1, 128, 20);
  const Field u0 = gaussian_data(g, 1, 2), u1 = gaussian_data(g, -1, 1);
  const LinearPropagator prop(g, 0.25);
  State s{0, forward(g, u0), forward(g, u1)};
  for (int k = 0; k < 50; ++k) s = linear_step(prop, s, 0.2);
  const State ref = linear_solution(g, 0.25, u0, u1, 10);
  CHECK(s.t == doctest::Approx(10));
  CHECK(max_abs(s.u_hat - ref.u_hat) < 1e-12 * max_abs(ref.u_hat) + 1e-14);
  CHECK(max_abs(s.v_hat - ref.v_hat) < 1e-12 * max_abs(ref.u_hat) + 1e-14);
}

TEST_CASE("property: linear energy is nonincreasing and real fields stay real") {
  const Grid g = make_grid(2, 32, 8);
  const Field u0 = gaussian_data(g, 1, 1), u1 = gaussian_data(g, 1, 2);
  double prev = std::numeric_limits<double>::infinity();
  for (double t : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const State s = linear_solution(g, 0.2, u0, u1, t);
    const double e = energy(g, s);
    CHECK(e <= prev * (1 + 1e-14));
    prev = e;
    CHECK(hermitian_defect(g, s.u_hat) < 1e-14);
  }
}

TEST_CASE("symbol cache reuses arrays per step size and evicts the oldest") {
  const Grid g = make_grid(1, 32, 4);
  const LinearPropagator prop(g, 0.25);
  const auto a = prop.symbols(0.1);
  CHECK(prop.symbols(0.1) == a);
  for (double dt : {0.2, 0.3, 0.4, 0.5}) prop.symbols(dt);
  CHECK(prop.symbols(0.1) != a);
  const SymbolArrays direct = symbol_arrays(g, 0.25, 0.1);
  CHECK((direct.k1 == a->k1).all());
}

TEST_CASE("kernel pieces add up to the full kernel") {
  const Grid g = make_grid(1, 256, 40);
  for (auto which : {KernelWhich::K0, KernelWhich::K1}) {
    const Spectrum full = kernel_spectrum(g, 0.25, which, KernelPiece::full, 3);
    const Spectrum low = kernel_spectrum(g, 0.25, which, KernelPiece::low, 3);
    const Spectrum mid = kernel_spectrum(g, 0.25, which, KernelPiece::mid, 3);
    const Spectrum high = kernel_spectrum(g, 0.25, which, KernelPiece::high, 3);
    const Spectrum mh = kernel_spectrum(g, 0.25, which, KernelPiece::mh, 3);
    CHECK(max_abs(low + mid + high - full) < 1e-14 * (1 + max_abs(full)));
    CHECK(max_abs(mid + high - mh) < 1e-14 * (1 + max_abs(full)));
  }
}

TEST_CASE("split kernels on the low piece") {
  const Grid g = make_grid(1, 512, 2000);
  const Spectrum k1 = kernel_spectrum(g, 0.25, KernelWhich::K1, KernelPiece::low, 2);
  const Spectrum kp = kernel_spectrum(g, 0.25, KernelWhich::K1plus, KernelPiece::low, 2);
  const Spectrum km = kernel_spectrum(g, 0.25, KernelWhich::K1minus, KernelPiece::low, 2);
  CHECK(kp[0] == 0.0);
  CHECK(km[0] == 0.0);
  Spectrum diff = kp + km - k1;
  diff[0] = 0;
  CHECK(max_abs(diff) < 1e-10 * max_abs(k1));
  CHECK_THROWS_AS(kernel_spectrum(g, 0.25, KernelWhich::K1plus, KernelPiece::full, 2),
                  dispersion::DegenerateSplitError);
}

TEST_CASE("predicted kernel exponents") {
  CHECK(*kernel_predicted_exponent(2, 0.25, KernelWhich::K1, KernelPiece::low, 0) == doctest::Approx(-1.0 / 3));
  CHECK(*kernel_predicted_exponent(2, 0.25, KernelWhich::K0, KernelPiece::full, 0) == doctest::Approx(-2.0 / 3));
  CHECK(*kernel_predicted_exponent(2, 0.25, KernelWhich::K1minus, KernelPiece::low, 0) == doctest::Approx(-1));
  CHECK(*kernel_predicted_exponent(1, 0.25, KernelWhich::K1, KernelPiece::low, 1) == doctest::Approx(2.0 / 3));
  CHECK_FALSE(kernel_predicted_exponent(2, 0.25, KernelWhich::K1, KernelPiece::mid, 0));
  CHECK_FALSE(kernel_predicted_exponent(2, 0.25, KernelWhich::K1, KernelPiece::high, 0));
}

TEST_CASE("kernel names round trip") {
  for (auto w : {KernelWhich::K0, KernelWhich::K1, KernelWhich::K1plus, KernelWhich::K1minus, KernelWhich::K0plus,
                 KernelWhich::K0minus})
    CHECK(kernel_which_from_string(to_string(w)) == w);
  for (auto p : {KernelPiece::full, KernelPiece::low, KernelPiece::mid, KernelPiece::high, KernelPiece::mh})
    CHECK(kernel_piece_from_string(to_string(p)) == p);
  CHECK_THROWS(kernel_which_from_string("K2"));
  CHECK_THROWS(kernel_piece_from_string("top"));
}

TEST_CASE("mid piece decays exponentially") {
  const Grid g = make_grid(2, 256, 64);
  std::vector<double> t;
  for (int k = 0; k < 12; ++k) t.push_back(1 + 19.0 * k / 11);
  const KernelTable table =
      kernel_rate_table(g, 0.25, KernelWhich::K1, KernelPiece::mid, 0, gaussian_data(g, 1, 1), t);
  CHECK_FALSE(table.predicted);
  const RateReport r = kernel_table_report(table, WindowPolicy::fixed(1, 20), 0.05);
  CHECK(r.model == "exponential");
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.fitted < 0);
}
