#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sdwave/norms.hpp"
#include "sdwave/solver.hpp"

using namespace sdw;

namespace {

double max_abs(const Spectrum &a) { return a.abs().maxCoeff(); }

SimParams params_with(FKind kind, double p = 3) {
  SimParams s;
  s.n = 1;
  s.f_kind = kind;
  s.p = p;
  return s;
}

State start(const Grid &g, const Field &u0, const Field &u1) { return {0, forward(g, u0), forward(g, u1)}; }

} // namespace

TEST_CASE("pointwise nonlinearities") {
  Field u(3);
  u << -2, 0, 3;
  const Field a = nonlinearity(u, 2, FKind::abs_power);
  const Field s = nonlinearity(u, 2, FKind::signed_power);
  CHECK(a[0] == 4);
  CHECK(s[0] == -4);
  CHECK(s[2] == 9);
  CHECK((nonlinearity(u, 2, FKind::none) == 0).all());
}

TEST_CASE("nonlinear evaluator integral and aliasing on a resolved Gaussian") {
  const Grid g = make_grid(1, 128, 16);
  const double A = 0.5, w = 1.5, p = 3;
  const NonlinearEvaluator f(g, p, FKind::abs_power);
  CHECK(f.padded_points() == 192);
  const auto r = f(forward(g, gaussian_data(g, A, w)));
  CHECK(r.integral == doctest::Approx(std::pow(A, p) * std::sqrt(2 * std::numbers::pi * w * w / p)).epsilon(1e-10));
  CHECK(r.aliasing < 1e-12);
  CHECK(std::abs(r.f_hat[0] - r.integral) < 1e-10);
  CHECK(hermitian_defect(g, r.f_hat) < 1e-14);
}

TEST_CASE("with f = none a step is exactly the linear step") {
  const Grid g = make_grid(1, 64, 10);
  const State s0 = start(g, gaussian_data(g, 1, 1), gaussian_data(g, 1, 2));
  const EtdIntegrator etd(g, 0.25, 3, FKind::none, 0.1, 2);
  const LinearPropagator lin(g, 0.25);
  State a = s0, b = s0;
  for (int k = 0; k < 20; ++k) {
    a = etd.step(a);
    b = lin.step(b, 0.1);
  }
  CHECK((a.u_hat == b.u_hat).all());
  CHECK((a.v_hat == b.v_hat).all());
}

TEST_CASE("exponential integrator convergence orders") {
  const Grid g = make_grid(1, 64, 12);
  const Field u0 = gaussian_data(g, 0.6, 1.5), u1 = gaussian_data(g, 0.6, 2);
  const double T = 2;
  auto solve = [&](double dt, int order) {
    const EtdIntegrator etd(g, 0.25, 3, FKind::signed_power, dt, order);
    State s = start(g, u0, u1);
    const long steps = std::lround(T / dt);
    for (long k = 0; k < steps; ++k) s = etd.step(s);
    return s.u_hat;
  };
  const Spectrum ref = solve(T / 2560, 2);
  for (int order : {1, 2}) {
    const double e1 = max_abs(solve(T / 40, order) - ref);
    const double e2 = max_abs(solve(T / 80, order) - ref);
    const double observed = std::log2(e1 / e2);
    CHECK_MESSAGE(observed == doctest::Approx(order).epsilon(0.15), "order ", order, " observed ", observed);
  }
}

TEST_CASE("blow-up guard trips for large data") {
  const Grid g = make_grid(1, 32, 4);
  const State s0 = start(g, gaussian_data(g, 20, 1), gaussian_data(g, 20, 1));
  EtdIntegrator etd(g, 0.25, 3, FKind::abs_power, 0.01, 2);
  etd.arm_guard(s0);
  State s = s0;
  CHECK_THROWS_AS(
      {
        for (int k = 0; k < 10000; ++k) s = etd.step(s);
      },
      BlowUpError);
}

TEST_CASE("data size is the L2 size of the pair") {
  const Grid g = make_grid(1, 64, 10);
  const Field u0 = gaussian_data(g, 1, 1);
  const State s = start(g, u0, 2 * u0);
  CHECK(data_size(g, s) == doctest::Approx(std::sqrt(5.0) * lq_norm(g, u0, 2)));
  CHECK(data_size(g, start(g, Field::Zero(g.size()), u0)) > 0);
}

TEST_CASE("time step and schedules") {
  const Grid g = make_grid(1, 256, 10);
  CHECK(default_time_step(g, 0.25) == doctest::Approx(std::min(0.1, 0.25 / max_stiff_rate(g, 0.25))));
  CHECK(max_stiff_rate(g, 0.25) > 0);
  const auto sched = geometric_schedule(10, 2, 1);
  CHECK(sched == std::vector<double>{0, 1, 2, 4, 8, 10});
  CHECK_THROWS(geometric_schedule(10, 1));
  const auto nodes = uniform_nodes(1, 0.3);
  CHECK(nodes.size() == 4);
  CHECK(nodes.back() == 1);
  CHECK_THROWS(uniform_nodes(0, 0.1));
}

TEST_CASE("run with f = none samples the one-shot linear solution") {
  const Grid g = make_grid(1, 128, 20);
  const Field u0 = gaussian_data(g, 1, 1), u1 = gaussian_data(g, 1, 2);
  RunSpec spec;
  spec.params = params_with(FKind::none);
  spec.t_final = 20;
  spec.keep_states = true;
  int seen = 0;
  const RunResult r = run(g, u0, u1, spec, [&](const State &, NormRow &) { ++seen; });
  CHECK(seen == static_cast<int>(r.series.rows.size()));
  REQUIRE(!r.trajectory.states.empty());
  const State &last = r.trajectory.states.back();
  CHECK(last.t == 20);
  CHECK(max_abs(last.u_hat - linear_solution(g, 0.25, u0, u1, 20).u_hat) == 0);
}

TEST_CASE("sampled norms drop the mean mode") {
  const Grid g = make_grid(1, 128, 20);
  const State s = start(g, gaussian_data(g, 1, 1), Field::Zero(g.size()));
  const NormRow row = sample_norms(g, s, 0.25, 1);
  CHECK(row.l2 == doctest::Approx(l2_spectral(g, s.u_hat, true)));
  CHECK(row.mean == doctest::Approx(std::abs(s.u_hat[0])));
  CHECK(row.energy == doctest::Approx(energy(g, s)));
}

TEST_CASE("Picard iteration contracts for small data and matches marching") {
  const Grid g = make_grid(1, 64, 16);
  const Field u0 = Field::Zero(g.size()), u1 = gaussian_data(g, 0.05, 2);
  PicardOptions opt;
  opt.T = 4;
  opt.dt = 0.1;
  opt.tol = 1e-13;
  const PicardResult r = picard_solve(g, u0, u1, params_with(FKind::abs_power), opt);
  CHECK(r.converged);
  CHECK_FALSE(r.non_contraction);
  REQUIRE(r.ratios.size() >= 2);
  CHECK(r.ratios.back() < 0.5);
  EtdIntegrator etd(g, 0.25, 3, FKind::abs_power, r.solution.dt, 2);
  State s = start(g, u0, u1);
  for (std::size_t k = 1; k < r.solution.states.size(); ++k) s = etd.step(s);
  const Spectrum &pic = r.solution.states.back().u_hat;
  CHECK(max_abs(s.u_hat - pic) < 1e-6 * max_abs(pic));
}
