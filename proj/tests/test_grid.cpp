#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "sdwave/grid.hpp"
#include "sdwave/norms.hpp"

using namespace sdw;

namespace {

Field random_field(const Grid &g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Field u(g.size());
  for (auto &x : u) x = d(rng);
  return u;
}

std::filesystem::path temp_path(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("sdwave_test_" + name);
}

} // namespace

TEST_CASE("grid construction") {
  const Grid g = make_grid(2, 32, 10);
  CHECK(g.size() == 1024);
  CHECK(g.dx == doctest::Approx(20.0 / 32));
  CHECK(g.dk == doctest::Approx(std::numbers::pi / 10));
  CHECK(g.cell_measure() == doctest::Approx(g.dx * g.dx));
  CHECK(g.mode_measure() == doctest::Approx(std::pow(g.dk / (2 * std::numbers::pi), 2)));
  CHECK(g.shell_rho[0] == 0);
  CHECK(g.rho[0] == 0);
  CHECK(g.radius[0] == 0);
  CHECK(g.signed_mode(20) == -12);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    CHECK(g.shell_rho[g.shell_of[i]] == g.rho[i]);
    CHECK(g.negated(g.negated(i)) == i);
    CHECK(g.rho[g.negated(i)] == g.rho[i]);
  }
  CHECK_THROWS_AS(make_grid(4, 32, 1), GridError);
  CHECK_THROWS_AS(make_grid(1, 24, 1), GridError);
  CHECK_THROWS_AS(make_grid(1, 8, 1), GridError);
  CHECK_THROWS_AS(make_grid(1, 32, 0), GridError);
}

TEST_CASE("transform of a Gaussian matches its continuum transform") {
  const double w = 1.5;
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_grid(n, 64, 12);
    const Spectrum u_hat = forward(g, gaussian_data(g, 1.0, w));
    double err = 0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double ref = std::pow(2 * std::numbers::pi * w * w, 0.5 * n) * std::exp(-0.5 * w * w * g.rho[i] * g.rho[i]);
      err = std::max(err, std::abs(u_hat[i] - ref));
    }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("property: inverse(forward(u)) = u and Parseval holds") {
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_grid(n, n == 3 ? 16 : 64, 7.5);
    for (unsigned seed = 0; seed < 5; ++seed) {
      const Field u = random_field(g, seed);
      const Spectrum u_hat = forward(g, u);
      CHECK((inverse(g, u_hat) - u).abs().maxCoeff() < 1e-13 * u.abs().maxCoeff());
      CHECK(l2_spectral(g, u_hat) == doctest::Approx(lq_norm(g, u, 2)).epsilon(1e-13));
      CHECK(hermitian_defect(g, u_hat) < 1e-14);
    }
  }
}

TEST_CASE("hermitian defect sees a non-real field") {
  const Grid g = make_grid(1, 32, 1);
  Spectrum u_hat = Spectrum::Zero(g.size());
  u_hat[1] = 1;
  CHECK(hermitian_defect(g, u_hat) == doctest::Approx(1));
}

TEST_CASE("weights use the min-image distance") {
  const Grid g = make_grid(1, 16, 8);
  const Field w = min_image_weight(g, 1);
  CHECK(w[0] == 0);
  const Field w0 = min_image_weight(g, 0);
  CHECK((w0 == 1.0).all());
  CHECK(w[15] == doctest::Approx(1));
  CHECK(w[8] == doctest::Approx(8));
  const Field b = bracket_weight(g, 2);
  CHECK(b[3] == doctest::Approx(1 + 9));
}

TEST_CASE("property: the dealias mask is an idempotent, symmetric projector") {
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_grid(n, n == 3 ? 16 : 32, 1);
    const Eigen::ArrayXd m = dealias_mask(g);
    CHECK((m * m == m).all());
    CHECK(m[0] == 1);
    for (Eigen::Index i = 0; i < g.size(); ++i) CHECK(m[g.negated(i)] == m[i]);
  }
  const Grid g = make_grid(1, 64, 1);
  const Eigen::ArrayXd m = dealias_mask(g);
  CHECK(m[21] == 1);
  CHECK(m[22] == 0);
}

TEST_CASE("radial helpers evaluate once per shell") {
  const Grid g = make_grid(2, 16, 3);
  int calls = 0;
  const Eigen::ArrayXd r = radial_array(g, [&](double rho) {
    ++calls;
    return rho * rho;
  });
  CHECK(calls == g.shell_rho.size());
  CHECK(calls < g.size());
  CHECK((r - g.rho.square()).abs().maxCoeff() < 1e-12);
  CHECK(per_shell(g, [](double rho) { return rho; }).size() == static_cast<std::size_t>(g.shell_rho.size()));
}

TEST_CASE("binary field files round trip and reject bad magic") {
  const Grid g = make_grid(2, 16, 4);
  const Field u = random_field(g, 3);
  const auto path = temp_path("field.bin");
  write_field(path.string(), g, u);
  CHECK(std::filesystem::file_size(path) == 8 + 4 + 4 + 8 + 8 * 256);
  const FieldFile f = read_field(path.string());
  CHECK(f.n == 2);
  CHECK(f.N == 16);
  CHECK(f.L == 4);
  CHECK((f.values == u).all());
  {
    std::ofstream bad(path, std::ios::binary);
    bad << "NOTFIELD";
  }
  CHECK_THROWS(read_field(path.string()));
  std::filesystem::remove(path);
}

TEST_CASE("field CSV is ordered by x") {
  const Grid g = make_grid(1, 16, 4);
  const auto path = temp_path("field.csv");
  write_field_csv(path.string(), g, gaussian_data(g, 1, 1));
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "x,u");
  CHECK(std::stod(first.substr(0, first.find(','))) == doctest::Approx(-4));
  std::filesystem::remove(path);
}
