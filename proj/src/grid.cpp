#include "sdwave/grid.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include <fftw3.h>

#include "sdwave/diagnostics.hpp"

namespace sdw {

namespace {

constexpr char kMagic[8] = {'S', 'D', 'W', 'F', 'I', 'E', 'L', 'D'};

Eigen::Index ipow(int base, int e) {
  Eigen::Index r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Calls f(flat index, per-axis indices) over the N^n lattice in row-major order.
template <typename F> void for_each_index(int n, int N, F &&f) {
  std::array<int, 3> idx{0, 0, 0};
  const Eigen::Index total = ipow(N, n);
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    f(flat, idx);
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[a] < N) break;
      idx[a] = 0;
    }
  }
}

class PlanCache {
public:
  ~PlanCache() {
    for (auto &[key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int N, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(n, N, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::array<int, 3> dims{N, N, N};
    auto *buf = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * ipow(N, n)));
    fftw_plan plan = fftw_plan_dft(n, dims.data(), buf, buf, sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!plan) throw GridError("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache &plan_cache() {
  static PlanCache cache;
  return cache;
}

} // namespace

double Grid::cell_measure() const { return std::pow(dx, n); }

double Grid::mode_measure() const { return std::pow(dk / (2 * std::numbers::pi), n); }

Eigen::Index Grid::negated(Eigen::Index i) const {
  Eigen::Index out = 0, stride = 1;
  for (int a = 0; a < n; ++a) {
    const Eigen::Index m = i % N;
    i /= N;
    out += ((N - m) % N) * stride;
    stride *= N;
  }
  return out;
}

Grid make_grid(int n, int N, double L) {
  if (n < 1 || n > 3) throw GridError("grid dimension must be 1, 2 or 3");
  if (N < 16 || !std::has_single_bit(static_cast<unsigned>(N)))
    throw GridError("points per axis must be a power of two >= 16, got " + std::to_string(N));
  if (!(L > 0) || !std::isfinite(L)) throw GridError("box half-length must be positive");
  Grid g;
  g.n = n;
  g.N = N;
  g.L = L;
  g.dx = 2 * L / N;
  g.dk = std::numbers::pi / L;
  const Eigen::Index total = ipow(N, n);
  g.rho.resize(total);
  g.radius.resize(total);
  // |ξ|² and |x|² are dk² and dx² times the same integer m1² + ... + mn².
  const std::int64_t max_m2 = static_cast<std::int64_t>(n) * (N / 2) * (N / 2);
  std::vector<std::int32_t> shell_id(static_cast<std::size_t>(max_m2 + 1), -1);
  std::vector<std::int64_t> m2_of(static_cast<std::size_t>(total));
  for_each_index(n, N, [&](Eigen::Index flat, const std::array<int, 3> &idx) {
    std::int64_t m2 = 0;
    for (int a = 0; a < n; ++a) {
      const std::int64_t m = g.signed_mode(idx[a]);
      m2 += m * m;
    }
    m2_of[flat] = m2;
    shell_id[m2] = 0;
    const double r = std::sqrt(static_cast<double>(m2));
    g.rho[flat] = g.dk * r;
    g.radius[flat] = g.dx * r;
  });
  std::int32_t count = 0;
  for (auto &id : shell_id)
    if (id == 0) id = count++;
  g.shell_rho.resize(count);
  for (std::int64_t m2 = 0; m2 <= max_m2; ++m2)
    if (shell_id[m2] >= 0) g.shell_rho[shell_id[m2]] = g.dk * std::sqrt(static_cast<double>(m2));
  g.shell_of.resize(static_cast<std::size_t>(total));
  for (Eigen::Index i = 0; i < total; ++i) g.shell_of[i] = shell_id[m2_of[i]];
  return g;
}

void fft(int n, int N, const Spectrum &in, Spectrum &out, int sign) {
  if (in.size() != ipow(N, n)) throw GridError("fft: array size does not match the grid");
  fftw_plan plan = plan_cache().get(n, N, sign);
  out = in;
  auto *data = reinterpret_cast<fftw_complex *>(out.data());
  fftw_execute_dft(plan, data, data);
}

Spectrum forward(const Grid &grid, const Spectrum &u) {
  Spectrum out;
  fft(grid.n, grid.N, u, out, -1);
  out *= grid.cell_measure();
  return out;
}

Spectrum forward(const Grid &grid, const Field &u) { return forward(grid, Spectrum(u.cast<std::complex<double>>())); }

Spectrum inverse_complex(const Grid &grid, const Spectrum &u_hat) {
  Spectrum out;
  fft(grid.n, grid.N, u_hat, out, +1);
  out *= grid.mode_measure();
  return out;
}

Field inverse(const Grid &grid, const Spectrum &u_hat) { return inverse_complex(grid, u_hat).real(); }

double hermitian_defect(const Grid &grid, const Spectrum &u_hat) {
  const double scale = u_hat.abs().maxCoeff();
  if (scale == 0) return 0;
  double worst = 0;
  for (Eigen::Index i = 0; i < u_hat.size(); ++i)
    worst = std::max(worst, std::abs(u_hat[i] - std::conj(u_hat[grid.negated(i)])));
  return worst / scale;
}

Field gaussian_data(const Grid &grid, double amplitude, double width) {
  if (!(width > 0)) throw GridError("gaussian width must be positive");
  if (width > grid.L / 8) {
    std::ostringstream os;
    os << "gaussian width " << width << " exceeds L/8 = " << grid.L / 8 << "; periodic images overlap";
    warn(os.str());
  }
  return amplitude * (-grid.radius.square() / (2 * width * width)).exp();
}

Field min_image_weight(const Grid &grid, double delta) {
  if (delta == 0) return Field::Ones(grid.size());
  return grid.radius.pow(delta);
}

Field bracket_weight(const Grid &grid, double delta) { return (1 + grid.radius.square()).pow(delta / 2); }

Eigen::ArrayXd dealias_mask(const Grid &grid) {
  Eigen::ArrayXd mask(grid.size());
  const int cut = grid.N / 3;
  for_each_index(grid.n, grid.N, [&](Eigen::Index flat, const std::array<int, 3> &idx) {
    bool keep = true;
    for (int a = 0; a < grid.n; ++a) keep = keep && std::abs(grid.signed_mode(idx[a])) <= cut;
    mask[flat] = keep ? 1.0 : 0.0;
  });
  return mask;
}

void write_field(const std::string &path, const Grid &grid, const Field &u) {
  static_assert(std::endian::native == std::endian::little, "binary field format is little-endian");
  if (u.size() != grid.size()) throw GridError("write_field: field size does not match the grid");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const std::int32_t n = grid.n, N = grid.N;
  os.write(kMagic, sizeof kMagic);
  os.write(reinterpret_cast<const char *>(&n), sizeof n);
  os.write(reinterpret_cast<const char *>(&N), sizeof N);
  os.write(reinterpret_cast<const char *>(&grid.L), sizeof grid.L);
  os.write(reinterpret_cast<const char *>(u.data()), static_cast<std::streamsize>(u.size() * sizeof(double)));
  if (!os) throw std::runtime_error("write failed for " + path);
}

FieldFile read_field(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[8];
  std::int32_t n = 0, N = 0;
  FieldFile f;
  is.read(magic, sizeof magic);
  is.read(reinterpret_cast<char *>(&n), sizeof n);
  is.read(reinterpret_cast<char *>(&N), sizeof N);
  is.read(reinterpret_cast<char *>(&f.L), sizeof f.L);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw std::runtime_error(path + ": not a field file");
  if (n < 1 || n > 3 || N < 1 || N > (1 << 16)) throw std::runtime_error(path + ": corrupt header");
  f.n = n;
  f.N = N;
  f.values.resize(ipow(N, n));
  is.read(reinterpret_cast<char *>(f.values.data()), static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!is) throw std::runtime_error(path + ": truncated field data");
  return f;
}

void write_field_csv(const std::string &path, const Grid &grid, const Field &u) {
  if (grid.n != 1) throw GridError("CSV field output is for n = 1 only");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.precision(17);
  os << "x,u\n";
  for (int j = grid.N / 2; j < grid.N + grid.N / 2; ++j) {
    const int i = j % grid.N;
    os << grid.signed_mode(i) * grid.dx << ',' << u[i] << '\n';
  }
}

} // namespace sdw
