#include "sdwave/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sdwave/exponents.hpp"

namespace sdw {

namespace {

void append_number(std::string &out, double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, ptr);
}

} // namespace

double lq_norm(const Grid &grid, const Field &u, double q) {
  if (!(q >= 1)) throw DomainError("lq_norm: q must be >= 1");
  if (u.size() == 0) return 0;
  if (std::isinf(q)) return u.abs().maxCoeff();
  if (q == 2) return std::sqrt(u.square().sum() * grid.cell_measure());
  return std::pow(u.abs().pow(q).sum() * grid.cell_measure(), 1 / q);
}

double l2_spectral(const Grid &grid, const Spectrum &u_hat, bool exclude_mean) {
  double s = u_hat.abs2().sum();
  if (exclude_mean) s -= std::norm(u_hat[0]);
  return std::sqrt(std::max(s, 0.0) * grid.mode_measure());
}

double hsdot_norm(const Grid &grid, const Spectrum &u_hat, double s) {
  if (s == 0) return l2_spectral(grid, u_hat);
  if (s < 0 && u_hat[0] != 0.0) throw DomainError("hsdot_norm: negative order needs a zero mean mode");
  double acc = 0;
  for (Eigen::Index i = 1; i < u_hat.size(); ++i) acc += std::pow(grid.rho[i], 2 * s) * std::norm(u_hat[i]);
  return std::sqrt(acc * grid.mode_measure());
}

double weighted_l2(const Grid &grid, const Field &u, double delta) {
  return std::sqrt((min_image_weight(grid, delta) * u).square().sum() * grid.cell_measure());
}

double bracket_weighted_l2(const Grid &grid, const Field &u, double delta) {
  return std::sqrt((bracket_weight(grid, delta) * u).square().sum() * grid.cell_measure());
}

double lorentz_quasinorm(const Grid &grid, const Field &u, double q, double r) {
  if (!(q >= 1) || std::isinf(q)) throw DomainError("lorentz_quasinorm: q must be finite and >= 1");
  if (!(r >= 1)) throw DomainError("lorentz_quasinorm: r must be >= 1");
  std::vector<double> a(u.data(), u.data() + u.size());
  for (double &x : a) x = std::abs(x);
  std::sort(a.begin(), a.end(), std::greater<>());
  const double mu = grid.cell_measure();
  if (std::isinf(r)) {
    double best = 0;
    for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, std::pow((k + 1) * mu, 1 / q) * a[k]);
    return best;
  }
  const double e = r / q;
  double acc = 0, prev = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double next = std::pow((k + 1) * mu, e);
    if (a[k] == 0) break;
    acc += std::pow(a[k], r) * (next - prev);
    prev = next;
  }
  return std::pow(acc / e, 1 / r);
}

double energy(const Grid &grid, const State &state) {
  const double kinetic = state.v_hat.abs2().sum();
  const double potential = (grid.rho.square() * state.u_hat.abs2()).sum();
  return 0.5 * (kinetic + potential) * grid.mode_measure();
}

XNormSpec x_norm_spec(int n, double sigma, double delta, double sbar) {
  XNormSpec s;
  s.sbar = sbar;
  s.delta = delta;
  s.hs_exponent = (n / 4.0 - sigma + sbar / 2) / (1 - sigma);
  s.weight_exponent = (n / 4.0 - delta / 2 - sigma) / (1 - sigma);
  return s;
}

double x_norm(const Grid &grid, const std::vector<State> &samples, const XNormSpec &spec) {
  double best = 0;
  const Field weight = bracket_weight(grid, spec.delta);
  for (const State &s : samples) {
    const double bracket_t = std::sqrt(1 + s.t * s.t);
    const double hs = hsdot_norm(grid, s.u_hat, spec.sbar);
    const Field u = inverse(grid, s.u_hat);
    const double wl2 = std::sqrt((weight * u).square().sum() * grid.cell_measure());
    best = std::max(best, std::pow(bracket_t, spec.hs_exponent) * hs + std::pow(bracket_t, spec.weight_exponent) * wl2);
  }
  return best;
}

std::vector<double> NormSeries::times() const { return column("t"); }

std::vector<double> NormSeries::column(const std::string &name) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out;
  out.reserve(rows.size());
  for (const NormRow &r : rows) {
    if (name == "t") out.push_back(r.t);
    else if (name == "l2") out.push_back(r.l2);
    else if (name == "wdelta") out.push_back(r.wdelta);
    else if (name == "hs1") out.push_back(r.hs1);
    else if (name == "energy") out.push_back(r.energy);
    else if (name == "gerr") out.push_back(r.gerr.value_or(nan));
    else if (name == "herr") out.push_back(r.herr.value_or(nan));
    else if (name == "ratio_g") out.push_back(r.ratio_g.value_or(nan));
    else if (name == "mean") out.push_back(r.mean);
    else throw std::invalid_argument("unknown norm column '" + name + "'");
  }
  return out;
}

std::string NormSeries::to_csv() const {
  std::string out = "t,l2,wdelta,hs1,energy,gerr,herr,ratio_g\n";
  for (const NormRow &r : rows) {
    for (double x : {r.t, r.l2, r.wdelta, r.hs1, r.energy}) {
      append_number(out, x);
      out += ',';
    }
    if (r.gerr) append_number(out, *r.gerr);
    out += ',';
    if (r.herr) append_number(out, *r.herr);
    out += ',';
    if (r.ratio_g) append_number(out, *r.ratio_g);
    out += '\n';
  }
  return out;
}

} // namespace sdw
