#ifndef SDWAVE_HARNESS_CONFIG_HPP
#define SDWAVE_HARNESS_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdwave/exponents.hpp"
#include "sdwave/fit.hpp"
#include "sdwave/grid.hpp"
#include "sdwave/propagator.hpp"
#include "sdwave/solver.hpp"

namespace sdw::harness {

/// Parse or validation failure, with the 1-based line and column when known.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string &message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

struct DataSpec {
  enum class Kind { zero, gaussian, file };
  Kind kind = Kind::zero;
  double amplitude = 0;
  double width = 1;
  std::string path;

  friend bool operator==(const DataSpec &, const DataSpec &) = default;
};

struct GridSpec {
  int N = 256;
  /// Empty means the box policy L = 8·T^{1/(2(1-σ))}·w.
  std::optional<double> L;
  double box_width = 4;

  friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

struct IntegratorSpec {
  /// Empty means min(0.1, 0.25/max|λ-|).
  std::optional<double> dt;
  int order = 2;
  double t_final = 100;
  double ratio = 1.1;
  double start = 1;

  friend bool operator==(const IntegratorSpec &, const IntegratorSpec &) = default;
};

struct FitSpec {
  WindowPolicy::Kind window = WindowPolicy::Kind::last_decade;
  double t_a = 0;
  double t_b = 0;
  /// Empty means 0.05 for linear rates and 0.1 for semilinear ones.
  std::optional<double> tolerance;

  friend bool operator==(const FitSpec &, const FitSpec &) = default;
};

struct KernelSpec {
  KernelWhich which = KernelWhich::K1;
  KernelPiece piece = KernelPiece::low;
  double theta = 0;
  std::vector<double> times;

  friend bool operator==(const KernelSpec &, const KernelSpec &) = default;
};

struct OutputSpec {
  std::string dir = "out";
  bool snapshots = false;

  friend bool operator==(const OutputSpec &, const OutputSpec &) = default;
};

struct ExperimentConfig {
  Mode mode = Mode::thm3;
  SimParams params;
  GridSpec grid;
  DataSpec u0;
  DataSpec u1;
  IntegratorSpec integrator;
  FitSpec fit;
  KernelSpec kernel;
  PicardOptions picard;
  OutputSpec outputs;
  bool verify = true;
};

bool operator==(const ExperimentConfig &a, const ExperimentConfig &b);

/// Parses YAML text. Unknown keys, wrong types and out-of-range values are
/// ConfigErrors naming the field and its position.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

/// Canonical YAML; parse_config(dump_config(c)) == c.
std::string dump_config(const ExperimentConfig &config);

/// Box half-length, resolving the box policy when L is not given.
double resolve_box(const ExperimentConfig &config);
Grid build_grid(const ExperimentConfig &config);
Field build_data(const Grid &grid, const DataSpec &spec);
double resolve_dt(const ExperimentConfig &config, const Grid &grid);
WindowPolicy resolve_window(const ExperimentConfig &config);

} // namespace sdw::harness

#endif
