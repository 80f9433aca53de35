#ifndef SDWAVE_HARNESS_EXPERIMENTS_HPP
#define SDWAVE_HARNESS_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdwave/fit.hpp"
#include "sdwave/harness/config.hpp"
#include "sdwave/harness/output.hpp"
#include "sdwave/norms.hpp"
#include "sdwave/profiles.hpp"

namespace sdw::harness {

struct RunOptions {
  /// Overrides outputs.dir.
  std::optional<std::string> out_dir;
  /// Overrides every fit tolerance.
  std::optional<double> tolerance;
  /// Skip writing files (tests).
  bool write = true;
};

struct Outcome {
  /// 0 when nothing failed, 1 when a verdict or check failed.
  int exit_code = 0;
  std::vector<RateReport> reports;
  NormSeries series;
  json summary;
};

Outcome cli_validate(const ExperimentConfig &config, const RunOptions &options = {});
/// Linear run (f forced to none): norms, diffusion-profile remainder, rate reports.
Outcome cli_linear(const ExperimentConfig &config, const RunOptions &options = {});
/// Run with the configured nonlinearity: decay rates and profile remainder.
Outcome cli_simulate(const ExperimentConfig &config, const RunOptions &options = {});
Outcome cli_kernel_table(const ExperimentConfig &config, const RunOptions &options = {});
/// Picard iteration plus cross-check against ETD marching on the same nodes.
Outcome cli_picard(const ExperimentConfig &config, const RunOptions &options = {});

/// Default tolerance by problem class.
inline constexpr double kLinearTolerance = 0.05;
inline constexpr double kSemilinearTolerance = 0.1;

} // namespace sdw::harness

#endif
