#ifndef SDWAVE_VERIFICATION_ACCEPTANCE_HPP
#define SDWAVE_VERIFICATION_ACCEPTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdwave/harness/config.hpp"
#include "sdwave/harness/output.hpp"

namespace sdw::verification {

inline constexpr int kCriterionCount = 10;

struct AcceptOptions {
  /// Criteria run concurrently up to this cap.
  int workers = 1;
  /// Per-criterion artifacts go to <out_dir>/criterion_<k>.
  std::optional<std::string> out_dir;
  /// Replaces the pinned fit tolerances of the rate criteria.
  std::optional<double> tolerance;
  /// Subset of criteria (1-based); empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured values behind the verdict, one line.
  std::string detail;
  double seconds = 0;
};

std::string criterion_name(int id);
CriterionResult run_criterion(int id, const AcceptOptions &options);
/// Results in criterion order regardless of completion order.
std::vector<CriterionResult> run_acceptance(const AcceptOptions &options);
/// "criterion K: PASS|FAIL name (detail) [seconds]".
std::string format_result(const CriterionResult &result);

/// Configurations behind the simulation criteria; configs/ ships the same values.
harness::ExperimentConfig semilinear_reference_config();
harness::ExperimentConfig linear_reference_config();
harness::ExperimentConfig kernel_reference_config();
harness::ExperimentConfig picard_reference_config();

} // namespace sdw::verification

#endif
