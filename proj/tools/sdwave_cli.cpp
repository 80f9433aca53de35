#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sdwave/harness/config.hpp"
#include "sdwave/harness/experiments.hpp"
#include "sdwave/verification/acceptance.hpp"

using namespace sdw;
using namespace sdw::harness;

namespace {

void print_outcome(const std::string &subcommand, const Outcome &out) {
  if (subcommand == "validate") {
    std::cout << out.summary.dump(2) << "\n";
  } else {
    for (const RateReport &r : out.reports) {
      std::cout << r.quantity << ": slope " << r.fitted << " +- " << r.std_error;
      if (r.predicted) std::cout << " vs " << *r.predicted;
      std::cout << " [" << to_string(r.verdict) << "]";
      if (!r.note.empty()) std::cout << " " << r.note;
      std::cout << "\n";
    }
    for (const char *key : {"ratio_g_decreasing_last_decade", "ratio_h_decreasing_last_decade", "guard_margin",
                            "final_ratio", "ratios_nonincreasing_after_2", "marching_gap_relative", "error"})
      if (out.summary.contains(key)) std::cout << key << ": " << out.summary[key].dump() << "\n";
  }
  std::cout << (out.exit_code == 0 ? "ok" : "failed") << "\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Pseudospectral simulator and verification harness for structurally damped waves"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> tolerance;
  int workers = 1;
  std::vector<int> only;

  using Runner = std::function<Outcome(const ExperimentConfig &, const RunOptions &)>;
  const std::pair<const char *, Runner> runs[] = {
      {"validate", cli_validate}, {"linear", cli_linear},   {"simulate", cli_simulate},
      {"kernel-table", cli_kernel_table}, {"picard", cli_picard},
  };
  const std::pair<const char *, const char *> help[] = {
      {"validate", "Check the hypotheses of the configured parameters"},
      {"linear", "Linear run with decay and diffusion-profile rates"},
      {"simulate", "Semilinear run with decay and diffusion-profile rates"},
      {"kernel-table", "Decay table of one kernel piece"},
      {"picard", "Picard iteration of the Duhamel map with a marching cross-check"},
  };
  for (std::size_t i = 0; i < std::size(runs); ++i) {
    CLI::App *sub = app.add_subcommand(runs[i].first, help[i].second);
    sub->add_option("--config", config_path, "Experiment YAML")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides outputs.dir)");
    sub->add_option("--workers", workers, "Worker cap")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", tolerance, "Override every fit tolerance")->check(CLI::PositiveNumber);
  }
  CLI::App *accept = app.add_subcommand("accept", "Run the acceptance suite");
  accept->add_option("--out", out_dir, "Artifact directory");
  accept->add_option("--workers", workers, "Criteria run concurrently")->check(CLI::PositiveNumber);
  accept->add_option("--tolerance", tolerance, "Override the rate tolerances")->check(CLI::PositiveNumber);
  accept->add_option("--only", only, "Criteria to run (1-10)")->check(CLI::Range(1, verification::kCriterionCount));

  CLI11_PARSE(app, argc, argv);

  try {
    if (accept->parsed()) {
      verification::AcceptOptions options;
      options.workers = workers;
      options.out_dir = out_dir;
      options.tolerance = tolerance;
      options.only = only;
      bool all = true;
      for (const auto &r : verification::run_acceptance(options)) {
        std::cout << verification::format_result(r) << std::endl;
        all = all && r.passed;
      }
      return all ? 0 : 1;
    }
    const ExperimentConfig config = load_config(config_path);
    RunOptions options;
    options.out_dir = out_dir;
    options.tolerance = tolerance;
    for (const auto &[name, run] : runs) {
      if (!app.got_subcommand(name)) continue;
      const Outcome out = run(config, options);
      print_outcome(name, out);
      return out.exit_code;
    }
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
