#ifndef SDWAVE_HARNESS_OUTPUT_HPP
#define SDWAVE_HARNESS_OUTPUT_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdwave/exponents.hpp"
#include "sdwave/fit.hpp"
#include "sdwave/grid.hpp"

namespace sdw::harness {

using json = nlohmann::ordered_json;

/// Version string baked in at build time.
std::string code_version();

std::string sha256_hex(const std::string &bytes);
std::string sha256_file(const std::filesystem::path &path);

json to_json(const RateReport &report);
json to_json(const std::vector<RateReport> &reports);
json to_json(const HypothesisReport &report);

/// JSON number that stays valid for NaN and infinities (written as null).
json number_or_null(double x);

/// Output directory that remembers every file written through it and ends
/// with a manifest listing each file's SHA-256.
class OutputDir {
public:
  explicit OutputDir(std::filesystem::path dir);

  const std::filesystem::path &path() const { return dir_; }
  void write_text(const std::string &name, const std::string &content);
  void write_json(const std::string &name, const json &value);
  void write_field(const std::string &name, const Grid &grid, const Field &u);
  void add_timing(const std::string &name, double seconds);
  /// Writes manifest.json: code version, subcommand, config hash, timings and files.
  void write_manifest(const std::string &subcommand, const std::string &config_text);

private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
  std::vector<std::pair<std::string, double>> timings_;
};

} // namespace sdw::harness

#endif
