#include "sdwave/harness/output.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/sha.h>

namespace sdw::harness {

std::string code_version() { return SDWAVE_VERSION; }

std::string sha256_hex(const std::string &bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char *>(bytes.data()), bytes.size(), digest);
  std::ostringstream os;
  for (unsigned char c : digest) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
  return os.str();
}

std::string sha256_file(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return sha256_hex(ss.str());
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const RateReport &r) {
  json j;
  j["quantity"] = r.quantity;
  j["model"] = r.model;
  j["window"] = {number_or_null(r.t_a), number_or_null(r.t_b)};
  j["samples"] = r.samples;
  j["fitted"] = number_or_null(r.fitted);
  j["std_error"] = number_or_null(r.std_error);
  j["predicted"] = r.predicted ? number_or_null(*r.predicted) : json(nullptr);
  j["tolerance"] = r.tolerance;
  j["comparison"] = to_string(r.comparison);
  j["verdict"] = to_string(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const std::vector<RateReport> &reports) {
  json arr = json::array();
  for (const auto &r : reports) arr.push_back(to_json(r));
  return arr;
}

json to_json(const HypothesisReport &report) {
  json j;
  j["mode"] = to_string(report.mode);
  j["overall"] = report.overall;
  if (report.thm2_case) j["thm2_case"] = to_string(*report.thm2_case);
  json entries = json::array();
  for (const auto &h : report.entries) {
    json e;
    e["name"] = h.name;
    e["satisfied"] = h.satisfied;
    e["boundary"] = h.boundary;
    e["lhs"] = h.lhs.str();
    e["relation"] = h.relation;
    e["rhs"] = h.rhs.str();
    e["lhs_value"] = number_or_null(h.lhs.value());
    e["rhs_value"] = number_or_null(h.rhs.value());
    e["source"] = h.source;
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

void OutputDir::write_text(const std::string &name, const std::string &content) {
  std::ofstream os(dir_ / name, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
  os << content;
  files_.push_back(name);
}

void OutputDir::write_json(const std::string &name, const json &value) { write_text(name, value.dump(2) + "\n"); }

void OutputDir::write_field(const std::string &name, const Grid &grid, const Field &u) {
  sdw::write_field((dir_ / name).string(), grid, u);
  files_.push_back(name);
}

void OutputDir::add_timing(const std::string &name, double seconds) { timings_.emplace_back(name, seconds); }

void OutputDir::write_manifest(const std::string &subcommand, const std::string &config_text) {
  json m;
  m["code_version"] = code_version();
  m["subcommand"] = subcommand;
  m["config_sha256"] = sha256_hex(config_text);
  json t = json::object();
  for (const auto &[name, s] : timings_) t[name] = s;
  m["timings_seconds"] = t;
  json files = json::array();
  for (const auto &name : files_) {
    json f;
    f["name"] = name;
    f["sha256"] = sha256_file(dir_ / name);
    f["bytes"] = std::filesystem::file_size(dir_ / name);
    files.push_back(f);
  }
  m["files"] = files;
  std::ofstream os(dir_ / "manifest.json");
  os << m.dump(2) << "\n";
}

} // namespace sdw::harness
