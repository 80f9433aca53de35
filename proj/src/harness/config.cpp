#include "sdwave/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace sdw::harness {

ConfigError::ConfigError(const std::string &message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                        message
                                  : message),
      line_(line), column_(column) {}

namespace {

std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

class Section {
public:
  Section(const YAML::Node &node, std::string path, std::set<std::string> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node.IsMap()) fail(path_.empty() ? "top level must be a mapping" : "'" + path_ + "' must be a mapping", node);
    for (const auto &kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail("unknown key '" + qualify(key) + "'", kv.first);
    }
  }

  [[noreturn]] static void fail(const std::string &msg, const YAML::Node &at) {
    const auto mark = at.Mark();
    throw ConfigError(msg, mark.line >= 0 ? mark.line + 1 : 0, mark.column >= 0 ? mark.column + 1 : 0);
  }

  bool has(const std::string &key) const { return static_cast<bool>(node_[key]); }
  YAML::Node get(const std::string &key) const { return node_[key]; }
  std::string qualify(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

  std::string scalar(const std::string &key) const {
    const YAML::Node v = node_[key];
    if (!v.IsScalar()) fail("'" + qualify(key) + "' must be a scalar", v);
    return v.Scalar();
  }

  void number(const std::string &key, Number &out) const {
    if (!has(key)) return;
    try {
      out = Number::parse(scalar(key));
    } catch (const std::invalid_argument &) {
      fail("'" + qualify(key) + "' is not a number", get(key));
    }
  }

  void real(const std::string &key, double &out) const {
    if (!has(key)) return;
    try {
      out = Number::parse(scalar(key)).value();
    } catch (const std::invalid_argument &) {
      fail("'" + qualify(key) + "' is not a number", get(key));
    }
  }

  void optional_real(const std::string &key, std::optional<double> &out, const char *auto_word) const {
    if (!has(key)) return;
    if (scalar(key) == auto_word) {
      out.reset();
      return;
    }
    double x = 0;
    real(key, x);
    out = x;
  }

  void integer(const std::string &key, int &out) const {
    if (!has(key)) return;
    const std::string s = scalar(key);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("'" + qualify(key) + "' must be an integer", get(key));
    out = v;
  }

  void boolean(const std::string &key, bool &out) const {
    if (!has(key)) return;
    const std::string s = scalar(key);
    if (s == "true") out = true;
    else if (s == "false") out = false;
    else fail("'" + qualify(key) + "' must be true or false", get(key));
  }

  void text(const std::string &key, std::string &out) const {
    if (has(key)) out = scalar(key);
  }

  template <typename Enum, typename Parse> void choice(const std::string &key, Enum &out, Parse parse) const {
    if (!has(key)) return;
    try {
      out = parse(scalar(key));
    } catch (const std::invalid_argument &e) {
      fail("'" + qualify(key) + "': " + e.what(), get(key));
    }
  }

private:
  YAML::Node node_;
  std::string path_;
};

DataSpec::Kind data_kind_from_string(const std::string &s) {
  if (s == "zero") return DataSpec::Kind::zero;
  if (s == "gaussian") return DataSpec::Kind::gaussian;
  if (s == "file") return DataSpec::Kind::file;
  throw std::invalid_argument("unknown data kind '" + s + "'");
}

std::string to_string(DataSpec::Kind k) {
  switch (k) {
  case DataSpec::Kind::zero: return "zero";
  case DataSpec::Kind::gaussian: return "gaussian";
  case DataSpec::Kind::file: return "file";
  }
  return "?";
}

DataSpec parse_data(const YAML::Node &node, const std::string &path) {
  Section s(node, path, {"kind", "amplitude", "width", "path"});
  DataSpec d;
  s.choice("kind", d.kind, data_kind_from_string);
  s.real("amplitude", d.amplitude);
  s.real("width", d.width);
  s.text("path", d.path);
  if (d.kind == DataSpec::Kind::gaussian && !(d.width > 0)) Section::fail("'" + path + ".width' must be positive", node);
  if (d.kind == DataSpec::Kind::file && d.path.empty()) Section::fail("'" + path + ".path' is required", node);
  return d;
}

void check(bool ok, const std::string &msg, const YAML::Node &at) {
  if (!ok) Section::fail(msg, at);
}

} // namespace

bool operator==(const ExperimentConfig &a, const ExperimentConfig &b) {
  const auto &p = a.params, &q = b.params;
  const bool params_equal = p.n == q.n && p.sigma == q.sigma && p.p == q.p && p.r == q.r && p.delta == q.delta &&
                            p.sbar == q.sbar && p.theta == q.theta && p.nu == q.nu && p.f_kind == q.f_kind &&
                            p.sigma.exact() == q.sigma.exact() && p.p.exact() == q.p.exact();
  const bool picard_equal = a.picard.T == b.picard.T && a.picard.dt == b.picard.dt &&
                            a.picard.max_iter == b.picard.max_iter && a.picard.tol == b.picard.tol;
  return a.mode == b.mode && params_equal && a.grid == b.grid && a.u0 == b.u0 && a.u1 == b.u1 &&
         a.integrator == b.integrator && a.fit == b.fit && a.kernel == b.kernel && picard_equal &&
         a.outputs == b.outputs && a.verify == b.verify;
}

ExperimentConfig parse_config(const std::string &text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException &e) {
    throw ConfigError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  ExperimentConfig c;
  if (!root || root.IsNull()) return c;
  Section top(root, "", {"mode", "params", "grid", "data", "integrator", "fit", "kernel_table", "picard", "outputs",
                         "verify"});
  top.choice("mode", c.mode, mode_from_string);
  top.boolean("verify", c.verify);
  if (top.has("params")) {
    const YAML::Node node = top.get("params");
    Section s(node, "params", {"n", "sigma", "p", "r", "delta", "sbar", "theta", "nu", "f"});
    s.integer("n", c.params.n);
    s.number("sigma", c.params.sigma);
    s.number("p", c.params.p);
    s.number("r", c.params.r);
    s.number("delta", c.params.delta);
    s.number("sbar", c.params.sbar);
    s.number("theta", c.params.theta);
    s.number("nu", c.params.nu);
    s.choice("f", c.params.f_kind, fkind_from_string);
    check(c.params.n >= 1 && c.params.n <= 3, "'params.n' must be 1, 2 or 3", node);
    check(c.params.sigma > 0 && c.params.sigma < Rational(1, 2), "'params.sigma' must lie in (0, 1/2)", node);
    check(c.params.p > 1, "'params.p' must exceed 1", node);
  }
  if (top.has("grid")) {
    const YAML::Node node = top.get("grid");
    Section s(node, "grid", {"N", "L", "box_width"});
    s.integer("N", c.grid.N);
    s.optional_real("L", c.grid.L, "auto");
    s.real("box_width", c.grid.box_width);
    check(c.grid.N >= 16 && (c.grid.N & (c.grid.N - 1)) == 0, "'grid.N' must be a power of two >= 16", node);
    check(!c.grid.L || *c.grid.L > 0, "'grid.L' must be positive", node);
  }
  if (top.has("data")) {
    Section s(top.get("data"), "data", {"u0", "u1"});
    if (s.has("u0")) c.u0 = parse_data(s.get("u0"), "data.u0");
    if (s.has("u1")) c.u1 = parse_data(s.get("u1"), "data.u1");
  }
  if (top.has("integrator")) {
    const YAML::Node node = top.get("integrator");
    Section s(node, "integrator", {"dt", "order", "t_final", "ratio", "start"});
    s.optional_real("dt", c.integrator.dt, "auto");
    s.integer("order", c.integrator.order);
    s.real("t_final", c.integrator.t_final);
    s.real("ratio", c.integrator.ratio);
    s.real("start", c.integrator.start);
    check(c.integrator.order == 1 || c.integrator.order == 2, "'integrator.order' must be 1 or 2", node);
    check(c.integrator.t_final > 0, "'integrator.t_final' must be positive", node);
    check(!c.integrator.dt || *c.integrator.dt > 0, "'integrator.dt' must be positive", node);
    check(c.integrator.ratio > 1, "'integrator.ratio' must exceed 1", node);
  }
  if (top.has("fit")) {
    const YAML::Node node = top.get("fit");
    Section s(node, "fit", {"window", "t_a", "t_b", "tolerance"});
    s.choice("window", c.fit.window, window_kind_from_string);
    s.real("t_a", c.fit.t_a);
    s.real("t_b", c.fit.t_b);
    s.optional_real("tolerance", c.fit.tolerance, "default");
    check(c.fit.window != WindowPolicy::Kind::fixed || c.fit.t_a < c.fit.t_b, "'fit' needs t_a < t_b", node);
  }
  if (top.has("kernel_table")) {
    Section s(top.get("kernel_table"), "kernel_table", {"which", "piece", "theta", "times"});
    s.choice("which", c.kernel.which, kernel_which_from_string);
    s.choice("piece", c.kernel.piece, kernel_piece_from_string);
    s.real("theta", c.kernel.theta);
    if (s.has("times")) {
      const YAML::Node list = s.get("times");
      check(list.IsSequence(), "'kernel_table.times' must be a list", list);
      c.kernel.times.clear();
      for (const auto &item : list) {
        check(item.IsScalar(), "'kernel_table.times' entries must be numbers", item);
        try {
          c.kernel.times.push_back(Number::parse(item.Scalar()).value());
        } catch (const std::invalid_argument &) {
          Section::fail("'kernel_table.times' entries must be numbers", item);
        }
      }
    }
  }
  if (top.has("picard")) {
    Section s(top.get("picard"), "picard", {"T", "dt", "max_iter", "tol"});
    s.real("T", c.picard.T);
    s.real("dt", c.picard.dt);
    s.integer("max_iter", c.picard.max_iter);
    s.real("tol", c.picard.tol);
  }
  if (top.has("outputs")) {
    Section s(top.get("outputs"), "outputs", {"dir", "snapshots"});
    s.text("dir", c.outputs.dir);
    s.boolean("snapshots", c.outputs.snapshots);
  }
  return c;
}

ExperimentConfig load_config(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig &c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << to_string(c.mode);
  out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n" << YAML::Value << c.params.n;
  const std::pair<const char *, const Number *> numbers[] = {
      {"sigma", &c.params.sigma}, {"p", &c.params.p},         {"r", &c.params.r},   {"delta", &c.params.delta},
      {"sbar", &c.params.sbar},   {"theta", &c.params.theta}, {"nu", &c.params.nu}};
  for (const auto &[key, value] : numbers) out << YAML::Key << key << YAML::Value << value->str();
  out << YAML::Key << "f" << YAML::Value << to_string(c.params.f_kind);
  out << YAML::EndMap;
  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "N" << YAML::Value << c.grid.N;
  out << YAML::Key << "L" << YAML::Value << (c.grid.L ? fmt(*c.grid.L) : "auto");
  out << YAML::Key << "box_width" << YAML::Value << fmt(c.grid.box_width);
  out << YAML::EndMap;
  out << YAML::Key << "data" << YAML::Value << YAML::BeginMap;
  for (const auto &[key, d] : {std::pair{"u0", &c.u0}, std::pair{"u1", &c.u1}}) {
    out << YAML::Key << key << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << to_string(d->kind);
    out << YAML::Key << "amplitude" << YAML::Value << fmt(d->amplitude);
    out << YAML::Key << "width" << YAML::Value << fmt(d->width);
    if (!d->path.empty()) out << YAML::Key << "path" << YAML::Value << d->path;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  out << YAML::Key << "integrator" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dt" << YAML::Value << (c.integrator.dt ? fmt(*c.integrator.dt) : "auto");
  out << YAML::Key << "order" << YAML::Value << c.integrator.order;
  out << YAML::Key << "t_final" << YAML::Value << fmt(c.integrator.t_final);
  out << YAML::Key << "ratio" << YAML::Value << fmt(c.integrator.ratio);
  out << YAML::Key << "start" << YAML::Value << fmt(c.integrator.start);
  out << YAML::EndMap;
  out << YAML::Key << "fit" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "window" << YAML::Value << to_string(c.fit.window);
  out << YAML::Key << "t_a" << YAML::Value << fmt(c.fit.t_a);
  out << YAML::Key << "t_b" << YAML::Value << fmt(c.fit.t_b);
  out << YAML::Key << "tolerance" << YAML::Value << (c.fit.tolerance ? fmt(*c.fit.tolerance) : "default");
  out << YAML::EndMap;
  out << YAML::Key << "kernel_table" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "which" << YAML::Value << to_string(c.kernel.which);
  out << YAML::Key << "piece" << YAML::Value << to_string(c.kernel.piece);
  out << YAML::Key << "theta" << YAML::Value << fmt(c.kernel.theta);
  out << YAML::Key << "times" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double t : c.kernel.times) out << fmt(t);
  out << YAML::EndSeq;
  out << YAML::EndMap;
  out << YAML::Key << "picard" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "T" << YAML::Value << fmt(c.picard.T);
  out << YAML::Key << "dt" << YAML::Value << fmt(c.picard.dt);
  out << YAML::Key << "max_iter" << YAML::Value << c.picard.max_iter;
  out << YAML::Key << "tol" << YAML::Value << fmt(c.picard.tol);
  out << YAML::EndMap;
  out << YAML::Key << "outputs" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dir" << YAML::Value << c.outputs.dir;
  out << YAML::Key << "snapshots" << YAML::Value << (c.outputs.snapshots ? "true" : "false");
  out << YAML::EndMap;
  out << YAML::Key << "verify" << YAML::Value << (c.verify ? "true" : "false");
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

double resolve_box(const ExperimentConfig &c) {
  if (c.grid.L) return *c.grid.L;
  const double sigma = c.params.sigma.value();
  return 8 * std::pow(c.integrator.t_final, 1 / (2 * (1 - sigma))) * c.grid.box_width;
}

Grid build_grid(const ExperimentConfig &c) { return make_grid(c.params.n, c.grid.N, resolve_box(c)); }

Field build_data(const Grid &grid, const DataSpec &spec) {
  switch (spec.kind) {
  case DataSpec::Kind::zero: return Field::Zero(grid.size());
  case DataSpec::Kind::gaussian: return gaussian_data(grid, spec.amplitude, spec.width);
  case DataSpec::Kind::file: {
    FieldFile f = read_field(spec.path);
    if (f.n != grid.n || f.N != grid.N || f.L != grid.L)
      throw ConfigError("field file '" + spec.path + "' does not match the configured grid");
    return f.values;
  }
  }
  return Field::Zero(grid.size());
}

double resolve_dt(const ExperimentConfig &c, const Grid &grid) {
  return c.integrator.dt ? *c.integrator.dt : default_time_step(grid, c.params.sigma.value());
}

WindowPolicy resolve_window(const ExperimentConfig &c) {
  switch (c.fit.window) {
  case WindowPolicy::Kind::fixed: return WindowPolicy::fixed(c.fit.t_a, c.fit.t_b);
  case WindowPolicy::Kind::automatic: return WindowPolicy::automatic();
  case WindowPolicy::Kind::last_decade: break;
  }
  return WindowPolicy::last_decade();
}

} // namespace sdw::harness
