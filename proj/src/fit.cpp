#include "sdwave/fit.hpp"

#include <algorithm>
#include <cmath>

namespace sdw {

namespace {

struct Points {
  std::vector<double> x, y, t;
};

LineFit ols(const Points &p) {
  const int m = static_cast<int>(p.x.size());
  if (m < kMinFitSamples)
    throw FitError("need at least " + std::to_string(kMinFitSamples) + " samples in the window, got " +
                   std::to_string(m));
  double mx = 0, my = 0;
  for (int i = 0; i < m; ++i) {
    mx += p.x[i];
    my += p.y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sxx += (p.x[i] - mx) * (p.x[i] - mx);
    sxy += (p.x[i] - mx) * (p.y[i] - my);
  }
  if (sxx == 0) throw FitError("degenerate window: all abscissae equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (int i = 0; i < m; ++i) {
    const double e = p.y[i] - f.intercept - f.slope * p.x[i];
    ssr += e * e;
  }
  f.std_error = std::sqrt(ssr / (m - 2) / sxx);
  f.t_a = p.t.front();
  f.t_b = p.t.back();
  f.samples = m;
  return f;
}

Points select(const std::vector<double> &t, const std::vector<double> &y, double a, double b, bool log_x) {
  if (t.size() != y.size()) throw FitError("time and value columns differ in length");
  Points p;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < a || t[i] > b) continue;
    if (!(y[i] > 0) || !std::isfinite(y[i]))
      throw FitError("nonpositive or non-finite value at t = " + std::to_string(t[i]));
    if (log_x && !(t[i] > 0)) throw FitError("log-log fit needs t > 0");
    p.x.push_back(log_x ? std::log(t[i]) : t[i]);
    p.y.push_back(std::log(y[i]));
    p.t.push_back(t[i]);
  }
  return p;
}

LineFit fit_line(const std::vector<double> &t, const std::vector<double> &y, const WindowPolicy &w, bool log_x) {
  if (t.empty()) throw FitError("empty series");
  const double t_max = *std::max_element(t.begin(), t.end());
  switch (w.kind) {
  case WindowPolicy::Kind::fixed:
    return ols(select(t, y, w.t_a, w.t_b, log_x));
  case WindowPolicy::Kind::last_decade:
    return ols(select(t, y, t_max / 10, t_max, log_x));
  case WindowPolicy::Kind::automatic:
    break;
  }
  const LineFit base = ols(select(t, y, std::max(t_max / 10, kAutoMinTime), t_max, log_x));
  std::vector<double> earlier;
  for (double s : t)
    if (s >= kAutoMinTime && s < base.t_a) earlier.push_back(s);
  std::sort(earlier.begin(), earlier.end(), std::greater<>());
  double a = base.t_a;
  for (double s : earlier) {
    // slope of the kMinFitSamples samples starting at s
    std::vector<double> lead_t;
    for (double u : t)
      if (u >= s) lead_t.push_back(u);
    std::sort(lead_t.begin(), lead_t.end());
    if (static_cast<int>(lead_t.size()) < kMinFitSamples) break;
    const LineFit lead = ols(select(t, y, s, lead_t[kMinFitSamples - 1], log_x));
    if (std::abs(lead.slope - base.slope) >= kAutoDrift) break;
    a = s;
  }
  return ols(select(t, y, a, t_max, log_x));
}

} // namespace

std::string to_string(WindowPolicy::Kind kind) {
  switch (kind) {
  case WindowPolicy::Kind::last_decade: return "last_decade";
  case WindowPolicy::Kind::fixed: return "fixed";
  case WindowPolicy::Kind::automatic: return "auto";
  }
  return "?";
}

WindowPolicy::Kind window_kind_from_string(const std::string &name) {
  if (name == "last_decade") return WindowPolicy::Kind::last_decade;
  if (name == "fixed") return WindowPolicy::Kind::fixed;
  if (name == "auto") return WindowPolicy::Kind::automatic;
  throw std::invalid_argument("unknown window policy '" + name + "'");
}

LineFit fit_decay(const std::vector<double> &t, const std::vector<double> &y, const WindowPolicy &window) {
  return fit_line(t, y, window, true);
}

LineFit fit_exponential(const std::vector<double> &t, const std::vector<double> &y, const WindowPolicy &window) {
  return fit_line(t, y, window, false);
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::pass: return "pass";
  case Verdict::fail: return "fail";
  case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Comparison c) { return c == Comparison::equal_within ? "equal_within" : "at_most"; }

RateReport make_report(const std::string &quantity, const LineFit &fit, std::optional<double> predicted,
                       double tolerance, Comparison comparison) {
  RateReport r;
  r.quantity = quantity;
  r.t_a = fit.t_a;
  r.t_b = fit.t_b;
  r.samples = fit.samples;
  r.fitted = fit.slope;
  r.std_error = fit.std_error;
  r.predicted = predicted;
  r.tolerance = tolerance;
  r.comparison = comparison;
  if (!predicted || !std::isfinite(fit.slope)) {
    r.verdict = Verdict::indeterminate;
    return r;
  }
  const bool ok = comparison == Comparison::equal_within ? std::abs(fit.slope - *predicted) <= tolerance
                                                         : fit.slope <= *predicted + tolerance;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

RateReport rate_report(const std::string &quantity, const std::vector<double> &t, const std::vector<double> &y,
                       const WindowPolicy &window, std::optional<double> predicted, double tolerance,
                       Comparison comparison) {
  try {
    return make_report(quantity, fit_decay(t, y, window), predicted, tolerance, comparison);
  } catch (const FitError &e) {
    RateReport r;
    r.quantity = quantity;
    r.predicted = predicted;
    r.tolerance = tolerance;
    r.comparison = comparison;
    r.fitted = std::nan("");
    r.std_error = std::nan("");
    r.note = e.what();
    return r;
  }
}

bool strictly_decreasing(const std::vector<double> &t, const std::vector<double> &y, double t_a, double t_b) {
  double prev = std::numeric_limits<double>::infinity();
  int count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_a || t[i] > t_b) continue;
    if (!(y[i] < prev)) return false;
    prev = y[i];
    ++count;
  }
  return count >= 2;
}

} // namespace sdw
