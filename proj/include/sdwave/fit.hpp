#ifndef SDWAVE_FIT_HPP
#define SDWAVE_FIT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdw {

class FitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct WindowPolicy {
  enum class Kind { last_decade, fixed, automatic };
  Kind kind = Kind::last_decade;
  double t_a = 0;
  double t_b = 0;

  static WindowPolicy last_decade() { return {Kind::last_decade, 0, 0}; }
  static WindowPolicy fixed(double a, double b) { return {Kind::fixed, a, b}; }
  /// Grows leftwards from the last decade while the slope of the leading
  /// samples stays within kAutoDrift of the last-decade slope. Never uses t < 10.
  static WindowPolicy automatic() { return {Kind::automatic, 0, 0}; }
};

std::string to_string(WindowPolicy::Kind kind);
WindowPolicy::Kind window_kind_from_string(const std::string &name);

inline constexpr int kMinFitSamples = 8;
inline constexpr double kAutoDrift = 0.02;
inline constexpr double kAutoMinTime = 10;

/// Least-squares line through (log t, log y) or (t, log y).
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double std_error = 0;
  double t_a = 0;
  double t_b = 0;
  int samples = 0;
};

/// Power-law fit y ≈ C t^slope. Throws FitError with fewer than 8 samples in
/// the window or any nonpositive value there.
LineFit fit_decay(const std::vector<double> &t, const std::vector<double> &y, const WindowPolicy &window);

/// Exponential fit y ≈ C e^{slope·t}.
LineFit fit_exponential(const std::vector<double> &t, const std::vector<double> &y, const WindowPolicy &window);

enum class Verdict { pass, fail, indeterminate };
std::string to_string(Verdict v);

/// equal_within: |fitted - predicted| ≤ tol. at_most: fitted ≤ predicted + tol.
enum class Comparison { equal_within, at_most };
std::string to_string(Comparison c);

struct RateReport {
  std::string quantity;
  std::string model = "power";
  double t_a = 0;
  double t_b = 0;
  int samples = 0;
  double fitted = 0;
  double std_error = 0;
  std::optional<double> predicted;
  double tolerance = 0;
  Comparison comparison = Comparison::equal_within;
  Verdict verdict = Verdict::indeterminate;
  std::string note;
};

/// Pairs a fit with a prediction. No prediction, or a non-finite fit, gives
/// an indeterminate verdict.
RateReport make_report(const std::string &quantity, const LineFit &fit, std::optional<double> predicted,
                       double tolerance, Comparison comparison = Comparison::equal_within);

/// Fits and reports in one go; fit failures become indeterminate reports
/// carrying the error text.
RateReport rate_report(const std::string &quantity, const std::vector<double> &t, const std::vector<double> &y,
                       const WindowPolicy &window, std::optional<double> predicted, double tolerance,
                       Comparison comparison = Comparison::equal_within);

/// True when y is strictly decreasing over samples with t in [t_a, t_b].
bool strictly_decreasing(const std::vector<double> &t, const std::vector<double> &y, double t_a, double t_b);

} // namespace sdw

#endif
