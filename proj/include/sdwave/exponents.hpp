#ifndef SDWAVE_EXPONENTS_HPP
#define SDWAVE_EXPONENTS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdwave/number.hpp"

/// Thresholds, admissibility windows and decay exponents for the semilinear
/// structurally damped wave equation
///
///   u_tt + (-Δ)^σ u_t - Δu = f(u),   0 < σ < 1/2.
///
/// Everything here is a pure function of its arguments. Exponents are exact
/// rationals whenever the inputs are; see sdw::Number.
namespace sdw {

/// Shape of the nonlinearity: f(u) = |u|^p, f(u) = u|u|^{p-1}, or f ≡ 0.
enum class FKind { none, abs_power, signed_power };

std::string to_string(FKind kind);
FKind fkind_from_string(const std::string &name);

struct SimParams {
  int n = 2;
  Number sigma = Rational(1, 4);
  Number p = 3;
  Number r = 1;
  Number delta = Rational(1, 4);
  Number sbar = 1;
  Number theta = 1;
  Number nu = Rational(1, 5);
  FKind f_kind = FKind::abs_power;
};

/// Raised for inputs outside an operation's domain (nonpositive denominators,
/// empty windows when the caller asked for a value).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised by profile_remainder_rate when ν violates its admissibility window.
class HypothesisError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// p_{σ,r} = 1 + 2r/(n - 2rσ). With r = 1 this is the critical exponent p_σ.
Number critical_exponent(int n, const Number &sigma, const Number &r);

/// Admissible δ: lo ≤ δ < hi, and δ > extra (strict, r = 1) or δ ≥ extra (r > 1).
struct DeltaWindow {
  Number lo;
  Number hi;
  Number extra;
  bool extra_strict = true;

  /// Lower bound after combining lo and extra.
  Number effective_lo() const { return max(lo, extra); }
  bool empty() const;
  bool contains(const Number &delta) const;
};

/// Throws DomainError when r ≥ 2n/(n+4σ).
DeltaWindow delta_window(int n, const Number &sigma, const Number &r, const Number &p);

struct HatQ {
  Number q0;
  Number q1;
};

/// (q̂0, q̂1) = (nr/(n - r(δ+2σ)), nr/(n - rδ)).
HatQ hat_q(int n, const Number &r, const Number &sigma, const Number &delta);

struct DecayExponents {
  Number l2;
  Number weighted;
  Number hsbar;
};

/// Predicted decay exponents of ‖u‖₂, ‖|x|^δ u‖₂ and ‖(-Δ)^{s̄/2}u‖₂ for the
/// small-data global solution.
DecayExponents predicted_decay(int n, const Number &sigma, const Number &r, const Number &delta,
                               const Number &sbar);

/// Slowest polynomial rate of ‖u - ϑ0 H_σ - ϑ1 G_σ‖₂ for the linear problem,
/// data moments |x|^{θ0}u0, |x|^{θ1}u1 ∈ L¹.
Number linear_remainder_rate(int n, const Number &sigma, const Number &theta0,
                             const Number &theta1);

/// Strict upper bound for ν: min{n(p-2)/4 + pδ/2, δ}, further capped by
/// δ(n - p(n-2s̄)/2)/(2s̄) when s̄ < n/2.
Number nu_upper_bound(int n, const Number &p, const Number &delta, const Number &sbar);

/// Rate of ‖u - Θ G_σ‖₂ for the semilinear problem. Throws HypothesisError
/// unless 0 < ν < nu_upper_bound.
Number profile_remainder_rate(int n, const Number &sigma, const Number &p, const Number &delta,
                              const Number &theta, const Number &nu, const Number &sbar = 1);

/// ζ_{r,ϑ} = (1/(1-σ))(-(n/(2r) - σ)p + n/4 + ϑ/2 + 1/2).
Number zeta(int n, const Number &sigma, const Number &r, const Number &p, const Number &vartheta);

/// q̃_s = 2n/(n + 2 + 2[s] - 2s).
Number tilde_q(int n, const Number &s);

/// Exponent of ‖G_σ(t)‖₂ (and of the generic linear L² decay): (1/(1-σ))(σ - n/4).
Number profile_g_rate(int n, const Number &sigma);
/// Exponent of ‖H_σ(t)‖₂: -n/(4(1-σ)).
Number profile_h_rate(int n, const Number &sigma);
/// Exponential rate ε_σ = 2^{-6/(1-2σ)-1} of the middle-frequency kernels.
double mid_frequency_rate(double sigma);

enum class Mode { prop1, thm2, thm3 };
std::string to_string(Mode mode);
Mode mode_from_string(const std::string &name);

/// Cases of small-data global existence; `below_critical` when p ≤ p_σ.
enum class Thm2Case { below_critical, case1, case2_1, case2_2 };
std::string to_string(Thm2Case c);

/// Case label from p against p_σ < 1+4/(n+2-4σ) ≤ 1+4/n; ties go to the
/// lower case.
Thm2Case classify_thm2(int n, const Number &sigma, const Number &p);

struct Hypothesis {
  std::string name;
  bool satisfied = false;
  /// lhs == rhs; for a strict relation this also means !satisfied.
  bool boundary = false;
  Number lhs;
  std::string relation; // "<", "<=", ">", ">="
  Number rhs;
  std::string source;
};

struct HypothesisReport {
  Mode mode = Mode::prop1;
  std::vector<Hypothesis> entries;
  bool overall = false;
  std::optional<Thm2Case> thm2_case;
};

/// Evaluates every hypothesis of the chosen result. Never throws for bad
/// parameters: undefined quantities are reported as violated entries.
HypothesisReport validate_hypotheses(const SimParams &params, Mode mode);

} // namespace sdw

#endif
