#include "sdwave/exponents.hpp"

#include <cmath>

namespace sdw {

namespace {

const Number kHalf = Rational(1, 2);
const Number kQuarter = Rational(1, 4);

Number inv_one_minus(const Number &sigma) { return Number(1) / (Number(1) - sigma); }

Hypothesis compare(std::string name, const Number &lhs, std::string rel, const Number &rhs,
                   std::string source) {
  Hypothesis h;
  h.name = std::move(name);
  h.lhs = lhs;
  h.rhs = rhs;
  h.relation = rel;
  h.source = std::move(source);
  h.boundary = lhs == rhs;
  if (rel == "<") h.satisfied = lhs < rhs;
  else if (rel == "<=") h.satisfied = lhs <= rhs;
  else if (rel == ">") h.satisfied = lhs > rhs;
  else h.satisfied = lhs >= rhs;
  return h;
}

Hypothesis undefined(std::string name, std::string source) {
  Hypothesis h;
  h.name = std::move(name) + " (undefined)";
  h.relation = "n/a";
  h.source = std::move(source);
  return h;
}

void push_sigma_range(std::vector<Hypothesis> &out, const SimParams &p) {
  out.push_back(compare("sigma > 0", p.sigma, ">", 0, "setting"));
  out.push_back(compare("sigma < 1/2", p.sigma, "<", kHalf, "setting"));
}

void push_common_existence(std::vector<Hypothesis> &out, const SimParams &p) {
  out.push_back(compare("n >= 2", p.n, ">=", 2, "prop1/thm2"));
  push_sigma_range(out, p);
  out.push_back(compare("sbar >= 1", p.sbar, ">=", 1, "fass"));
  out.push_back(compare("[sbar] < p", p.sbar.floor(), "<", p.p, "fass"));
  if (Number(2) * p.sbar < Number(p.n)) {
    Number bound = Number(1) + Number(2) / (Number(p.n) - Number(2) * p.sbar);
    out.push_back(compare("p <= 1 + 2/(n - 2 sbar)", p.p, "<=", bound, "pass2"));
  }
}

void push_prop1(std::vector<Hypothesis> &out, const SimParams &p) {
  push_common_existence(out, p);
  const Number n = p.n;
  out.push_back(compare("r >= 1", p.r, ">=", 1, "prop1"));
  Number r_max = Number(2) * n / (n + Number(4) * p.sigma);
  out.push_back(compare("r < 2n/(n + 4 sigma)", p.r, "<", r_max, "prop1"));
  if (n - Number(2) * p.r * p.sigma > Number(0)) {
    out.push_back(compare("p > p_{sigma,r}", p.p, ">", critical_exponent(p.n, p.sigma, p.r), "pass"));
  } else {
    out.push_back(undefined("p > p_{sigma,r}", "pass"));
  }
  out.push_back(compare("delta >= 0", p.delta, ">=", 0, "prop1"));
  if (p.r > Number(0)) {
    Number base = n * (Number(1) / p.r - kHalf);
    out.push_back(compare("delta >= n(1/r - 1/2) - 1", p.delta, ">=", base - Number(1), "delta"));
    out.push_back(
        compare("delta < n(1/r - 1/2) - 2 sigma", p.delta, "<", base - Number(2) * p.sigma, "delta"));
  }
  if (p.r == Number(1)) {
    out.push_back(compare("delta > n(1/p - 1/2)", p.delta, ">", n * (Number(1) / p.p - kHalf), "delta2"));
  } else if (p.r > Number(1)) {
    out.push_back(
        compare("delta >= n(1/(pr) - 1/2)", p.delta, ">=", n * (Number(1) / (p.p * p.r) - kHalf), "delta2"));
  }
}

} // namespace

std::string to_string(FKind kind) {
  switch (kind) {
  case FKind::none: return "none";
  case FKind::abs_power: return "abs_power";
  case FKind::signed_power: return "signed_power";
  }
  return "?";
}

FKind fkind_from_string(const std::string &name) {
  if (name == "none") return FKind::none;
  if (name == "abs_power") return FKind::abs_power;
  if (name == "signed_power") return FKind::signed_power;
  throw std::invalid_argument("unknown f_kind '" + name + "' (expected none|abs_power|signed_power)");
}

Number critical_exponent(int n, const Number &sigma, const Number &r) {
  Number denom = Number(n) - Number(2) * r * sigma;
  if (!(denom > Number(0))) throw DomainError("critical_exponent: n - 2 r sigma must be positive");
  return Number(1) + Number(2) * r / denom;
}

bool DeltaWindow::empty() const {
  Number l = effective_lo();
  if (!(l < hi)) return true;
  return false;
}

bool DeltaWindow::contains(const Number &delta) const {
  if (!(delta >= lo) || !(delta < hi)) return false;
  return extra_strict ? delta > extra : delta >= extra;
}

DeltaWindow delta_window(int n, const Number &sigma, const Number &r, const Number &p) {
  Number nn = n;
  if (!(r < Number(2) * nn / (nn + Number(4) * sigma)))
    throw DomainError("delta_window: requires r < 2n/(n + 4 sigma)");
  DeltaWindow w;
  Number base = nn * (Number(1) / r - kHalf);
  w.lo = max(Number(0), base - Number(1));
  w.hi = base - Number(2) * sigma;
  if (r == Number(1)) {
    w.extra = nn * (Number(1) / p - kHalf);
    w.extra_strict = true;
  } else {
    w.extra = nn * (Number(1) / (p * r) - kHalf);
    w.extra_strict = false;
  }
  return w;
}

HatQ hat_q(int n, const Number &r, const Number &sigma, const Number &delta) {
  Number nn = n;
  Number d0 = nn - r * (delta + Number(2) * sigma);
  Number d1 = nn - r * delta;
  if (!(d0 > Number(0)) || !(d1 > Number(0))) throw DomainError("hat_q: nonpositive denominator");
  return {nn * r / d0, nn * r / d1};
}

DecayExponents predicted_decay(int n, const Number &sigma, const Number &r, const Number &delta,
                               const Number &sbar) {
  Number c = inv_one_minus(sigma);
  Number base = Number(n) / Number(2) * (Number(1) / r - kHalf) - sigma;
  return {-c * base, -c * (base - delta / Number(2)), -c * (base + sbar / Number(2))};
}

Number linear_remainder_rate(int n, const Number &sigma, const Number &theta0, const Number &theta1) {
  Number c = inv_one_minus(sigma);
  Number q = Number(n) / Number(4);
  Number e_u0 = c * (-q + Number(2) * sigma - Number(1));
  Number e_u1 = max(c * (-q + Number(3) * sigma - Number(1)), (-q + sigma) / sigma);
  Number e_m0 = c * (-q - theta0 / Number(2));
  Number e_m1 = c * (-q + sigma - theta1 / Number(2));
  return max(max(e_u0, e_u1), max(e_m0, e_m1));
}

Number nu_upper_bound(int n, const Number &p, const Number &delta, const Number &sbar) {
  Number nn = n;
  Number bound = min(nn / Number(4) * (p - Number(2)) + p * delta / Number(2), delta);
  if (sbar < nn / Number(2))
    bound = min(bound, delta / (Number(2) * sbar) * (nn - p / Number(2) * (nn - Number(2) * sbar)));
  return bound;
}

Number profile_remainder_rate(int n, const Number &sigma, const Number &p, const Number &delta,
                              const Number &theta, const Number &nu, const Number &sbar) {
  Number upper = nu_upper_bound(n, p, delta, sbar);
  if (!(nu > Number(0)) || !(nu < upper))
    throw HypothesisError("profile_remainder_rate: nu = " + nu.str() + " outside (0, " + upper.str() + ")");
  Number q = Number(n) / Number(4);
  Number gain = min(min((p - Number(1)) * (Number(n) / Number(2) - sigma) - Number(1),
                        Number(1) - Number(2) * sigma),
                    min(nu, theta / Number(2)));
  return max(inv_one_minus(sigma) * (-q + sigma - gain), (-q + sigma) / sigma);
}

Number zeta(int n, const Number &sigma, const Number &r, const Number &p, const Number &vartheta) {
  Number nn = n;
  return inv_one_minus(sigma) *
         (-(nn / (Number(2) * r) - sigma) * p + nn / Number(4) + vartheta / Number(2) + kHalf);
}

Number tilde_q(int n, const Number &s) {
  Number nn = n;
  return Number(2) * nn / (nn + Number(2) + Number(2) * s.floor() - Number(2) * s);
}

Number profile_g_rate(int n, const Number &sigma) {
  return inv_one_minus(sigma) * (sigma - Number(n) / Number(4));
}

Number profile_h_rate(int n, const Number &sigma) {
  return -Number(n) / (Number(4) * (Number(1) - sigma));
}

double mid_frequency_rate(double sigma) { return std::exp2(-6.0 / (1.0 - 2.0 * sigma) - 1.0); }

std::string to_string(Mode mode) {
  switch (mode) {
  case Mode::prop1: return "prop1";
  case Mode::thm2: return "thm2";
  case Mode::thm3: return "thm3";
  }
  return "?";
}

Mode mode_from_string(const std::string &name) {
  if (name == "prop1") return Mode::prop1;
  if (name == "thm2") return Mode::thm2;
  if (name == "thm3") return Mode::thm3;
  throw std::invalid_argument("unknown mode '" + name + "' (expected prop1|thm2|thm3)");
}

std::string to_string(Thm2Case c) {
  switch (c) {
  case Thm2Case::below_critical: return "below critical";
  case Thm2Case::case1: return "Case 1";
  case Thm2Case::case2_1: return "Case 2-1";
  case Thm2Case::case2_2: return "Case 2-2";
  }
  return "?";
}

Thm2Case classify_thm2(int n, const Number &sigma, const Number &p) {
  Number nn = n;
  if (p <= critical_exponent(n, sigma, 1)) return Thm2Case::below_critical;
  if (p <= Number(1) + Number(4) / (nn + Number(2) - Number(4) * sigma)) return Thm2Case::case1;
  if (p <= Number(1) + Number(4) / nn) return Thm2Case::case2_1;
  return Thm2Case::case2_2;
}

HypothesisReport validate_hypotheses(const SimParams &params, Mode mode) {
  HypothesisReport report;
  report.mode = mode;
  auto &e = report.entries;
  const Number n = params.n;

  switch (mode) {
  case Mode::prop1:
    push_prop1(e, params);
    break;
  case Mode::thm2: {
    push_common_existence(e, params);
    if (n - Number(2) * params.sigma > Number(0)) {
      e.push_back(compare("p > p_sigma", params.p, ">", critical_exponent(params.n, params.sigma, 1), "pass1"));
      report.thm2_case = classify_thm2(params.n, params.sigma, params.p);
      if (*report.thm2_case == Thm2Case::case1) {
        Number inv = Number(1) / (params.p - Number(1));
        e.push_back(compare("delta > 2(1/(p-1) + sigma) - n/2 - 1", params.delta, ">",
                            Number(2) * (inv + params.sigma) - n / Number(2) - Number(1), "deltaass1"));
        e.push_back(compare("delta <= 2/(p-1) - n/2", params.delta, "<=",
                            Number(2) * inv - n / Number(2), "deltaass1"));
      }
    } else {
      e.push_back(undefined("p > p_sigma", "pass1"));
    }
    break;
  }
  case Mode::thm3: {
    push_prop1(e, params);
    e.push_back(compare("r <= 1", params.r, "<=", 1, "thm3"));
    e.push_back(compare("theta >= 0", params.theta, ">=", 0, "thm3"));
    e.push_back(compare("theta <= 1", params.theta, "<=", 1, "thm3"));
    e.push_back(compare("nu > 0", params.nu, ">", 0, "nudef"));
    e.push_back(compare("nu < n(p-2)/4 + p delta/2", params.nu, "<",
                        n / Number(4) * (params.p - Number(2)) + params.p * params.delta / Number(2),
                        "nudef"));
    e.push_back(compare("nu < delta", params.nu, "<", params.delta, "nudef"));
    if (params.sbar < n / Number(2)) {
      Number b = params.delta / (Number(2) * params.sbar) *
                 (n - params.p / Number(2) * (n - Number(2) * params.sbar));
      e.push_back(compare("nu < delta(n - p(n - 2 sbar)/2)/(2 sbar)", params.nu, "<", b, "nudef2"));
    }
    break;
  }
  }

  report.overall = !e.empty();
  for (const auto &h : e) report.overall = report.overall && h.satisfied;
  return report;
}

} // namespace sdw
