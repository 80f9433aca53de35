#include "sdwave/number.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sdw {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

std::int64_t pow10(int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, 10);
  return r;
}

// Exact parse of an integer, decimal or scientific literal.
bool parse_decimal(std::string_view s, Rational &out) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::int64_t mant = 0;
  int frac_digits = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = checked_add(checked_mul(mant, 10), c - '0');
      if (dot) ++frac_digits;
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) return false;
  int exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), exp10);
    if (ec != std::errc() || ptr != s.data() + s.size()) return false;
    i = s.size();
  }
  if (i != s.size()) return false;
  int e = exp10 - frac_digits;
  if (neg) mant = -mant;
  out = e >= 0 ? Rational(checked_mul(mant, pow10(e))) : Rational(mant, pow10(-e));
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = checked_mul(num, -1);
    den = checked_mul(den, -1);
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational operator+(const Rational &a, const Rational &b) {
  std::int64_t g = std::gcd(a.den_, b.den_);
  std::int64_t da = a.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, da)),
                  checked_mul(da, b.den_));
}

Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

Rational operator*(const Rational &a, const Rational &b) {
  std::int64_t g1 = std::gcd(a.num_, b.den_);
  std::int64_t g2 = std::gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational &a, const Rational &b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::operator-() const { return Rational(checked_mul(num_, -1), den_); }

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Number Number::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      Rational a, b;
      if (parse_decimal(trim(s.substr(0, slash)), a) && parse_decimal(trim(s.substr(slash + 1)), b))
        return Number(a / b);
    } else {
      Rational q;
      if (parse_decimal(s, q)) return Number(q);
    }
  } catch (const std::overflow_error &) {
    // fall through to the floating-point path
  }
  std::string buf(s);
  char *end = nullptr;
  double x = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) throw std::invalid_argument("not a number: '" + buf + "'");
  return Number(x);
}

Number Number::floor() const {
  if (exact_) return Number(Rational(q_.floor()));
  return Number(std::floor(x_));
}

template <typename ExactOp, typename FloatOp>
static Number combine(const Number &a, const Number &b, ExactOp exact, FloatOp fl) {
  if (a.exact() && b.exact()) {
    try {
      return Number(exact(a.rational(), b.rational()));
    } catch (const std::overflow_error &) {
    }
  }
  return Number(fl(a.value(), b.value()));
}

Number operator+(const Number &a, const Number &b) {
  return combine(a, b, std::plus<Rational>(), std::plus<double>());
}
Number operator-(const Number &a, const Number &b) {
  return combine(a, b, std::minus<Rational>(), std::minus<double>());
}
Number operator*(const Number &a, const Number &b) {
  return combine(a, b, std::multiplies<Rational>(), std::multiplies<double>());
}
Number operator/(const Number &a, const Number &b) {
  if (b.exact() && b.rational().num() == 0) throw std::domain_error("division by zero");
  return combine(a, b, std::divides<Rational>(), std::divides<double>());
}

Number Number::operator-() const { return exact_ ? Number(-q_) : Number(-x_); }

bool operator==(const Number &a, const Number &b) {
  if (a.exact() && b.exact()) return a.rational() == b.rational();
  return a.value() == b.value();
}

std::partial_ordering operator<=>(const Number &a, const Number &b) {
  if (a.exact() && b.exact()) return a.rational() <=> b.rational();
  return a.value() <=> b.value();
}

std::string Number::str() const {
  if (exact_) return q_.str();
  std::ostringstream os;
  os.precision(17);
  os << x_;
  return os.str();
}

Number max(const Number &a, const Number &b) { return a < b ? b : a; }
Number min(const Number &a, const Number &b) { return b < a ? b : a; }

std::ostream &operator<<(std::ostream &os, const Number &x) { return os << x.str(); }

} // namespace sdw
