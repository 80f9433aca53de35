#ifndef SDWAVE_NUMBER_HPP
#define SDWAVE_NUMBER_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sdw {

/// Reduced fraction num/den with den > 0. Arithmetic throws std::overflow_error
/// when an intermediate leaves the int64 range.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::int64_t floor() const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);
  Rational operator-() const;

  friend bool operator==(const Rational &a, const Rational &b) = default;
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

  std::string str() const;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A real number that stays an exact Rational for as long as the inputs and
/// every intermediate allow, and falls back to double otherwise.
class Number {
public:
  Number() : Number(Rational(0)) {}
  Number(int v) : Number(Rational(v)) {}
  Number(Rational q) : exact_(true), q_(q), x_(q.to_double()) {}
  Number(double x) : exact_(false), x_(x) {}

  /// Parses "3", "-0.25", "1e-2", "7/3" exactly; anything else goes through
  /// strtod. Throws std::invalid_argument on garbage.
  static Number parse(std::string_view text);

  bool exact() const { return exact_; }
  const Rational &rational() const { return q_; }
  double value() const { return x_; }
  explicit operator double() const { return x_; }
  Number floor() const;

  friend Number operator+(const Number &a, const Number &b);
  friend Number operator-(const Number &a, const Number &b);
  friend Number operator*(const Number &a, const Number &b);
  friend Number operator/(const Number &a, const Number &b);
  Number operator-() const;

  /// Exact when both sides are exact.
  friend bool operator==(const Number &a, const Number &b);
  friend std::partial_ordering operator<=>(const Number &a, const Number &b);

  /// Rationals print as "a/b" (or an integer); doubles with 17 digits.
  std::string str() const;

private:
  bool exact_;
  Rational q_;
  double x_;
};

Number max(const Number &a, const Number &b);
Number min(const Number &a, const Number &b);

std::ostream &operator<<(std::ostream &os, const Number &x);

} // namespace sdw

#endif
