#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace elmkit {

/// Exact rational number with a positive denominator, always in lowest terms.
/// Arithmetic is overflow-checked.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "7", "-3/8" or a decimal literal such as "0.125".
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  /// Nearest integer, ties rounded towards +infinity.
  std::int64_t round_half_up() const noexcept;
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_integer() const noexcept { return den_ == 1; }

  /// "num" for integers, "num/den" otherwise.
  std::string str() const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace elmkit
