#include "elmkit/rational.hpp"

#include <charconv>
#include <numeric>

#include "elmkit/checked.hpp"
#include "elmkit/error.hpp"

namespace elmkit {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw OverflowError("rational component out of range: " + std::string(text));
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("malformed number '" + std::string(text) + "'", 0, 1);
  return value;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = checked_sub(0, num, "rational normalization");
    den = checked_sub(0, den, "rational normalization");
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0)
    g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(text.substr(0, slash)),
                    parse_int(text.substr(slash + 1)));
  auto dot = text.find('.');
  if (dot == std::string_view::npos)
    return Rational(parse_int(text));
  std::string digits(text.substr(0, dot));
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos)
    throw ParseError("malformed decimal '" + std::string(text) + "'", 0, dot + 2);
  digits += frac;
  if (digits == "-" || digits == "+")
    digits += "0";
  if (!digits.empty() && digits.front() == '+')
    digits.erase(0, 1);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i)
    den = checked_mul(den, 10, "decimal parsing");
  return Rational(parse_int(digits), den);
}

std::int64_t Rational::round_half_up() const noexcept {
  // floor((2n + d) / 2d); the 128-bit intermediate cannot overflow
  __int128 twice = static_cast<__int128>(num_) * 2 + den_;
  __int128 d = static_cast<__int128>(den_) * 2;
  __int128 q = twice / d;
  if (twice % d != 0 && twice < 0)
    --q;
  return static_cast<std::int64_t>(q);
}

std::string Rational::str() const {
  if (den_ == 1)
    return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational &a, const Rational &b) {
  std::int64_t g = std::gcd(a.den_, b.den_);
  std::int64_t lhs = checked_mul(a.num_, b.den_ / g, "rational addition");
  std::int64_t rhs = checked_mul(b.num_, a.den_ / g, "rational addition");
  return Rational(checked_add(lhs, rhs, "rational addition"),
                  checked_mul(a.den_ / g, b.den_, "rational addition"));
}

Rational operator-(const Rational &a, const Rational &b) {
  return a + Rational(checked_sub(0, b.num_, "rational negation"), b.den_);
}

Rational operator*(const Rational &a, const Rational &b) {
  std::int64_t g1 = std::gcd(a.num_, b.den_);
  std::int64_t g2 = std::gcd(b.num_, a.den_);
  if (g1 == 0)
    g1 = 1;
  if (g2 == 0)
    g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2, "rational product"),
                  checked_mul(a.den_ / g2, b.den_ / g1, "rational product"));
}

Rational operator/(const Rational &a, const Rational &b) {
  if (b.num_ == 0)
    throw DomainError("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

} // namespace elmkit
