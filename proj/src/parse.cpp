#include <cctype>
#include <charconv>

#include "elmkit/checked.hpp"
#include "elmkit/error.hpp"
#include "elmkit/pbpoly.hpp"

namespace elmkit {

namespace {

class PolyParser {
public:
  PolyParser(std::string_view text, VariableTable &vars)
      : text_(text), vars_(vars) {}

  BinaryPolynomial parse() {
    BinaryPolynomial out;
    skip_space();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    out += signed_term(negative);
    for (;;) {
      skip_space();
      if (at_end())
        break;
      char op = peek();
      if (op != '+' && op != '-')
        fail("expected '+', '-' or end of polynomial");
      ++pos_;
      out += signed_term(op == '-');
    }
    return out;
  }

private:
  BinaryPolynomial signed_term(bool negative) {
    BinaryPolynomial t = term();
    return negative ? -t : t;
  }

  BinaryPolynomial term() {
    std::int64_t coefficient = 1;
    Monomial vars;
    factor(coefficient, vars);
    for (;;) {
      skip_space();
      if (peek() != '*')
        break;
      ++pos_;
      factor(coefficient, vars);
    }
    return BinaryPolynomial::term(coefficient, std::move(vars));
  }

  void factor(std::int64_t &coefficient, Monomial &vars) {
    skip_space();
    if (at_end())
      fail("expected identifier or integer");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        ++pos_;
      std::int64_t value = 0;
      auto [ptr, ec] =
          std::from_chars(text_.data() + start, text_.data() + pos_, value);
      if (ec == std::errc::result_out_of_range)
        throw OverflowError("coefficient out of 64-bit range at column " +
                            std::to_string(start + 1));
      coefficient = checked_mul(coefficient, value, "coefficient product");
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '_'))
        ++pos_;
      vars.push_back(vars_.intern(text_.substr(start, pos_ - start)));
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string &message) const {
    throw ParseError(message, 0, pos_ + 1);
  }

  std::string_view text_;
  VariableTable &vars_;
  std::size_t pos_ = 0;
};

} // namespace

BinaryPolynomial parse_polynomial(std::string_view text, VariableTable &vars) {
  return PolyParser(text, vars).parse();
}

} // namespace elmkit
