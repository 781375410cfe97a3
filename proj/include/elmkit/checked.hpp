#pragma once

#include <cstdint>
#include <string_view>

#include "elmkit/error.hpp"

namespace elmkit {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b,
                                std::string_view what = "addition") {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw OverflowError("integer overflow in " + std::string(what));
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b,
                                std::string_view what = "subtraction") {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out))
    throw OverflowError("integer overflow in " + std::string(what));
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b,
                                std::string_view what = "multiplication") {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw OverflowError("integer overflow in " + std::string(what));
  return out;
}

} // namespace elmkit
