#pragma once

#include <cstdint>

#include "howson/error.hpp"

namespace howson {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorKind::CapExceeded, "64-bit integer overflow");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorKind::CapExceeded, "64-bit integer overflow");
  }
  return r;
}

}  // namespace howson
