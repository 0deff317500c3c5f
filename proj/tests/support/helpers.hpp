#pragma once

#include <cmath>
#include <functional>

#include <doctest.h>

#include "latimp/error.hpp"
#include "latimp/symbolic.hpp"

namespace testing {

// Error code raised by f, or ok when it returns normally.
inline latimp::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const latimp::Error& e) {
    return e.code();
  }
  return latimp::ErrorCode::ok;
}

inline bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace testing

namespace doctest {
template <>
struct StringMaker<latimp::Symbolic> {
  static String convert(const latimp::Symbolic& s) { return s.to_string().c_str(); }
};
template <>
struct StringMaker<latimp::SqrtRational> {
  static String convert(const latimp::SqrtRational& s) { return s.to_string().c_str(); }
};
}  // namespace doctest
