#pragma once

#include <stdexcept>
#include <string>

namespace latimp {

enum class ErrorCode {
  ok = 0,
  invalid_input = 1,
  invalid_lattice = 2,
  unsupported_rank = 3,
  capability = 4,
  catalog_miss = 5,
  projection_mismatch = 6,
  polar_undefined = 7,
  unbounded = 8,
  degenerate = 9,
  dimension_mismatch = 10,
  missing_constant = 11,
  not_a_packing = 12,
  malformed_tree = 13,
  domain = 14,
  internal = 99,
};

const char* error_code_name(ErrorCode c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace latimp
