#pragma once

#include <stdexcept>
#include <string>

namespace calibra {

// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  degree_overflow,
  out_of_region,
  precondition_failed,
  infeasible,
  resource_limit,
  parse_error,
  non_finite,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::degree_overflow: return "degree overflow";
    case ErrorCode::out_of_region: return "point outside region";
    case ErrorCode::precondition_failed: return "precondition failed";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::resource_limit: return "resource limit";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::non_finite: return "non-finite value";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace calibra
