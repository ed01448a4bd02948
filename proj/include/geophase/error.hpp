#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geophase {

enum class ErrorCode {
  domain,
  integration_failure,
  non_adiabatic,
  degeneracy,
  singularity,
  numeric,
  validation,
  io,
};

/// Stable lowercase identifier used in reports ("domain_error", ...).
std::string_view error_code_name(ErrorCode code) noexcept;

/// Every library failure is an Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace geophase
