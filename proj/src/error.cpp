#include "geophase/error.hpp"

namespace geophase {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::integration_failure: return "integration_failure";
    case ErrorCode::non_adiabatic: return "non_adiabatic";
    case ErrorCode::degeneracy: return "degeneracy";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::numeric: return "numeric_error";
    case ErrorCode::validation: return "validation_error";
    case ErrorCode::io: return "io_error";
  }
  return "unknown";
}

}  // namespace geophase
