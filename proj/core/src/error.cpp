#include "webcurv/error.hpp"

namespace webcurv {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput: return "INPUT_ERROR";
    case ErrorCode::kExactUnsupported: return "EXACT_UNSUPPORTED";
    case ErrorCode::kIndeterminate: return "INDETERMINATE";
    case ErrorCode::kInternal: return "INTERNAL";
  }
  return "UNKNOWN";
}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace webcurv
