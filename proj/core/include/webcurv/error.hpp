#pragma once

#include <stdexcept>
#include <string>

namespace webcurv {

// Error categories double as CLI exit codes.
enum class ErrorCode {
  kInput = 1,
  kExactUnsupported = 2,
  kIndeterminate = 3,
  kInternal = 4,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void ensure(bool cond, ErrorCode code, const char* what) {
  if (!cond) raise(code, what);
}
inline void ensure(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace webcurv
