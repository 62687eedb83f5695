#pragma once

#include <string>

#include "webcurv/parse.hpp"

namespace testing_util {

inline webcurv::MPoly P(const std::string& s, const std::vector<std::string>& params = {}) {
  webcurv::ParseContext ctx;
  ctx.params = params;
  return webcurv::parse_polynomial(s, ctx);
}

inline webcurv::Frac R(const std::string& s, const std::vector<std::string>& params = {}) {
  webcurv::ParseContext ctx;
  ctx.params = params;
  return webcurv::parse_rational(s, ctx);
}

}  // namespace testing_util
