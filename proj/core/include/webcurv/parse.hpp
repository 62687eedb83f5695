#pragma once

#include <string>
#include <vector>

#include "webcurv/frac.hpp"

namespace webcurv {

struct ParseContext {
  FieldPtr field;                 // null means Q
  std::vector<Symbol> params;     // declared parameter identifiers
  std::vector<Symbol> variables;  // allowed variables; empty allows x y p z q
};

// Parses the expression grammar into a polynomial. Division is accepted
// only by nonzero constants. Errors carry the byte offset of the problem.
MPoly parse_polynomial(const std::string& src, const ParseContext& ctx = {});
// Same grammar, but arbitrary division yields a rational function.
Frac parse_rational(const std::string& src, const ParseContext& ctx = {});
// Minimal polynomial in t with integer coefficients; "t" gives Q.
FieldPtr parse_field(const std::string& src);

}  // namespace webcurv
