#pragma once

// Dense univariate polynomials over Q(theta), coefficients low to high and
// always trimmed. Internal helpers shared by MPoly and UPoly fast paths.

#include <optional>
#include <vector>

#include "webcurv/number_field.hpp"

namespace webcurv::dense {

using APoly = std::vector<Algebraic>;
using ZPoly = std::vector<mpz_class>;

void trim(APoly& p);
inline int degree(const APoly& p) { return static_cast<int>(p.size()) - 1; }

APoly add(const APoly& a, const APoly& b);
APoly sub(const APoly& a, const APoly& b);
APoly mul(const APoly& a, const APoly& b);
APoly scale(const APoly& a, const Algebraic& c);
APoly derivative(const APoly& a);
void divmod(const APoly& a, const APoly& b, APoly& q, APoly& r);
APoly rem(const APoly& a, const APoly& b);
APoly monic(const APoly& a);
// Monic gcd; gcd(0, 0) = 0.
APoly gcd(const APoly& a, const APoly& b);
// Solves s*a + t*b = g with g = gcd(a, b) monic.
APoly ext_gcd(const APoly& a, const APoly& b, APoly& s, APoly& t);
bool all_rational(const APoly& a);

// Heuristic integer gcd by evaluation at a large integer. Returns nullopt
// when it gives up; the caller falls back to Euclid.
std::optional<ZPoly> gcd_heuristic(const ZPoly& a, const ZPoly& b);
// Primitive integer polynomial proportional to a rational one.
ZPoly primitive_integer(const APoly& a);
APoly from_integer(const ZPoly& a);

}  // namespace webcurv::dense
