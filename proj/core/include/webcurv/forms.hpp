#pragma once

#include <string>

#include "webcurv/frac.hpp"

namespace webcurv {

// a dx + b dy on the (x, y) plane.
struct OneForm {
  Frac a, b;

  OneForm& operator+=(const OneForm& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  OneForm& operator-=(const OneForm& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  friend OneForm operator+(OneForm u, const OneForm& v) { return u += v; }
  friend OneForm operator-(OneForm u, const OneForm& v) { return u -= v; }
  OneForm scaled(const Frac& c) const { return {a * c, b * c}; }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  bool operator==(const OneForm& o) const { return a == o.a && b == o.b; }
  bool operator!=(const OneForm& o) const { return !(*this == o); }
  std::string str() const;
};

// c dx^dy.
struct TwoForm {
  Frac c;
  bool is_zero() const { return c.is_zero(); }
  bool operator==(const TwoForm& o) const { return c == o.c; }
  std::string str() const;
};

// d(a dx + b dy) = (b_x - a_y) dx^dy.
TwoForm exterior_derivative(const OneForm& w);
// dg, and the logarithmic form dg/g.
OneForm differential(const Frac& g);
OneForm dlog(const Frac& g);
// Pullback of a form under (x, y) -> (X(x, y), Y(x, y)).
OneForm pullback(const OneForm& w, const Frac& X, const Frac& Y);
TwoForm pullback(const TwoForm& w, const Frac& X, const Frac& Y);

}  // namespace webcurv
