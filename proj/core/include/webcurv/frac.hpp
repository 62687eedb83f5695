#pragma once

#include <map>
#include <string>

#include "webcurv/mpoly.hpp"

namespace webcurv {

// Reduced quotient of two MPolys. The numerator and denominator are coprime
// and the denominator has graded-lex leading coefficient 1, so equal values
// have equal storage. The same type serves for parameter-dependent scalars
// (no variable symbols) and for rational functions in x, y, z, ...
class Frac {
 public:
  Frac() : den_(1) {}
  Frac(long c) : num_(c), den_(1) {}                 // NOLINT(runtime/explicit)
  Frac(const Algebraic& c) : num_(c), den_(1) {}     // NOLINT(runtime/explicit)
  Frac(const MPoly& num) : num_(num), den_(1) {}     // NOLINT(runtime/explicit)
  Frac(const MPoly& num, const MPoly& den);
  static Frac var(const Symbol& s) { return Frac(MPoly::var(s)); }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_constant() && den_.is_constant() && num_.constant_value().is_one(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Algebraic constant_value() const { return num_.constant_value(); }
  bool has_var(const Symbol& v) const { return num_.has_var(v) || den_.has_var(v); }
  // Union of symbols in numerator and denominator.
  std::vector<Symbol> vars() const;

  Frac operator-() const;
  Frac& operator+=(const Frac& o);
  Frac& operator-=(const Frac& o);
  Frac& operator*=(const Frac& o);
  Frac& operator/=(const Frac& o);
  friend Frac operator+(Frac a, const Frac& b) { return a += b; }
  friend Frac operator-(Frac a, const Frac& b) { return a -= b; }
  friend Frac operator*(Frac a, const Frac& b) { return a *= b; }
  friend Frac operator/(Frac a, const Frac& b) { return a /= b; }
  Frac inverse() const;
  Frac pow(int e) const;

  bool operator==(const Frac& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Frac& o) const { return !(*this == o); }

  Frac derivative(const Symbol& v) const;
  Frac substitute(const Symbol& v, const Frac& g) const;
  Frac substitute(const std::map<Symbol, Frac>& s) const;

  // "num" or "(num)/(den)" in the input grammar.
  std::string str() const;

 private:
  void normalize_den();
  MPoly num_, den_;
};

}  // namespace webcurv
