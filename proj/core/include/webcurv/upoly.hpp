#pragma once

#include <string>
#include <utility>
#include <vector>

#include "webcurv/frac.hpp"

namespace webcurv {

// Dense univariate polynomial whose coefficients are Fracs in the remaining
// symbols; the ground field is K(params, other variables). Coefficients are
// stored low to high with no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Frac> c);
  UPoly(const Frac& c);  // NOLINT(runtime/explicit)
  static UPoly monomial(unsigned k, const Frac& c = Frac(1));
  static UPoly identity() { return monomial(1); }
  // Views an MPoly as a polynomial in v.
  static UPoly from_mpoly(const MPoly& f, const Symbol& v);
  // Same for a Frac whose denominator is free of v.
  static UPoly from_frac(const Frac& f, const Symbol& v);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Frac>& coeffs() const { return c_; }
  Frac coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Frac(); }
  const Frac& lead() const;
  // True when every coefficient is in Q(theta).
  bool has_constant_coeffs() const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const Frac& c) const;
  UPoly pow(unsigned e) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(c_ == o.c_); }

  UPoly monic() const;
  UPoly derivative() const;
  // Hasse derivative D^(j) = (1/j!) d^j/dz^j.
  UPoly hasse(unsigned j) const;
  Frac eval(const Frac& t) const;
  UPoly compose(const UPoly& g) const;

  MPoly to_mpoly(const Symbol& v) const;  // requires polynomial coefficients
  // Clears denominators: returns (N, D) with this = N / D, D free of v.
  std::pair<MPoly, MPoly> to_mpoly_cleared(const Symbol& v) const;
  std::string str(const Symbol& v) const;

 private:
  void trim();
  std::vector<Frac> c_;
};

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly rem(const UPoly& a, const UPoly& b);
UPoly quo(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// s*a + t*b = gcd(a, b), gcd monic.
UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);

struct SquarefreeFactor {
  UPoly factor;  // monic, squarefree
  unsigned multiplicity;
};
// Yun's algorithm: f = lead * prod factor^multiplicity, multiplicities
// strictly increasing, factors pairwise coprime.
std::vector<SquarefreeFactor> squarefree(const UPoly& f, Frac* lead = nullptr);

}  // namespace webcurv
