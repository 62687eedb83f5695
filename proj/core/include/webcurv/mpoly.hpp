#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webcurv/number_field.hpp"

namespace webcurv {

using Symbol = std::string;

// Symbols treated as geometric variables; every other identifier is a
// parameter. The distinction only matters to the parser and to reports.
bool is_variable_symbol(const Symbol& s);

// Largest total degree any product or power may reach.
inline constexpr unsigned kDegreeCap = 1000000;

// Sparse polynomial over Q(theta) in named symbols. The symbol list is kept
// sorted and minimal (every listed symbol occurs), and terms are stored in
// descending graded-lex order, so equal polynomials have equal storage.
class MPoly {
 public:
  struct Term {
    std::vector<std::uint32_t> exp;  // aligned with vars()
    Algebraic coeff;
  };

  MPoly() = default;
  MPoly(const Algebraic& c);  // NOLINT(runtime/explicit)
  MPoly(long c) : MPoly(Algebraic(c)) {}  // NOLINT(runtime/explicit)
  static MPoly var(const Symbol& name);
  // Builds from arbitrary (possibly unsorted, duplicated) terms.
  static MPoly from_terms(std::vector<Symbol> vars, std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  // Value of a constant polynomial (zero for the zero polynomial).
  Algebraic constant_value() const;
  Algebraic constant_term() const;
  const std::vector<Symbol>& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool has_var(const Symbol& v) const;
  unsigned degree(const Symbol& v) const;
  unsigned total_degree() const;
  // Coefficient of the graded-lex leading term.
  const Algebraic& leading_coeff() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(const Algebraic& c) const;
  MPoly pow(unsigned e) const;

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly derivative(const Symbol& v) const;
  // Coefficients in v (index = power of v), each free of v.
  std::vector<MPoly> coeffs_in(const Symbol& v) const;
  static MPoly from_coeffs_in(const Symbol& v, const std::vector<MPoly>& c);
  MPoly coeff_in(const Symbol& v, unsigned k) const;
  MPoly substitute(const Symbol& v, const MPoly& g) const;
  // Simultaneous substitution of several symbols.
  MPoly substitute(const std::map<Symbol, MPoly>& s) const;
  MPoly rename(const std::map<Symbol, Symbol>& s) const;

  std::string str() const;
  // Largest coefficient bit size, for telemetry.
  std::size_t max_coeff_bits() const;

 private:
  void canonicalize();
  void prune_vars();
  std::vector<Symbol> vars_;
  std::vector<Term> terms_;
};

// Exact quotient f/g if g divides f, else nullopt.
std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g);
// lc(g)^(deg f - deg g + 1) f mod g with respect to v.
MPoly pseudo_remainder(const MPoly& f, const MPoly& g, const Symbol& v);
// GCD normalized to graded-lex leading coefficient 1; gcd(0,0) = 0.
MPoly gcd(const MPoly& f, const MPoly& g);
// Gcd of the coefficients of f viewed in v.
MPoly content_in(const MPoly& f, const Symbol& v);
// Makes the leading coefficient 1.
MPoly monic_normalize(const MPoly& f);
// Resultant eliminating v by the subresultant algorithm.
MPoly resultant(const MPoly& f, const MPoly& g, const Symbol& v);
// (-1)^(d(d-1)/2) Res_v(F, F_v) / a0.
MPoly discriminant(const MPoly& f, const Symbol& v);
struct MFactor {
  MPoly factor;  // leading coefficient 1, squarefree
  unsigned multiplicity;
};
// f = unit * prod factor^multiplicity with pairwise coprime factors and
// distinct multiplicities, in increasing order.
std::vector<MFactor> squarefree_decomposition(const MPoly& f, Algebraic* unit = nullptr);

// x A_x + y A_y - d A.
MPoly euler_residual(const MPoly& a, unsigned d);

}  // namespace webcurv
