#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <vector>

#include "webcurv/upoly.hpp"

namespace webcurv {

// Owning MPFR value. Each value carries its own precision; binary operations
// produce the larger of the two, so no process-wide default is consulted.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 256);
  Real(double v, mpfr_prec_t prec);
  Real(const mpq_class& v, mpfr_prec_t prec);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const;

  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  friend bool operator<(const Real& a, const Real& b) { return a.cmp(b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return a.cmp(b) >= 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific notation with the given number of significant digits.
  std::string str(int digits = 20) const;

  static Real sqrt(const Real& a);
  static Real abs(const Real& a);
  static Real pi(mpfr_prec_t prec);
  static Real cos(const Real& a);
  static Real sin(const Real& a);
  // 2^e and 10^e at the given precision.
  static Real exp2(long e, mpfr_prec_t prec);
  static Real exp10(long e, mpfr_prec_t prec);
  static Real max(const Real& a, const Real& b) { return a < b ? b : a; }

 private:
  mpfr_t v_;
};

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t prec = 256) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t prec() const { return re.prec(); }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re, -im); }
  Real abs() const;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

// Fixed numeric embedding of Q(theta): theta is the root of the minimal
// polynomial with largest real part, ties broken by largest imaginary part.
class Embedding {
 public:
  Embedding(const FieldPtr& field, mpfr_prec_t prec);
  mpfr_prec_t prec() const { return prec_; }
  Complex operator()(const Algebraic& a) const;
  // Requires every coefficient of c to be in Q(theta).
  std::vector<Complex> coeffs(const UPoly& c) const;
  const FieldPtr& field() const { return field_; }

 private:
  FieldPtr field_;
  mpfr_prec_t prec_;
  std::vector<Complex> theta_powers_;
};

// Field of all coefficients of a parameter-free UPoly (null for Q).
FieldPtr common_field(const UPoly& c);

struct NumericRoot {
  Complex z;
  Real radius;  // inclusion radius for the exact root
};

struct RootOptions {
  mpfr_prec_t prec = 256;
  std::uint64_t seed = 0;
  bool escalate = true;  // retry once at twice the precision
};

// Simultaneous Aberth-Ehrlich iteration from perturbed circle starts, with
// Braess-Hadeler inclusion radii n|f(z_i)| / |a_n prod_{j!=i}(z_i - z_j)|
// (plus a rounding allowance). Expects a squarefree polynomial; throws
// Error(kIndeterminate) when refinement does not converge.
std::vector<NumericRoot> numeric_roots(const std::vector<Complex>& coeffs, const RootOptions& opt = {});
std::vector<NumericRoot> numeric_roots(const UPoly& f, const RootOptions& opt = {});

struct RootCluster {
  Complex center;
  Real radius;
  unsigned multiplicity;
};

// Roots of num - value * den grouped into clusters of overlapping inclusion
// disks, sorted by (re, im). A cluster wider than the multiplicity-scaled
// threshold is ambiguous: precision doubles once, then Error(kIndeterminate).
std::vector<RootCluster> numeric_fibers(const std::vector<Complex>& num, const std::vector<Complex>& den,
                                        const Complex& value, const RootOptions& opt = {});

// Distinct roots of f lying in Q, found by continued-fraction reconstruction
// of the real numeric roots and confirmed by exact evaluation. Coefficients
// must be parameter-free; the result is sorted increasingly.
std::vector<mpq_class> rational_roots(const UPoly& f, const RootOptions& opt = {});

// Horner evaluation of a complex coefficient vector (low to high).
Complex horner(const std::vector<Complex>& c, const Complex& z);

}  // namespace webcurv
