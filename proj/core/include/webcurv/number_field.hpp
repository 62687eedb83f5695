#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace webcurv {

// Q(theta) for a monic minimal polynomial of degree >= 2. The rational base
// field is represented by a null FieldPtr rather than a degree-1 object.
class NumberField {
 public:
  // Coefficients low to high; the last one must be 1.
  explicit NumberField(std::vector<mpq_class> minpoly);

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const std::vector<mpq_class>& minpoly() const { return minpoly_; }
  bool same_as(const NumberField& other) const { return minpoly_ == other.minpoly_; }

  // Rendered in the variable t, e.g. "t^2 + 3".
  std::string minpoly_string() const;

 private:
  std::vector<mpq_class> minpoly_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

bool same_field(const FieldPtr& a, const FieldPtr& b);

// An element of Q(theta), always reduced modulo the minimal polynomial.
// Elements that happen to be rational drop their field pointer so that
// equality stays structural regardless of how a value was produced.
class Algebraic {
 public:
  Algebraic() = default;
  Algebraic(long v) : q_(v) {}  // NOLINT(runtime/explicit)
  Algebraic(const mpq_class& v) : q_(v) { q_.canonicalize(); }  // NOLINT
  Algebraic(const mpz_class& v) : q_(v) {}  // NOLINT

  static Algebraic theta(const FieldPtr& field);
  // c[0] + c[1] theta + ... (reduced if longer than the field degree).
  static Algebraic from_coeffs(const FieldPtr& field, std::vector<mpq_class> c);

  bool is_zero() const { return !field_ && sgn(q_) == 0; }
  bool is_one() const { return !field_ && q_ == 1; }
  bool is_rational() const { return !field_; }
  const mpq_class& rational() const;  // requires is_rational()
  const FieldPtr& field() const { return field_; }
  // Coefficient vector of length degree (or the single rational value).
  std::vector<mpq_class> coeffs() const;

  Algebraic operator-() const;
  Algebraic& operator+=(const Algebraic& o);
  Algebraic& operator-=(const Algebraic& o);
  Algebraic& operator*=(const Algebraic& o);
  Algebraic& operator/=(const Algebraic& o);
  friend Algebraic operator+(Algebraic a, const Algebraic& b) { return a += b; }
  friend Algebraic operator-(Algebraic a, const Algebraic& b) { return a -= b; }
  friend Algebraic operator*(Algebraic a, const Algebraic& b) { return a *= b; }
  friend Algebraic operator/(Algebraic a, const Algebraic& b) { return a /= b; }

  Algebraic inverse() const;  // throws Error(kInput) on zero
  Algebraic pow(unsigned long e) const;

  bool operator==(const Algebraic& o) const;
  bool operator!=(const Algebraic& o) const { return !(*this == o); }
  // Deterministic total order used for canonical sorting only.
  int compare(const Algebraic& o) const;

  // Rendering in the input grammar with theta spelled "theta".
  std::string str() const;
  // True when str() is a single signed atom that needs no parentheses
  // inside a product.
  bool is_atomic() const { return !field_ || nonzero_terms() == 1; }
  // Sign of the leading rational coefficient, for pretty printing.
  int leading_sign() const;

  // Total number of bits in numerators and denominators.
  std::size_t bit_size() const;

 private:
  int nonzero_terms() const;
  void normalize();

  FieldPtr field_;
  mpq_class q_;                 // value when rational
  std::vector<mpq_class> c_;    // length degree when algebraic
};

}  // namespace webcurv
