#include "webcurv/number_field.hpp"

#include <sstream>

#include "webcurv/error.hpp"

namespace webcurv {
namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Remainder of p modulo a monic polynomial m.
void reduce_mod(QPoly& p, const QPoly& m) {
  const std::size_t n = m.size() - 1;
  for (std::size_t k = p.size(); k-- > n;) {
    if (sgn(p[k]) == 0) continue;
    const mpq_class lead = p[k];
    for (std::size_t j = 0; j < n; ++j) p[k - n + j] -= lead * m[j];
    p[k] = 0;
  }
  trim(p);
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// q, r with a = q b + r.
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, mpq_class(0));
  const mpq_class inv_lead = 1 / b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const mpq_class f = r.back() * inv_lead;
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
    trim(r);
  }
  trim(q);
}

}  // namespace

NumberField::NumberField(std::vector<mpq_class> minpoly) : minpoly_(std::move(minpoly)) {
  trim(minpoly_);
  ensure(minpoly_.size() >= 3, ErrorCode::kInput,
         "number field minimal polynomial must have degree >= 2");
  ensure(minpoly_.back() == 1, ErrorCode::kInput, "minimal polynomial must be monic");
}

std::string NumberField::minpoly_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = minpoly_.size(); k-- > 0;) {
    const mpq_class& c = minpoly_[k];
    if (sgn(c) == 0) continue;
    mpq_class a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "t";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

Algebraic Algebraic::theta(const FieldPtr& field) {
  ensure(field != nullptr, ErrorCode::kInput, "theta requires a number field");
  return from_coeffs(field, {mpq_class(0), mpq_class(1)});
}

Algebraic Algebraic::from_coeffs(const FieldPtr& field, std::vector<mpq_class> c) {
  Algebraic r;
  for (auto& v : c) v.canonicalize();
  if (!field) {
    trim(c);
    ensure(c.size() <= 1, ErrorCode::kInput, "theta used without a number field");
    if (!c.empty()) r.q_ = c[0];
    return r;
  }
  trim(c);
  reduce_mod(c, field->minpoly());
  r.field_ = field;
  r.c_ = std::move(c);
  r.c_.resize(field->degree(), mpq_class(0));
  r.normalize();
  return r;
}

void Algebraic::normalize() {
  if (!field_) return;
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return;
  q_ = c_.empty() ? mpq_class(0) : c_[0];
  c_.clear();
  field_.reset();
}

const mpq_class& Algebraic::rational() const {
  ensure(!field_, ErrorCode::kInternal, "value is not rational");
  return q_;
}

std::vector<mpq_class> Algebraic::coeffs() const {
  if (!field_) return {q_};
  return c_;
}

int Algebraic::nonzero_terms() const {
  if (!field_) return sgn(q_) != 0 ? 1 : 0;
  int n = 0;
  for (const auto& v : c_) n += sgn(v) != 0;
  return n;
}

Algebraic Algebraic::operator-() const {
  Algebraic r(*this);
  if (!r.field_) {
    r.q_ = -r.q_;
  } else {
    for (auto& v : r.c_) v = -v;
  }
  return r;
}

Algebraic& Algebraic::operator+=(const Algebraic& o) {
  if (!field_ && !o.field_) {
    q_ += o.q_;
    return *this;
  }
  if (!o.field_) {
    c_[0] += o.q_;
    return *this;
  }
  if (!field_) {
    const mpq_class v = q_;
    *this = o;
    c_[0] += v;
    return *this;
  }
  ensure(same_field(field_, o.field_), ErrorCode::kInput, "mixing distinct number fields");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  normalize();
  return *this;
}

Algebraic& Algebraic::operator-=(const Algebraic& o) { return *this += -o; }

Algebraic& Algebraic::operator*=(const Algebraic& o) {
  if (!field_ && !o.field_) {
    q_ *= o.q_;
    return *this;
  }
  if (!o.field_) {
    if (sgn(o.q_) == 0) return *this = Algebraic();
    for (auto& v : c_) v *= o.q_;
    return *this;
  }
  if (!field_) {
    if (sgn(q_) == 0) return *this;
    const mpq_class v = q_;
    *this = o;
    for (auto& c : c_) c *= v;
    return *this;
  }
  ensure(same_field(field_, o.field_), ErrorCode::kInput, "mixing distinct number fields");
  QPoly a = c_, b = o.c_;
  trim(a);
  trim(b);
  QPoly p = poly_mul(a, b);
  reduce_mod(p, field_->minpoly());
  p.resize(field_->degree(), mpq_class(0));
  c_ = std::move(p);
  normalize();
  return *this;
}

Algebraic& Algebraic::operator/=(const Algebraic& o) { return *this *= o.inverse(); }

Algebraic Algebraic::inverse() const {
  if (!field_) {
    ensure(sgn(q_) != 0, ErrorCode::kInput, "division by zero");
    return Algebraic(mpq_class(1 / q_));
  }
  // Extended Euclid on (m, a): track s with s*a == r (mod m).
  const QPoly& m = field_->minpoly();
  QPoly r0 = m, r1 = c_;
  trim(r1);
  QPoly s0, s1{mpq_class(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    poly_divmod(r0, r1, q, r);
    QPoly qs = poly_mul(q, s1);
    QPoly s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), mpq_class(0));
    for (std::size_t k = 0; k < qs.size(); ++k) s2[k] -= qs[k];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  ensure(!r1.empty(), ErrorCode::kInput,
         "element is a zero divisor: minimal polynomial is reducible");
  const mpq_class inv = 1 / r1[0];
  for (auto& v : s1) v *= inv;
  return from_coeffs(field_, s1);
}

Algebraic Algebraic::pow(unsigned long e) const {
  Algebraic base(*this), acc(1);
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

bool Algebraic::operator==(const Algebraic& o) const {
  if (!field_ || !o.field_) return !field_ && !o.field_ && q_ == o.q_;
  return same_field(field_, o.field_) && c_ == o.c_;
}

int Algebraic::compare(const Algebraic& o) const {
  if (!field_ && !o.field_) return cmp(q_, o.q_) < 0 ? -1 : (cmp(q_, o.q_) > 0 ? 1 : 0);
  if (!field_) return -1;
  if (!o.field_) return 1;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const int c = cmp(c_[k], o.c_[k]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int Algebraic::leading_sign() const {
  if (!field_) return sgn(q_);
  for (std::size_t k = c_.size(); k-- > 0;)
    if (sgn(c_[k]) != 0) return sgn(c_[k]);
  return 0;
}

std::string Algebraic::str() const {
  if (!field_) return q_.get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const mpq_class& c = c_[k];
    if (sgn(c) == 0) continue;
    const mpq_class a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "theta";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::size_t Algebraic::bit_size() const {
  auto bits = [](const mpq_class& v) {
    return mpz_sizeinbase(v.get_num_mpz_t(), 2) + mpz_sizeinbase(v.get_den_mpz_t(), 2);
  };
  if (!field_) return bits(q_);
  std::size_t n = 0;
  for (const auto& v : c_) n += bits(v);
  return n;
}

}  // namespace webcurv
