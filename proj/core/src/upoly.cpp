#include "webcurv/upoly.hpp"

#include <algorithm>

#include "dense.hpp"
#include "webcurv/error.hpp"

namespace webcurv {
namespace {

const Symbol kMainSymbol = "~u";

dense::APoly to_dense(const UPoly& a) {
  dense::APoly d(a.coeffs().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.coeffs()[i].constant_value();
  return d;
}

UPoly from_dense(const dense::APoly& d) {
  std::vector<Frac> c(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) c[i] = Frac(d[i]);
  return UPoly(std::move(c));
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

UPoly::UPoly(std::vector<Frac> c) : c_(std::move(c)) { trim(); }

UPoly::UPoly(const Frac& c) {
  if (!c.is_zero()) c_.push_back(c);
}

UPoly UPoly::monomial(unsigned k, const Frac& c) {
  if (c.is_zero()) return UPoly();
  std::vector<Frac> v(k + 1);
  v[k] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::from_mpoly(const MPoly& f, const Symbol& v) {
  auto c = f.coeffs_in(v);
  std::vector<Frac> r;
  r.reserve(c.size());
  for (auto& p : c) r.emplace_back(std::move(p));
  return UPoly(std::move(r));
}

UPoly UPoly::from_frac(const Frac& f, const Symbol& v) {
  ensure(!f.den().has_var(v), ErrorCode::kInternal, "denominator depends on the main variable");
  UPoly r = from_mpoly(f.num(), v);
  return r.scaled(Frac(MPoly(1), f.den()));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Frac& UPoly::lead() const {
  ensure(!c_.empty(), ErrorCode::kInternal, "leading coefficient of zero polynomial");
  return c_.back();
}

bool UPoly::has_constant_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const Frac& f) { return f.is_constant(); });
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (auto& v : r.c_) v = -v;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  if (a.has_constant_coeffs() && b.has_constant_coeffs())
    return from_dense(dense::mul(to_dense(a), to_dense(b)));
  std::vector<Frac> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::scaled(const Frac& c) const {
  if (c.is_zero()) return UPoly();
  if (c.is_one()) return *this;
  UPoly r(*this);
  for (auto& v : r.c_) v *= c;
  return r;
}

UPoly UPoly::pow(unsigned e) const {
  UPoly base(*this), acc(Frac(1));
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

UPoly UPoly::monic() const {
  if (c_.empty() || c_.back().is_one()) return *this;
  return scaled(c_.back().inverse());
}

UPoly UPoly::derivative() const { return hasse(1); }

UPoly UPoly::hasse(unsigned j) const {
  if (static_cast<int>(j) > degree()) return UPoly();
  std::vector<Frac> r(c_.size() - j);
  for (std::size_t k = j; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    r[k - j] = c_[k] * Frac(Algebraic(binomial(static_cast<unsigned>(k), j)));
  }
  return UPoly(std::move(r));
}

Frac UPoly::eval(const Frac& t) const {
  Frac r;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
  return r;
}

UPoly UPoly::compose(const UPoly& g) const {
  UPoly r;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * g + UPoly(c_[k]);
  return r;
}

MPoly UPoly::to_mpoly(const Symbol& v) const {
  std::vector<MPoly> c;
  c.reserve(c_.size());
  for (const auto& f : c_) {
    ensure(f.is_polynomial(), ErrorCode::kInternal, "coefficient is not polynomial");
    c.push_back(f.num().scaled(f.den().constant_value().inverse()));
  }
  return MPoly::from_coeffs_in(v, c);
}

std::pair<MPoly, MPoly> UPoly::to_mpoly_cleared(const Symbol& v) const {
  MPoly l(1);
  for (const auto& f : c_) {
    if (f.is_polynomial()) continue;
    const MPoly g = gcd(l, f.den());
    l = *divide_exact(l * f.den(), g);
  }
  l = monic_normalize(l);
  std::vector<MPoly> c;
  c.reserve(c_.size());
  for (const auto& f : c_) {
    if (f.is_zero()) {
      c.emplace_back();
      continue;
    }
    c.push_back(*divide_exact(f.num() * l, f.den()));
  }
  return {MPoly::from_coeffs_in(v, c), l};
}

std::string UPoly::str(const Symbol& v) const {
  auto [n, d] = to_mpoly_cleared(v);
  return Frac(n, d).str();
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  ensure(!b.is_zero(), ErrorCode::kInput, "polynomial division by zero");
  if (a.has_constant_coeffs() && b.has_constant_coeffs()) {
    dense::APoly dq, dr;
    dense::divmod(to_dense(a), to_dense(b), dq, dr);
    q = from_dense(dq);
    r = from_dense(dr);
    return;
  }
  std::vector<Frac> rc = a.coeffs();
  const int db = b.degree();
  std::vector<Frac> qc(a.degree() >= db ? a.degree() - db + 1 : 0);
  const Frac inv = b.lead().inverse();
  const auto& bc = b.coeffs();
  for (int k = a.degree(); k >= db; --k) {
    if (rc[k].is_zero()) continue;
    const Frac f = rc[k] * inv;
    qc[k - db] = f;
    for (int j = 0; j < db; ++j) rc[k - db + j] -= f * bc[j];
    rc[k] = Frac();
  }
  q = UPoly(std::move(qc));
  r = UPoly(std::move(rc));
}

UPoly rem(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return r;
}

UPoly quo(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return UPoly(Frac(1));
  if (a.has_constant_coeffs() && b.has_constant_coeffs())
    return from_dense(dense::gcd(to_dense(a), to_dense(b)));
  // Fraction-free route through the multivariate gcd.
  const MPoly g = gcd(a.to_mpoly_cleared(kMainSymbol).first, b.to_mpoly_cleared(kMainSymbol).first);
  return UPoly::from_mpoly(g, kMainSymbol).monic();
}

UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
  UPoly r0(a), r1(b), s0(Frac(1)), s1, t0, t1(Frac(1));
  while (!r1.is_zero()) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = t = UPoly();
    return r0;
  }
  const Frac inv = r0.lead().inverse();
  s = s0.scaled(inv);
  t = t0.scaled(inv);
  return r0.scaled(inv);
}

std::vector<SquarefreeFactor> squarefree(const UPoly& f, Frac* lead) {
  ensure(!f.is_zero(), ErrorCode::kInput, "squarefree decomposition of zero");
  if (lead) *lead = f.lead();
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;
  const UPoly m = f.monic();
  UPoly a0 = gcd(m, m.derivative());
  UPoly b = quo(m, a0);
  UPoly c = quo(m.derivative(), a0);
  UPoly d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    UPoly a = gcd(b, d);
    b = quo(b, a);
    c = quo(d, a);
    d = c - b.derivative();
    if (a.degree() > 0) out.push_back({a.monic(), i});
  }
  return out;
}

}  // namespace webcurv
