#include "webcurv/frac.hpp"

#include <algorithm>

#include "webcurv/error.hpp"

namespace webcurv {
namespace {

MPoly exact(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  ensure(q.has_value(), ErrorCode::kInternal, "gcd does not divide its argument");
  return *q;
}

}  // namespace

Frac::Frac(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
  ensure(!den.is_zero(), ErrorCode::kInput, "division by zero");
  if (num_.is_zero()) {
    den_ = MPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    const MPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  normalize_den();
}

void Frac::normalize_den() {
  const Algebraic& lc = den_.leading_coeff();
  if (lc.is_one()) return;
  const Algebraic inv = lc.inverse();
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

std::vector<Symbol> Frac::vars() const {
  std::vector<Symbol> r;
  std::set_union(num_.vars().begin(), num_.vars().end(), den_.vars().begin(), den_.vars().end(),
                 std::back_inserter(r));
  return r;
}

Frac Frac::operator-() const {
  Frac r(*this);
  r.num_ = -r.num_;
  return r;
}

Frac& Frac::operator+=(const Frac& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ += o.num_;
    if (num_.is_zero()) den_ = MPoly(1);
    return *this;
  }
  if (den_ == o.den_) {
    return *this = Frac(num_ + o.num_, den_);
  }
  // Henrici: with g = gcd(b, d) the sum only needs reduction by gcd(num, g).
  const MPoly g = gcd(den_, o.den_);
  if (g.is_constant()) {
    MPoly n = num_ * o.den_ + o.num_ * den_;
    MPoly d = den_ * o.den_;
    if (n.is_zero()) return *this = Frac();
    num_ = std::move(n);
    den_ = std::move(d);
    normalize_den();
    return *this;
  }
  const MPoly bg = exact(den_, g), dg = exact(o.den_, g);
  MPoly n = num_ * dg + o.num_ * bg;
  if (n.is_zero()) return *this = Frac();
  MPoly d = bg * o.den_;
  const MPoly h = gcd(n, g);
  if (!h.is_constant()) {
    n = exact(n, h);
    d = exact(d, h);
  }
  num_ = std::move(n);
  den_ = std::move(d);
  normalize_den();
  return *this;
}

Frac& Frac::operator-=(const Frac& o) { return *this += -o; }

Frac& Frac::operator*=(const Frac& o) {
  if (is_zero() || o.is_zero()) return *this = Frac();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  // Cross cancellation keeps the product reduced.
  MPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant() && !a.is_constant()) {
    const MPoly g1 = gcd(a, d);
    if (!g1.is_constant()) {
      a = exact(a, g1);
      d = exact(d, g1);
    }
  }
  if (!b.is_constant() && !c.is_constant()) {
    const MPoly g2 = gcd(c, b);
    if (!g2.is_constant()) {
      c = exact(c, g2);
      b = exact(b, g2);
    }
  }
  num_ = a * c;
  den_ = b * d;
  normalize_den();
  return *this;
}

Frac& Frac::operator/=(const Frac& o) { return *this *= o.inverse(); }

Frac Frac::inverse() const {
  ensure(!is_zero(), ErrorCode::kInput, "division by zero");
  Frac r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize_den();
  return r;
}

Frac Frac::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Frac r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

Frac Frac::derivative(const Symbol& v) const {
  if (!has_var(v)) return Frac();
  if (den_.is_constant()) {
    Frac r;
    r.num_ = num_.derivative(v).scaled(den_.constant_value().inverse());
    return r;
  }
  // (n/d)' = (n' d - n d')/d^2. A factor of d that involves v survives in
  // d^2 / gcd(n' d - n d', d) with full multiplicity, but factors free of v can
  // cancel further (when n/d restricted to them does not depend on v), so the
  // v-content of the denominator is reduced separately.
  const MPoly dn = num_.derivative(v), dd = den_.derivative(v);
  MPoly n = dn * den_ - num_ * dd;
  if (n.is_zero()) return Frac();
  MPoly d = den_ * den_;
  const MPoly g = gcd(n, den_);
  if (!g.is_constant()) {
    n = exact(n, g);
    d = exact(d, g);
  }
  while (true) {
    const MPoly c = content_in(d, v);
    const MPoly h = c.is_constant() ? c : gcd(n, c);
    if (h.is_constant()) break;
    n = exact(n, h);
    d = exact(d, h);
  }
  Frac r;
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  r.normalize_den();
  return r;
}

Frac Frac::substitute(const Symbol& v, const Frac& g) const {
  return substitute(std::map<Symbol, Frac>{{v, g}});
}

Frac Frac::substitute(const std::map<Symbol, Frac>& s) const {
  bool any = false;
  for (const auto& kv : s) any = any || has_var(kv.first);
  if (!any) return *this;
  // Rename the substituted symbols to fresh ones first so that symbols in
  // the replacement values are not substituted again.
  std::map<Symbol, Symbol> fresh;
  std::vector<std::pair<Symbol, const Frac*>> order;
  int k = 0;
  for (const auto& [v, g] : s) {
    const Symbol t = "~" + std::to_string(k++);
    fresh[v] = t;
    order.emplace_back(t, &g);
  }
  auto apply = [&](const MPoly& p0) {
    MPoly q = p0.rename(fresh);
    MPoly scale(1);
    for (const auto& [v, g] : order) {
      if (!q.has_var(v)) continue;
      // q(n/d) = (sum c_k n^k d^(D-k)) / d^D.
      const unsigned D = q.degree(v);
      const auto c = q.coeffs_in(v);
      std::vector<MPoly> dp(D + 1, MPoly(1));
      for (unsigned e = 1; e <= D; ++e) dp[e] = dp[e - 1] * g->den();
      MPoly acc, npow(1);
      for (unsigned e = 0; e <= D; ++e) {
        if (!c[e].is_zero()) acc += c[e] * npow * dp[D - e];
        if (e < D) npow *= g->num();
      }
      q = std::move(acc);
      scale *= dp[D];
    }
    return Frac(q, scale);
  };
  return apply(num_) / apply(den_);
}

std::string Frac::str() const {
  if (den_.is_constant()) {
    const Algebraic& c = den_.constant_value();
    if (c.is_one()) return num_.str();
  }
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace webcurv
