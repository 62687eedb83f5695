#include "dense.hpp"

#include <algorithm>

#include "webcurv/error.hpp"

namespace webcurv::dense {

void trim(APoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

APoly add(const APoly& a, const APoly& b) {
  APoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

APoly sub(const APoly& a, const APoly& b) {
  APoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  trim(r);
  return r;
}

APoly mul(const APoly& a, const APoly& b) {
  if (a.empty() || b.empty()) return {};
  APoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

APoly scale(const APoly& a, const Algebraic& c) {
  if (c.is_zero()) return {};
  APoly r(a);
  for (auto& v : r) v *= c;
  return r;
}

APoly derivative(const APoly& a) {
  if (a.size() <= 1) return {};
  APoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Algebraic(static_cast<long>(i));
  trim(r);
  return r;
}

void divmod(const APoly& a, const APoly& b, APoly& q, APoly& r) {
  ensure(!b.empty(), ErrorCode::kInput, "polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Algebraic());
  const Algebraic inv_lead = b.back().inverse();
  const bool monic_b = b.back().is_one();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Algebraic f = monic_b ? r.back() : r.back() * inv_lead;
    q[shift] = f;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) r[shift + j] -= f * b[j];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

APoly rem(const APoly& a, const APoly& b) {
  APoly q, r;
  divmod(a, b, q, r);
  return r;
}

APoly monic(const APoly& a) {
  if (a.empty() || a.back().is_one()) return a;
  return scale(a, a.back().inverse());
}

bool all_rational(const APoly& a) {
  return std::all_of(a.begin(), a.end(), [](const Algebraic& v) { return v.is_rational(); });
}

ZPoly primitive_integer(const APoly& a) {
  mpz_class den = 1;
  for (const auto& v : a) {
    const mpq_class& q = v.rational();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  ZPoly z(a.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const mpq_class& q = a[i].rational();
    z[i] = q.get_num() * (den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g != 0 && g != 1)
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  if (!z.empty() && sgn(z.back()) < 0)
    for (auto& v : z) v = -v;
  return z;
}

APoly from_integer(const ZPoly& a) {
  APoly r;
  r.reserve(a.size());
  for (const auto& v : a) r.emplace_back(v);
  trim(r);
  return r;
}

namespace {

mpz_class max_norm(const ZPoly& a) {
  mpz_class m = 0;
  for (const auto& v : a) {
    mpz_class t = abs(v);
    if (t > m) m = t;
  }
  return m;
}

mpz_class eval(const ZPoly& a, const mpz_class& x) {
  mpz_class r = 0;
  for (std::size_t k = a.size(); k-- > 0;) r = r * x + a[k];
  return r;
}

// Exact division test in Z[x]: true iff b divides a.
bool divides(const ZPoly& b, const ZPoly& a) {
  if (b.size() > a.size()) return false;
  ZPoly r(a);
  const mpz_class& lb = b.back();
  for (std::size_t k = r.size() - 1; k + 1 >= b.size(); --k) {
    if (sgn(r[k]) != 0) {
      if (!mpz_divisible_p(r[k].get_mpz_t(), lb.get_mpz_t())) return false;
      mpz_class f;
      mpz_divexact(f.get_mpz_t(), r[k].get_mpz_t(), lb.get_mpz_t());
      const std::size_t shift = k + 1 - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
    }
    if (k == 0) break;
  }
  for (const auto& v : r)
    if (sgn(v) != 0) return false;
  return true;
}

}  // namespace

std::optional<ZPoly> gcd_heuristic(const ZPoly& a, const ZPoly& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const std::size_t max_deg = std::max(a.size(), b.size());
  mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * max_deg > 400000) break;
    mpz_class ga = eval(a, xi), gb = eval(b, xi), g;
    mpz_gcd(g.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
    // Symmetric xi-adic expansion of the integer gcd.
    ZPoly cand;
    const mpz_class half = xi / 2;
    while (sgn(g) != 0) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      cand.push_back(r);
      g = (g - r) / xi;
    }
    if (!cand.empty()) {
      mpz_class c = 0;
      for (const auto& v : cand) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v.get_mpz_t());
      for (auto& v : cand) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
      if (sgn(cand.back()) < 0)
        for (auto& v : cand) v = -v;
      if (divides(cand, a) && divides(cand, b)) return cand;
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

APoly gcd(const APoly& a0, const APoly& b0) {
  APoly a(a0), b(b0);
  trim(a);
  trim(b);
  if (a.empty()) return monic(b);
  if (b.empty()) return monic(a);
  if (a.size() == 1 || b.size() == 1) return {Algebraic(1)};
  if (all_rational(a) && all_rational(b) && std::max(a.size(), b.size()) > 8) {
    if (auto g = gcd_heuristic(primitive_integer(a), primitive_integer(b)))
      return monic(from_integer(*g));
  }
  a = monic(a);
  b = monic(b);
  while (!b.empty()) {
    APoly r = monic(rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

APoly ext_gcd(const APoly& a0, const APoly& b0, APoly& s, APoly& t) {
  APoly r0(a0), r1(b0);
  trim(r0);
  trim(r1);
  APoly s0{Algebraic(1)}, s1, t0, t1{Algebraic(1)};
  while (!r1.empty()) {
    APoly q, r;
    divmod(r0, r1, q, r);
    APoly s2 = sub(s0, mul(q, s1));
    APoly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s.clear();
    t.clear();
    return {};
  }
  const Algebraic inv = r0.back().inverse();
  s = scale(s0, inv);
  t = scale(t0, inv);
  return scale(r0, inv);
}

}  // namespace webcurv::dense
