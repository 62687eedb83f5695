#include "webcurv/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "webcurv/error.hpp"

namespace webcurv {

// --- Real ------------------------------------------------------------------

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

namespace {

// Raises the precision of a in place before an operation with b.
void widen(Real& a, const Real& b) {
  if (a.prec() < b.prec()) mpfr_prec_round(a.get(), b.prec(), MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  widen(*this, o);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(*this, o);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(*this, o);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(*this, o);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::string Real::str(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Real Real::sqrt(const Real& a) {
  Real r(a.prec());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real Real::abs(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::cos(const Real& a) {
  Real r(a.prec());
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real Real::sin(const Real& a) {
  Real r(a.prec());
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real Real::exp2(long e, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

Real Real::exp10(long e, mpfr_prec_t prec) {
  Real r(prec), ten(10.0, prec);
  mpfr_pow_si(r.v_, ten.v_, e, MPFR_RNDN);
  return r;
}

// --- Complex ---------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real den = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / den;
  Real i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Real Complex::abs() const {
  Real r(prec());
  mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
  return r;
}

Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex r(z.prec());
  for (std::size_t k = c.size(); k-- > 0;) r = r * z + c[k];
  return r;
}

// --- Aberth-Ehrlich ----------------------------------------------------------

namespace {

struct AberthResult {
  std::vector<NumericRoot> roots;
  bool converged = false;
};

AberthResult aberth(std::vector<Complex> a, mpfr_prec_t prec, std::uint64_t seed, int max_iter) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  ensure(a.size() >= 2, ErrorCode::kInput, "numeric root finding needs degree >= 1");
  for (auto& c : a) {
    mpfr_prec_round(c.re.get(), prec, MPFR_RNDN);
    mpfr_prec_round(c.im.get(), prec, MPFR_RNDN);
  }
  const std::size_t n = a.size() - 1;
  const Complex& lead = a[n];
  const Real lead_abs = lead.abs();

  // Fujiwara-style radius bound 2 max |a_k/a_n|^(1/(n-k)).
  Real bound(prec);
  for (std::size_t k = 0; k < n; ++k) {
    Real t = a[k].abs() / lead_abs;
    if (t.is_zero()) continue;
    mpfr_rootn_ui(t.get(), t.get(), static_cast<unsigned long>(n - k), MPFR_RNDN);
    bound = Real::max(bound, t);
  }
  if (bound.is_zero()) bound = Real(1.0, prec);
  bound *= Real(2.0, prec);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const Real two_pi = Real::pi(prec) * Real(2.0, prec);
  const Real phase(uni(rng), prec);
  std::vector<Complex> z;
  z.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real ang = two_pi * (Real(static_cast<double>(k), prec) + phase) / Real(static_cast<double>(n), prec);
    const Real rad = bound * Real(0.75 + 0.25 * uni(rng), prec);
    z.emplace_back(rad * Real::cos(ang), rad * Real::sin(ang));
  }

  const Real eps = Real::exp2(-static_cast<long>(prec) + 12, prec);
  const Real one(1.0, prec);
  const Real floor = Real::exp2(-static_cast<long>(prec) / 2, prec);
  std::vector<bool> done(n, false);
  std::vector<Real> last(n, Real(prec));
  for (auto& l : last) mpfr_set_inf(l.get(), 1);
  AberthResult res;
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      // p and p' by Horner.
      Complex p(prec), dp(prec);
      for (std::size_t k = a.size(); k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + a[k];
      }
      if (p.is_zero()) {
        done[i] = true;
        continue;
      }
      Complex s(prec);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (d.is_zero()) continue;
        s += Complex(one, Real(prec)) / d;
      }
      Complex w(prec);
      if (dp.is_zero()) {
        w = Complex(eps, eps);
      } else {
        const Complex ratio = p / dp;
        const Complex den = Complex(one, Real(prec)) - ratio * s;
        w = den.is_zero() ? ratio : ratio / den;
      }
      z[i] -= w;
      const Real scale = Real::max(one, z[i].abs());
      const Real step = w.abs();
      // Stop at the rounding floor: tiny and no longer shrinking.
      if (step <= eps * scale || (step <= floor * scale && step * Real(2.0, prec) >= last[i])) done[i] = true;
      else all = false;
      last[i] = step;
    }
    if (all) {
      res.converged = true;
      break;
    }
  }

  // Inclusion radii with a rounding allowance on the residual.
  const Real unit = Real::exp2(-static_cast<long>(prec), prec);
  res.roots.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = horner(a, z[i]);
    Real mag(prec), zabs = z[i].abs(), zp(1.0, prec);
    for (std::size_t k = 0; k < a.size(); ++k) {
      mag += a[k].abs() * zp;
      zp *= zabs;
    }
    Real num = p.abs() + mag * unit * Real(static_cast<double>(4 * n + 4), prec);
    Real den = lead_abs;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) den *= (z[i] - z[j]).abs();
    Real r(prec);
    if (den.is_zero()) {
      mpfr_set_inf(r.get(), 1);
    } else {
      r = Real(static_cast<double>(n), prec) * num / den;
    }
    res.roots.push_back({z[i], r});
  }
  return res;
}

bool disks_overlap(const NumericRoot& a, const NumericRoot& b) {
  return (a.z - b.z).abs() <= a.radius + b.radius;
}

}  // namespace

std::vector<NumericRoot> numeric_roots(const std::vector<Complex>& coeffs, const RootOptions& opt) {
  mpfr_prec_t prec = opt.prec;
  for (int attempt = 0; attempt < (opt.escalate ? 2 : 1); ++attempt, prec *= 2) {
    const std::size_t n = coeffs.size();
    AberthResult r = aberth(coeffs, prec, opt.seed, 100 + 10 * static_cast<int>(n));
    if (!r.converged) continue;
    bool separated = true;
    for (std::size_t i = 0; i < r.roots.size() && separated; ++i)
      for (std::size_t j = i + 1; j < r.roots.size(); ++j)
        if (disks_overlap(r.roots[i], r.roots[j])) {
          separated = false;
          break;
        }
    if (!separated) continue;
    std::sort(r.roots.begin(), r.roots.end(), [](const NumericRoot& x, const NumericRoot& y) {
      const int c = x.z.re.cmp(y.z.re);
      return c != 0 ? c < 0 : x.z.im < y.z.im;
    });
    return std::move(r.roots);
  }
  raise(ErrorCode::kIndeterminate,
        "numeric root refinement did not converge to separated roots (polynomial not squarefree?)");
}

std::vector<NumericRoot> numeric_roots(const UPoly& f, const RootOptions& opt) {
  const Embedding e(common_field(f), opt.prec * 2);
  return numeric_roots(e.coeffs(f), opt);
}

std::vector<RootCluster> numeric_fibers(const std::vector<Complex>& num, const std::vector<Complex>& den,
                                        const Complex& value, const RootOptions& opt) {
  mpfr_prec_t prec = opt.prec;
  for (int attempt = 0; attempt < (opt.escalate ? 2 : 1); ++attempt, prec *= 2) {
    std::vector<Complex> f(std::max(num.size(), den.size()), Complex(prec));
    for (std::size_t k = 0; k < num.size(); ++k) f[k] += num[k];
    for (std::size_t k = 0; k < den.size(); ++k) f[k] -= value * den[k];
    AberthResult r = aberth(f, prec, opt.seed, 600 + 10 * static_cast<int>(f.size()));
    auto& roots = r.roots;
    std::sort(roots.begin(), roots.end(), [](const NumericRoot& x, const NumericRoot& y) {
      const int c = x.z.re.cmp(y.z.re);
      return c != 0 ? c < 0 : x.z.im < y.z.im;
    });
    // Union-find over overlapping disks.
    std::vector<std::size_t> parent(roots.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        if (disks_overlap(roots[i], roots[j])) parent[find(j)] = find(i);
    std::vector<RootCluster> clusters;
    std::vector<std::size_t> rep_of(roots.size(), SIZE_MAX);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const std::size_t rep = find(i);
      if (rep_of[rep] == SIZE_MAX) {
        rep_of[rep] = members.size();
        members.emplace_back();
      }
      members[rep_of[rep]].push_back(i);
    }
    bool ambiguous = false;
    for (const auto& mem : members) {
      const auto k = static_cast<unsigned>(mem.size());
      Complex c(prec);
      for (auto i : mem) c += roots[i].z;
      c /= Complex(Real(static_cast<double>(k), prec), Real(prec));
      Real rad(prec);
      for (auto i : mem) rad = Real::max(rad, (roots[i].z - c).abs() + roots[i].radius);
      // A genuine k-fold root spreads to about 2^(-prec/k).
      const Real limit = Real::exp2(-static_cast<long>(prec) / static_cast<long>(k + 1), prec) *
                         Real::max(Real(1.0, prec), c.abs());
      if (k > 1 && rad > limit) ambiguous = true;
      if (k == 1 && !r.converged && rad > limit) ambiguous = true;
      clusters.push_back({c, rad, k});
    }
    if (ambiguous) continue;
    return clusters;
  }
  raise(ErrorCode::kIndeterminate, "ambiguous root clustering after precision escalation");
}

// --- Embedding ---------------------------------------------------------------

FieldPtr common_field(const UPoly& c) {
  FieldPtr f;
  for (const auto& v : c.coeffs()) {
    ensure(v.is_constant(), ErrorCode::kExactUnsupported,
           "numeric evaluation needs parameter-free coefficients");
    const Algebraic a = v.constant_value();
    if (a.field()) f = a.field();
  }
  return f;
}

Embedding::Embedding(const FieldPtr& field, mpfr_prec_t prec) : field_(field), prec_(prec) {
  if (!field_) return;
  std::vector<Complex> mp;
  for (const auto& q : field_->minpoly()) mp.emplace_back(Real(q, prec), Real(prec));
  RootOptions opt;
  opt.prec = prec;
  auto roots = numeric_roots(mp, opt);
  std::size_t best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    const int c = roots[i].z.re.cmp(roots[best].z.re);
    // Real parts equal up to rounding count as a tie.
    const Real gap = Real::abs(roots[i].z.re - roots[best].z.re);
    const bool tie = gap <= roots[i].radius + roots[best].radius;
    if ((tie && roots[i].z.im > roots[best].z.im) || (!tie && c > 0)) best = i;
  }
  theta_powers_.emplace_back(Real(1.0, prec), Real(prec));
  for (int k = 1; k < field_->degree(); ++k) theta_powers_.push_back(theta_powers_.back() * roots[best].z);
}

Complex Embedding::operator()(const Algebraic& a) const {
  if (a.is_rational()) return Complex(Real(a.rational(), prec_), Real(prec_));
  ensure(same_field(a.field(), field_), ErrorCode::kInternal, "embedding of a foreign number field");
  const auto c = a.coeffs();
  Complex r(prec_);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    Complex t = theta_powers_[k];
    const Real q(c[k], prec_);
    t.re *= q;
    t.im *= q;
    r += t;
  }
  return r;
}

std::vector<Complex> Embedding::coeffs(const UPoly& c) const {
  std::vector<Complex> out;
  out.reserve(c.coeffs().size());
  for (const auto& f : c.coeffs()) {
    ensure(f.is_constant(), ErrorCode::kExactUnsupported, "numeric evaluation needs parameter-free coefficients");
    out.push_back((*this)(f.constant_value()));
  }
  return out;
}

std::vector<mpq_class> rational_roots(const UPoly& f, const RootOptions& opt) {
  ensure(!f.is_zero(), ErrorCode::kInput, "rational roots of the zero polynomial");
  std::vector<mpq_class> out;
  if (f.degree() < 1) return out;
  const UPoly sq = quo(f, gcd(f, f.derivative())).monic();
  auto accept = [&](const mpq_class& r) {
    if (!sq.eval(Frac(Algebraic(r))).is_zero()) return false;
    out.push_back(r);
    return true;
  };
  if (sq.degree() == 1) {
    const Algebraic r = -sq.coeff(0).constant_value();
    if (r.is_rational()) out.push_back(r.rational());
    return out;
  }
  const mpfr_prec_t prec = opt.prec;
  const Real slack = Real::exp2(-static_cast<long>(prec) / 2, prec);
  const mpz_class qmax = mpz_class(1) << static_cast<unsigned long>(prec / 4);
  for (const auto& root : numeric_roots(sq, opt)) {
    const Real scale = Real::max(Real(1.0, prec), Real::abs(root.z.re));
    if (Real::abs(root.z.im) > root.radius + slack * scale) continue;
    mpq_class x, tol;
    mpfr_get_q(x.get_mpq_t(), root.z.re.get());
    mpfr_get_q(tol.get_mpq_t(), (root.radius + slack * scale).get());
    // Convergents h/k of the continued fraction of x.
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    mpq_class rest = x;
    for (int step = 0; step < 4 * static_cast<int>(prec); ++step) {
      mpz_class a;
      mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
      const mpz_class h2 = a * h0 + h1, k2 = a * k0 + k1;
      h1 = h0;
      h0 = h2;
      k1 = k0;
      k0 = k2;
      if (k0 > qmax) break;
      mpq_class c(h0, k0);
      c.canonicalize();
      if (abs(x - c) <= tol && accept(c)) break;
      rest -= a;
      if (rest == 0) break;
      rest = 1 / rest;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace webcurv
