#include "webcurv/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "webcurv/error.hpp"
#include "webcurv/parse.hpp"

namespace webcurv {
namespace {

const MPoly kXs = MPoly::var("x");
const MPoly kYs = MPoly::var("y");

MPoly as_poly(const Frac& f, const char* what) {
  if (!f.is_polynomial()) raise(ErrorCode::kInput, std::string(what) + " must be polynomial in the parameters");
  return f.num().scaled(f.den().constant_value().inverse());
}

// Total degree in x and y only, parameters excluded.
unsigned xy_degree(const MPoly& f) {
  int ix = -1, iy = -1;
  for (std::size_t k = 0; k < f.vars().size(); ++k) {
    if (f.vars()[k] == "x") ix = static_cast<int>(k);
    if (f.vars()[k] == "y") iy = static_cast<int>(k);
  }
  unsigned best = 0;
  for (const auto& t : f.terms()) {
    unsigned s = 0;
    if (ix >= 0) s += t.exp[ix];
    if (iy >= 0) s += t.exp[iy];
    best = std::max(best, s);
  }
  return best;
}

void check_symbols(const MPoly& f, const char* what) {
  for (const auto& v : f.vars())
    if (is_variable_symbol(v) && v != "x" && v != "y")
      raise(ErrorCode::kInput, std::string(what) + " may only use the variables x and y, found " + v);
}

// Validates a homogeneous coprime pair and returns its degree.
unsigned check_pair(const MPoly& A, const MPoly& B) {
  check_symbols(A, "A");
  check_symbols(B, "B");
  ensure(!A.is_zero() && !B.is_zero(), ErrorCode::kInput, "A and B must both be nonzero");
  const unsigned d = xy_degree(A);
  ensure(d >= 1, ErrorCode::kInput, "the degree must be at least 1");
  ensure(xy_degree(B) == d, ErrorCode::kInput, "A and B must have the same degree");
  ensure(euler_residual(A, d).is_zero(), ErrorCode::kInput, "A is not homogeneous");
  ensure(euler_residual(B, d).is_zero(), ErrorCode::kInput, "B is not homogeneous");
  // A common homogeneous factor either survives y = 1 or is a power of y.
  const MPoly g = gcd(A.substitute("y", MPoly(1)), B.substitute("y", MPoly(1)));
  ensure(!g.has_var("x"), ErrorCode::kInput, "A and B have a common factor");
  ensure(!(A.substitute("y", MPoly(0)).is_zero() && B.substitute("y", MPoly(0)).is_zero()), ErrorCode::kInput,
         "A and B have the common factor y");
  return d;
}

MPoly swap_xy(const MPoly& f) { return f.rename({{"x", "y"}, {"y", "x"}}); }

// g(z, 1).
UPoly dehomogenize_y(const MPoly& f) { return UPoly::from_mpoly(f.substitute("y", MPoly(1)), "x"); }

// f(x0, y0) for constant x0, y0.
Frac eval_at(const MPoly& f, const Frac& x0, const Frac& y0) {
  return Frac(f).substitute({{"x", x0}, {"y", y0}});
}

UPoly zpoly() { return UPoly::monomial(1, Frac(1)); }

// The dehomogenized Gauss map data of a foliation: slope(z) = -a(z)/b(z).
struct Parts {
  UPoly a, b;
  unsigned d;
};

Parts parts_of(const HomogeneousFoliation& h) { return {dehomogenize(h.A), dehomogenize(h.B), h.d}; }

PValue value_at_infinity(const Parts& p) {
  const Frac bd = p.b.coeff(static_cast<int>(p.d));
  if (bd.is_zero()) return PValue::inf();
  return PValue::of(-p.a.coeff(static_cast<int>(p.d)) / bd);
}

UPoly fiber_poly(const Parts& p, const PValue& p0) {
  if (p0.infinite) return p.b;
  return p.a + p.b.scaled(p0.value);
}

FieldPtr field_of(const MPoly& f) {
  for (const auto& t : f.terms())
    if (t.coeff.field()) return t.coeff.field();
  return nullptr;
}

FieldPtr field_of(const HomogeneousFoliation& h) {
  FieldPtr f = field_of(h.A);
  return f ? f : field_of(h.B);
}

void ensure_numeric_ok(const HomogeneousFoliation& h) {
  for (const auto* f : {&h.A, &h.B})
    for (const auto& v : f->vars())
      if (!is_variable_symbol(v))
        raise(ErrorCode::kExactUnsupported, "numeric evaluation needs values for the parameter " + v);
}

// Parts far below the printed precision relative to |c| are shown as 0, so
// that a numerically real value does not print as "1e-76 + 2*i".
std::string complex_str(const Complex& c, int digits = 20) {
  const Real cutoff = c.abs() * Real::exp10(-(digits + 5), c.re.prec());
  const bool re_zero = c.re.is_zero() || Real::abs(c.re) < cutoff;
  const bool im_zero = c.im.is_zero() || Real::abs(c.im) < cutoff;
  if (re_zero && !im_zero) return (c.im.sign() < 0 ? "-" : "") + Real::abs(c.im).str(digits) + "*i";
  std::string s = re_zero ? std::string("0") : c.re.str(digits);
  if (im_zero) return s;
  const bool neg = c.im.sign() < 0;
  return s + (neg ? " - " : " + ") + Real::abs(c.im).str(digits) + "*i";
}

Complex embed_frac(const Embedding& e, const Frac& f) {
  ensure(f.is_constant(), ErrorCode::kExactUnsupported, "numeric evaluation needs parameter-free values");
  return e(f.constant_value());
}

std::vector<Complex> derivative(const std::vector<Complex>& c) {
  std::vector<Complex> r;
  for (std::size_t k = 1; k < c.size(); ++k) {
    Complex t = c[k];
    const Real s(static_cast<double>(k), c[k].prec());
    t.re *= s;
    t.im *= s;
    r.push_back(t);
  }
  return r;
}

// Newton on the (nu-1)-th derivative, where a nu-fold root is simple.
Complex refine_multiple_root(const std::vector<Complex>& c, Complex z, unsigned nu) {
  std::vector<Complex> f = c;
  for (unsigned k = 1; k < nu; ++k) f = derivative(f);
  const std::vector<Complex> df = derivative(f);
  const mpfr_prec_t prec = z.prec();
  const Real eps = Real::exp2(-static_cast<long>(prec) + 8, prec);
  for (int it = 0; it < 60; ++it) {
    const Complex d = horner(df, z);
    if (d.is_zero()) break;
    const Complex step = horner(f, z) / d;
    z -= step;
    if (step.abs() <= eps * Real::max(Real(1.0, prec), z.abs())) break;
  }
  return z;
}

// Dehomogenized partial derivatives of A and B, evaluated numerically.
struct NumericPartials {
  std::vector<Complex> a, b, ax, ay, bx, by;
  NumericPartials(const HomogeneousFoliation& h, const Embedding& e)
      : a(e.coeffs(dehomogenize(h.A))),
        b(e.coeffs(dehomogenize(h.B))),
        ax(e.coeffs(dehomogenize(h.A.derivative("x")))),
        ay(e.coeffs(dehomogenize(h.A.derivative("y")))),
        bx(e.coeffs(dehomogenize(h.B.derivative("x")))),
        by(e.coeffs(dehomogenize(h.B.derivative("y")))) {}
};

struct NumPoint {
  Complex r;
  unsigned nu;
};

// The criterion sum with every fiber direction finite, written [1 : r_i]:
//   sum (1 - 1/nu_i) (p0 - r_i) Q_i(1, r_i) / (P_i(1, r_i) B(1, r_i)),
// P_i = B(1, r_i) c prod_{j != i} (y - r_j x)^nu_j.
Complex printed_sum(const NumericPartials& np, const Complex& p0, const Complex& c, const std::vector<NumPoint>& pts,
                    mpfr_prec_t prec) {
  Complex total(prec);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const unsigned nu = pts[i].nu;
    if (nu < 2) continue;
    const Complex& r = pts[i].r;
    const Complex B = horner(np.b, r), A = horner(np.a, r);
    Complex prod = B * c, sy(prec), sx(prec);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      const Complex diff = r - pts[j].r;
      for (unsigned k = 0; k < pts[j].nu; ++k) prod *= diff;
      const Complex w = Complex(Real(static_cast<double>(pts[j].nu), prec), Real(prec)) / diff;
      sy += w;
      sx -= w * pts[j].r;
    }
    const Complex P = prod, Py = prod * sy, Px = prod * sx;
    const Complex curl = horner(np.bx, r) - horner(np.ay, r);
    const Real k1(static_cast<double>(nu) - 2.0, prec), k2(2.0 * (nu + 1.0), prec);
    Complex Q = curl * P;
    Q.re *= k1;
    Q.im *= k1;
    Complex det = Px * B - Py * A;
    det.re *= k2;
    det.im *= k2;
    Q += det;
    Complex term = (p0 - r) * Q / (P * B);
    const Real w(mpq_class(nu - 1, nu), prec);
    term.re *= w;
    term.im *= w;
    total += term;
  }
  return total;
}

// Certifies a numeric value against the zero tolerance; returns nullopt in
// the gray zone.
std::optional<bool> certify(const Complex& s, const Real& tol) {
  const Real a = s.abs();
  if (a < tol) return true;
  const Real ten(10.0, tol.prec());
  if (a > tol * ten) return false;
  return std::nullopt;
}

template <class Eval>
CriterionValue numeric_certified(const AnalysisOptions& opt, Eval eval) {
  mpfr_prec_t prec = opt.prec;
  for (int attempt = 0; attempt < 2; ++attempt, prec *= 2) {
    const Complex s = eval(prec);
    const Real tol = zero_tolerance(opt, prec);
    const auto z = certify(s, tol);
    if (!z) continue;
    CriterionValue v;
    v.mode = Mode::kNumeric;
    v.numeric = s;
    v.tolerance = tol;
    v.prec = prec;
    v.zero = *z;
    return v;
  }
  raise(ErrorCode::kIndeterminate, "criterion value stays in the gray zone after precision escalation");
}

bool frac_less(const Frac& a, const Frac& b) {
  const bool ra = a.is_constant() && a.constant_value().is_rational();
  const bool rb = b.is_constant() && b.constant_value().is_rational();
  if (ra != rb) return ra;
  if (ra) return a.constant_value().rational() < b.constant_value().rational();
  return a.str() < b.str();
}

bool record_less(const CriticalValueRecord& x, const CriticalValueRecord& y) {
  if (x.numeric != y.numeric) return !x.numeric;
  if (x.numeric) {
    const int c = x.numeric_value->re.cmp(y.numeric_value->re);
    return c != 0 ? c < 0 : x.numeric_value->im < y.numeric_value->im;
  }
  if (x.value.infinite != y.value.infinite) return !x.value.infinite;
  if (x.value.infinite) return false;
  return frac_less(x.value.value, y.value.value);
}

// Characteristic polynomial of multiplication by g in K[z]/(m).
UPoly char_poly(const ResidueRing& ring, const UPoly& g) {
  const int n = ring.degree();
  std::vector<Frac> p(n + 1), e(n + 1);
  UPoly power(Frac(1));
  for (int k = 1; k <= n; ++k) {
    power = ring.mul(power, g);
    p[k] = ring.trace(power);
  }
  e[0] = Frac(1);
  for (int k = 1; k <= n; ++k) {
    Frac s;
    for (int i = 1; i <= k; ++i) s += (i % 2 == 1 ? Frac(1) : Frac(-1)) * e[k - i] * p[i];
    e[k] = s / Frac(k);
  }
  std::vector<Frac> c(n + 1);
  for (int k = 0; k <= n; ++k) c[n - k] = (k % 2 == 0 ? e[k] : -e[k]);
  return UPoly(std::move(c));
}

}  // namespace

std::string PValue::str() const { return infinite ? "inf" : value.str(); }

// --- maps and foliations -----------------------------------------------------

Frac RationalSphereMap::dehomogenized() const {
  return Frac(A.substitute("y", MPoly(1)).rename({{"x", "z"}}), B.substitute("y", MPoly(1)).rename({{"x", "z"}}));
}

RationalSphereMap make_map(const MPoly& A, const MPoly& B) { return {A, B, check_pair(A, B)}; }

bool same_map(const RationalSphereMap& f, const RationalSphereMap& g) {
  return f.d == g.d && f.A * g.B == g.A * f.B;
}

HomogeneousFoliation make_foliation(const MPoly& A, const MPoly& B) { return {A, B, check_pair(A, B)}; }

HomogeneousFoliation associated_foliation(const RationalSphereMap& f) { return {swap_xy(f.A), -swap_xy(f.B), f.d}; }

RationalSphereMap gauss_map(const HomogeneousFoliation& h) { return {swap_xy(h.A), -swap_xy(h.B), h.d}; }

PValue Mobius::apply(const PValue& v) const {
  if (v.infinite) return c.is_zero() ? PValue::inf() : PValue::of(a / c);
  const Frac den = c * v.value + e;
  if (den.is_zero()) return PValue::inf();
  return PValue::of((a * v.value + b) / den);
}

RationalSphereMap postcompose(const RationalSphereMap& f, const Mobius& h) {
  ensure(!(h.a * h.e - h.b * h.c).is_zero(), ErrorCode::kInput, "singular Moebius transformation");
  const MPoly a = as_poly(h.a, "Moebius coefficient"), b = as_poly(h.b, "Moebius coefficient");
  const MPoly c = as_poly(h.c, "Moebius coefficient"), e = as_poly(h.e, "Moebius coefficient");
  return {a * f.A + b * f.B, c * f.A + e * f.B, f.d};
}

HomogeneousFoliation linear_conjugate(const HomogeneousFoliation& h, const LinearMap& m) {
  ensure(!(m.m00 * m.m11 - m.m01 * m.m10).is_zero(), ErrorCode::kInput, "singular linear map");
  const MPoly a = as_poly(m.m00, "matrix entry"), b = as_poly(m.m01, "matrix entry");
  const MPoly c = as_poly(m.m10, "matrix entry"), e = as_poly(m.m11, "matrix entry");
  const std::map<Symbol, MPoly> sub{{"x", a * kXs + b * kYs}, {"y", c * kXs + e * kYs}};
  const MPoly A = h.A.substitute(sub), B = h.B.substitute(sub);
  return {a * A + c * B, b * A + e * B, h.d};
}

PValue induced_value(const LinearMap& m, const PValue& p0) {
  if (p0.infinite) return m.m01.is_zero() ? PValue::inf() : PValue::of(-m.m00 / m.m01);
  const Frac den = m.m11 - m.m01 * p0.value;
  if (den.is_zero()) return PValue::inf();
  return PValue::of((m.m00 * p0.value - m.m10) / den);
}

UPoly dehomogenize(const MPoly& f) { return UPoly::from_mpoly(f.substitute("x", MPoly(1)), "y"); }

const char* mode_name(Mode m) { return m == Mode::kExact ? "exact" : "numeric"; }

Real zero_tolerance(const AnalysisOptions& opt, mpfr_prec_t prec) {
  const long cap = static_cast<long>(std::floor(0.15 * static_cast<double>(prec)));
  return Real::exp10(-std::min<long>(opt.tol_exp, cap), prec);
}

// --- fibers ------------------------------------------------------------------

std::string CriticalValueRecord::label() const { return numeric ? complex_str(*numeric_value) : value.str(); }

bool CriticalValueRecord::has_nonfixed_critical() const {
  for (const auto& c : classes)
    if (c.nu >= 2 && !c.fixed) return true;
  for (const auto& p : points)
    if (p.nu >= 2 && !p.fixed) return true;
  return nu_infinity >= 2 && !infinity_fixed;
}

std::optional<unsigned> CriticalValueRecord::uniform_nu() const {
  std::optional<unsigned> nu;
  auto see = [&](unsigned v) {
    if (!nu) nu = v;
    return *nu == v;
  };
  bool ok = true;
  for (const auto& c : classes) ok = see(c.nu) && ok;
  for (const auto& p : points) ok = see(p.nu) && ok;
  if (nu_infinity > 0) ok = see(nu_infinity) && ok;
  return ok ? nu : std::nullopt;
}

unsigned CriticalValueRecord::degree() const {
  unsigned s = nu_infinity;
  for (const auto& c : classes) s += c.nu * c.count();
  for (const auto& p : points) s += p.nu;
  return s;
}

unsigned CriticalValueRecord::critical_points() const {
  unsigned n = nu_infinity >= 2 ? 1 : 0;
  for (const auto& c : classes)
    if (c.nu >= 2) n += c.count();
  for (const auto& p : points)
    if (p.nu >= 2) ++n;
  return n;
}

CriticalValueRecord fiber_record(const HomogeneousFoliation& h, const PValue& p0) {
  const Parts parts = parts_of(h);
  const UPoly C = fiber_poly(parts, p0);
  ensure(!C.is_zero(), ErrorCode::kInternal, "fiber polynomial vanishes identically");
  CriticalValueRecord rec;
  rec.value = p0;
  rec.lead = C.lead();
  rec.nu_infinity = h.d - C.degree();
  rec.infinity_fixed = rec.nu_infinity > 0 && p0.infinite;
  const UPoly fixed_poly = parts.a + zpoly() * parts.b;
  for (const auto& rc : root_classes(C).classes) {
    const UPoly g = gcd(rc.m, rem(fixed_poly, rc.m));
    if (g.degree() >= 1) rec.classes.push_back({g, rc.nu, true});
    const UPoly rest = quo(rc.m, g);
    if (rest.degree() >= 1) rec.classes.push_back({rest.monic(), rc.nu, false});
  }
  ensure(rec.degree() == h.d, ErrorCode::kInternal, "fiber multiplicities do not add up to the degree");
  return rec;
}

std::vector<CriticalValueRecord> critical_fibers(const HomogeneousFoliation& h, const AnalysisOptions& opt) {
  const Parts parts = parts_of(h);
  const UPoly W = parts.b * parts.a.derivative() - parts.a * parts.b.derivative();
  ensure(!W.is_zero(), ErrorCode::kInternal, "constant Gauss map");
  std::vector<PValue> values;
  auto add = [&](const PValue& v) {
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  };
  if (static_cast<int>(2 * h.d - 2) > W.degree()) add(value_at_infinity(parts));

  std::vector<std::pair<UPoly, UPoly>> pending;  // (class, slope residue)
  if (W.degree() >= 1) {
    for (const auto& sf : squarefree(W)) {
      UPoly m = sf.factor;
      const UPoly at_inf = gcd(m, rem(parts.b, m));
      if (at_inf.degree() >= 1) {
        add(PValue::inf());
        m = quo(m, at_inf).monic();
      }
      if (m.degree() < 1) continue;
      const ResidueRing ring(m);
      const UPoly g = ring.mul(ring.reduce(-parts.a), ring.inverse(ring.reduce(parts.b)));
      if (g.degree() <= 0)
        add(PValue::of(g.coeff(0)));
      else
        pending.emplace_back(m, g);
    }
  }

  std::vector<UPoly> unresolved;
  for (auto& [m0, g] : pending) {
    UPoly m = m0;
    std::vector<PValue> candidates = values;
    try {
      for (const auto& r : rational_roots(char_poly(ResidueRing(m), g), {opt.prec, opt.seed, true}))
        candidates.push_back(PValue::of(Frac(Algebraic(r))));
    } catch (const Error&) {
      // Parameters or irrational values: only the known values are tried.
    }
    for (const auto& v : candidates) {
      if (v.infinite || m.degree() < 1) continue;
      const UPoly piece = gcd(m, rem(fiber_poly(parts, v), m));
      if (piece.degree() < 1) continue;
      add(v);
      m = quo(m, piece).monic();
    }
    if (m.degree() >= 1) unresolved.push_back(m);
  }

  std::vector<CriticalValueRecord> out;
  for (const auto& v : values) out.push_back(fiber_record(h, v));

  if (!unresolved.empty()) {
    if (opt.mode == Mode::kExact)
      raise(ErrorCode::kExactUnsupported,
            "a critical value lies outside the coefficient field; numeric mode can handle it");
    ensure_numeric_ok(h);
    const Embedding emb(field_of(h), opt.prec);
    const NumericPartials np(h, emb);
    RootOptions ro{opt.prec, opt.seed, true};
    const Real same = Real::exp2(-static_cast<long>(opt.prec) / 2, opt.prec);
    std::vector<Complex> seen;
    for (const auto& m : unresolved) {
      for (const auto& root : numeric_roots(emb.coeffs(m), ro)) {
        const Complex v = -horner(np.a, root.z) / horner(np.b, root.z);
        bool dup = false;
        for (const auto& s : seen)
          if ((s - v).abs() <= same * Real::max(Real(1.0, opt.prec), v.abs())) dup = true;
        if (dup) continue;
        seen.push_back(v);
        CriticalValueRecord rec;
        rec.numeric = true;
        rec.numeric_value = v;
        std::vector<Complex> num;
        for (const auto& c : np.a) num.push_back(-c);
        std::vector<Complex> fib(std::max(np.a.size(), np.b.size()), Complex(opt.prec));
        for (std::size_t k = 0; k < np.a.size(); ++k) fib[k] += np.a[k];
        for (std::size_t k = 0; k < np.b.size(); ++k) fib[k] += v * np.b[k];
        for (const auto& cl : numeric_fibers(num, np.b, v, ro)) {
          const Complex z = refine_multiple_root(fib, cl.center, cl.multiplicity);
          const bool fixed = (z - v).abs() <= same * Real::max(Real(1.0, opt.prec), v.abs());
          rec.points.push_back({z, cl.multiplicity, fixed});
        }
        ensure(rec.degree() == h.d, ErrorCode::kIndeterminate, "numeric fiber does not have d points");
        out.push_back(std::move(rec));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), record_less);
  return out;
}

// --- Legendre transform --------------------------------------------------------

MPoly legendre_polynomial(const HomogeneousFoliation& h) {
  const MPoly x = MPoly::var("x"), p = MPoly::var("p"), q = MPoly::var("q");
  const std::map<Symbol, MPoly> sub{{"x", x}, {"y", p * x - q}};
  return h.A.substitute(sub) + p * h.B.substitute(sub);
}

ImplicitWeb legendre(const HomogeneousFoliation& h) {
  return make_web(legendre_polynomial(h).rename({{"p", "x"}, {"q", "y"}, {"x", "p"}}));
}

ImplicitWeb normalized_legendre(const HomogeneousFoliation& h, const Frac& p0) {
  const MPoly c0 = as_poly(p0, "the critical value");
  const Parts parts = parts_of(h);
  ensure(fiber_poly(parts, PValue::of(p0)).degree() == static_cast<int>(h.d), ErrorCode::kInput,
         "the vertical direction lies in the fiber; apply the delta shift first");
  const MPoly t = kYs + c0 - MPoly::var("p") * kXs;
  const std::map<Symbol, MPoly> sub{{"x", MPoly(1)}, {"y", t}};
  const MPoly Bt = h.B.substitute(sub);
  return make_web(kYs * Bt + h.A.substitute(sub) + c0 * Bt);
}

DeltaShift delta_shift(const HomogeneousFoliation& h, const Frac& p0) {
  for (unsigned delta = 0; delta <= 2 * h.d + 2; ++delta) {
    const Frac den = Frac(1) - Frac(static_cast<long>(delta)) * p0;
    if (den.is_zero()) continue;
    HomogeneousFoliation g = delta == 0 ? h : linear_conjugate(h, {1, static_cast<long>(delta), 0, 1});
    const Frac q0 = p0 / den;
    if (fiber_poly(parts_of(g), PValue::of(q0)).degree() == static_cast<int>(h.d)) return {std::move(g), delta, q0};
  }
  raise(ErrorCode::kInternal, "no admissible shift found");
}

ComponentChart component_chart(const HomogeneousFoliation& h, const PValue& p0) {
  ComponentChart ch;
  HomogeneousFoliation base = h;
  Frac v = p0.value;
  if (p0.infinite) {
    base = linear_conjugate(h, {0, 1, 1, 0});
    v = Frac();
    ch.swapped = true;
  }
  DeltaShift ds = delta_shift(base, v);
  ch.h = std::move(ds.h);
  ch.q0 = ds.q0;
  ch.delta = ds.delta;
  return ch;
}

// --- criterion sum -------------------------------------------------------------

namespace {

Frac exact_sum(const ComponentChart& ch) {
  const Parts parts = parts_of(ch.h);
  const UPoly C = parts.a + parts.b.scaled(ch.q0);
  const UPoly db = parts.b.derivative();
  const long d = ch.h.d;
  Frac S;
  for (const auto& rc : root_classes(C).classes) {
    if (rc.nu < 2) continue;
    const ResidueRing ring(rc.m);
    const long nu = rc.nu;
    const auto taylor = local_taylor(C, rc, rc.nu + 1);
    const UPoly ratio = ring.mul(taylor[nu + 1], ring.inverse(taylor[nu]));
    const UPoly w = ring.reduce(UPoly(ch.q0) - zpoly());
    const UPoly log_b = ring.mul(ring.reduce(db), ring.inverse(ring.reduce(parts.b)));
    const UPoly t1 = (UPoly(Frac(d)) + ring.mul(w, log_b)).scaled(Frac(nu - 2));
    const UPoly t2 = (UPoly(Frac(d - nu)) + ring.mul(w, ratio)).scaled(Frac(2 * (nu + 1)));
    const UPoly psi = (t1 + t2).scaled(Frac(1) / Frac(nu));
    S += Frac(nu - 1) * ring.trace(ring.mul(w, psi));
  }
  return S;
}

Complex numeric_sum_exact_value(const ComponentChart& ch, mpfr_prec_t prec, std::uint64_t seed) {
  const Embedding emb(field_of(ch.h), prec);
  const NumericPartials np(ch.h, emb);
  const Parts parts = parts_of(ch.h);
  const UPoly C = parts.a + parts.b.scaled(ch.q0);
  std::vector<NumPoint> pts;
  RootOptions ro{prec, seed, true};
  for (const auto& rc : root_classes(C).classes)
    for (const auto& r : numeric_roots(emb.coeffs(rc.m), ro)) pts.push_back({r.z, rc.nu});
  return printed_sum(np, embed_frac(emb, ch.q0), embed_frac(emb, C.lead()), pts, prec);
}

}  // namespace

CriterionValue theorem3_sum(const HomogeneousFoliation& h, const PValue& p0, const AnalysisOptions& opt) {
  ensure(h.d >= 3, ErrorCode::kInput, "the criterion needs degree at least 3");
  const ComponentChart ch = component_chart(h, p0);
  CriterionValue v;
  if (opt.mode == Mode::kExact) {
    v.exact = exact_sum(ch);
    v.zero = v.exact->is_zero();
  } else {
    ensure_numeric_ok(h);
    v = numeric_certified(opt, [&](mpfr_prec_t prec) { return numeric_sum_exact_value(ch, prec, opt.seed); });
  }
  v.swapped = ch.swapped;
  v.delta = ch.delta;
  return v;
}

CriterionValue theorem3_sum_numeric(const HomogeneousFoliation& h, const Complex& p0, const AnalysisOptions& opt) {
  ensure(h.d >= 3, ErrorCode::kInput, "the criterion needs degree at least 3");
  ensure_numeric_ok(h);
  return numeric_certified(opt, [&](mpfr_prec_t prec) {
    const Embedding emb(field_of(h), prec);
    const NumericPartials np(h, emb);
    Complex v(Real(p0.re), Real(p0.im));
    v.re = Real(mpq_class(0), prec) + p0.re;
    v.im = Real(mpq_class(0), prec) + p0.im;
    std::vector<Complex> num;
    for (const auto& c : np.a) num.push_back(-c);
    std::vector<Complex> fib(std::max(np.a.size(), np.b.size()), Complex(prec));
    for (std::size_t k = 0; k < np.a.size(); ++k) fib[k] += np.a[k];
    for (std::size_t k = 0; k < np.b.size(); ++k) fib[k] += v * np.b[k];
    ensure(fib.size() == h.d + 1 && !fib.back().is_zero(), ErrorCode::kInternal,
           "a numeric critical value with the vertical direction in its fiber");
    std::vector<NumPoint> pts;
    RootOptions ro{prec, opt.seed, true};
    for (const auto& cl : numeric_fibers(num, np.b, v, ro))
      pts.push_back({refine_multiple_root(fib, cl.center, cl.multiplicity), cl.multiplicity});
    return printed_sum(np, v, fib.back(), pts, prec);
  });
}

// --- shortcuts ---------------------------------------------------------------------

Remark33Result remark33_shortcut(const HomogeneousFoliation& h, const PValue& p0) {
  HomogeneousFoliation g = h;
  Frac q0 = p0.value;
  if (p0.infinite) {
    g = linear_conjugate(h, {0, 1, 1, 0});
    q0 = Frac();
  }
  const CriticalValueRecord rec = fiber_record(g, PValue::of(q0));
  const auto nu = rec.uniform_nu();
  ensure(nu.has_value(), ErrorCode::kInput, "the fiber is not uniformly ramified");
  ensure(*nu >= 3, ErrorCode::kInput, "uniform index 2 is always holomorphic; the shortcut needs nu >= 3");
  const MPoly curl = g.B.derivative("x") - g.A.derivative("y");
  const UPoly curl_z = dehomogenize(curl), b = dehomogenize(g.B);
  Remark33Result out;
  out.nu = *nu;
  int nonfixed = 0;
  std::optional<Frac> lone;  // the single non-fixed direction, if finite
  bool lone_inf = false;
  for (const auto& c : rec.classes) {
    const ResidueRing ring(c.m);
    const UPoly w = ring.reduce(UPoly(q0) - zpoly());
    out.sum += ring.trace(ring.mul(ring.mul(w, ring.reduce(curl_z)), ring.inverse(ring.reduce(b))));
    if (!c.fixed) {
      nonfixed += c.count();
      if (c.count() == 1) lone = -c.m.coeff(0);
    }
  }
  if (rec.nu_infinity > 0) {
    // Direction x = 0, represented by (x, y) = (0, 1).
    out.sum -= eval_at(curl, 0, 1) / eval_at(g.B, 0, 1);
    if (!rec.infinity_fixed) {
      ++nonfixed;
      lone_inf = true;
    }
  }
  out.holomorphic = out.sum.is_zero();
  if (nonfixed == 1) {
    if (lone_inf)
      out.restriction = Frac(curl).substitute("x", Frac(0));
    else
      out.restriction = Frac(curl).substitute("y", *lone * Frac::var("x"));
    ensure(out.restriction->is_zero() == out.holomorphic, ErrorCode::kInternal,
           "restriction of d(omega) disagrees with the sum");
  }
  return out;
}

Corollary37Result corollary37_check(const HomogeneousFoliation& h, const Frac& a, const Frac& b, unsigned nu) {
  ensure(nu >= 2, ErrorCode::kInput, "an inflection line needs nu >= 2");
  ensure(!(a.is_zero() && b.is_zero()), ErrorCode::kInput, "degenerate line");
  const MPoly am = as_poly(a, "line coefficient"), bm = as_poly(b, "line coefficient");
  // The direction [-a : b] is the point (x, y) = (b, -a).
  const Frac Ab = eval_at(h.A, b, -a), Bb = eval_at(h.B, b, -a);
  const PValue p0 = Bb.is_zero() ? PValue::inf() : PValue::of(-Ab / Bb);
  const CriticalValueRecord rec = fiber_record(h, p0);
  int nonfixed = 0;
  bool found = false;
  for (const auto& c : rec.classes) {
    if (!c.fixed && c.nu >= 2) nonfixed += c.count();
    if (!b.is_zero() && c.m.eval(-a / b).is_zero()) {
      ensure(c.nu == nu && !c.fixed, ErrorCode::kInput, "the line is not a transverse inflection line of that order");
      found = true;
    }
  }
  if (rec.nu_infinity >= 2 && !rec.infinity_fixed) ++nonfixed;
  if (b.is_zero()) {
    ensure(rec.nu_infinity == nu && !rec.infinity_fixed, ErrorCode::kInput,
           "the line is not a transverse inflection line of that order");
    found = true;
  }
  ensure(found, ErrorCode::kInput, "the direction of the line is not in its fiber");
  ensure(nonfixed == 1, ErrorCode::kInput, "the fiber has other non-fixed critical points");

  const MPoly det = h.A * as_poly(Bb, "value") - as_poly(Ab, "value") * h.B;
  const auto P = divide_exact(det, (am * kXs + bm * kYs).pow(nu));
  ensure(P.has_value(), ErrorCode::kInput, "(a x + b y)^nu does not divide the determinant");
  Corollary37Result out;
  out.P = *P;
  const MPoly curl = h.B.derivative("x") - h.A.derivative("y");
  out.Q = (curl * out.P).scaled(Algebraic(static_cast<long>(nu) - 2)) +
          (out.P.derivative("x") * h.B - out.P.derivative("y") * h.A).scaled(Algebraic(2 * static_cast<long>(nu) + 2));
  out.value = eval_at(out.Q, b, -a);
  out.holomorphic = out.value.is_zero();
  return out;
}

// --- flatness ------------------------------------------------------------------

const char* component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::kRadialOnly:
      return "radial-only";
    case ComponentKind::kUniformNu2:
      return "uniform-nu2";
    case ComponentKind::kTransverseInflection:
      return "transverse-inflection";
  }
  return "?";
}

FlatnessReport flatness_decision(const HomogeneousFoliation& h, const AnalysisOptions& opt) {
  ensure(h.d >= 3, ErrorCode::kInput, "flatness needs degree at least 3");
  FlatnessReport rep;
  rep.mode = opt.mode;
  rep.prec = opt.mode == Mode::kNumeric ? opt.prec : 0;
  rep.flat = true;
  for (auto& rec : critical_fibers(h, opt)) {
    ComponentReport c;
    if (!rec.has_nonfixed_critical())
      c.kind = ComponentKind::kRadialOnly;
    else if (rec.uniform_nu() == 2u)
      c.kind = ComponentKind::kUniformNu2;
    else
      c.kind = ComponentKind::kTransverseInflection;
    c.value = rec.numeric ? theorem3_sum_numeric(h, *rec.numeric_value, opt) : theorem3_sum(h, rec.value, opt);
    c.holomorphic = c.value.zero;
    if (c.kind != ComponentKind::kTransverseInflection && !c.holomorphic)
      raise(ErrorCode::kInternal, "a component holomorphic by shape has a nonzero criterion value");
    rep.flat = rep.flat && c.holomorphic;
    c.record = std::move(rec);
    rep.components.push_back(std::move(c));
  }
  return rep;
}

// --- Galois ----------------------------------------------------------------------

GaloisReport is_galois(const RationalSphereMap& f, const AnalysisOptions& opt) {
  GaloisReport rep;
  rep.galois = true;
  for (const auto& rec : critical_fibers(associated_foliation(f), opt)) {
    PortraitEntry e;
    e.value = rec.label();
    for (const auto& c : rec.classes)
      for (int k = 0; k < c.count(); ++k) e.nus.push_back(c.nu);
    for (const auto& p : rec.points) e.nus.push_back(p.nu);
    if (rec.nu_infinity > 0) e.nus.push_back(rec.nu_infinity);
    std::sort(e.nus.rbegin(), e.nus.rend());
    e.uniform = rec.uniform_nu().has_value();
    rep.galois = rep.galois && e.uniform;
    rep.critical_points += rec.critical_points();
    rep.portrait.push_back(std::move(e));
  }
  return rep;
}

const char* galois_type_name(GaloisType t) { return t == GaloisType::kCyclic ? "cyclic" : "non-cyclic"; }

GaloisType galois_group_type(const RationalSphereMap& f, const AnalysisOptions& opt) {
  const GaloisReport r = is_galois(f, opt);
  ensure(r.galois, ErrorCode::kInput, "the map is not a Galois covering");
  return r.critical_points <= 2 ? GaloisType::kCyclic : GaloisType::kNonCyclic;
}

RationalSphereMap klein_map(int type, unsigned n, const FieldPtr& field) {
  ParseContext ctx;
  std::string A, B;
  unsigned expect = 0;
  switch (type) {
    case 1:
      ensure(n >= 1, ErrorCode::kInput, "type 1 needs a degree d >= 1");
      A = "x^" + std::to_string(n);
      B = "y^" + std::to_string(n);
      expect = n;
      break;
    case 2: {
      ensure(n >= 1, ErrorCode::kInput, "type 2 needs k >= 1");
      const std::string k = std::to_string(n);
      A = "(x^" + k + " + y^" + k + ")^2";
      B = "4*x^" + k + "*y^" + k;
      expect = 2 * n;
      break;
    }
    case 3:
      ensure(field != nullptr && field->minpoly() == std::vector<mpq_class>{3, 0, 1}, ErrorCode::kInput,
             "type 3 needs the field theta^2 + 3 = 0 (--field \"t^2 + 3\")");
      ctx.field = field;
      A = "(x^4 + 2*theta*x^2*y^2 + y^4)^3";
      B = "(x^4 - 2*theta*x^2*y^2 + y^4)^3";
      expect = 12;
      break;
    case 4:
      A = "(x^8 + 14*x^4*y^4 + y^8)^3";
      B = "108*x^4*y^4*(x^4 - y^4)^4";
      expect = 24;
      break;
    case 5:
      A = "(x^20 - 228*x^15*y^5 + 494*x^10*y^10 + 228*x^5*y^15 + y^20)^3";
      B = "-1728*x^5*y^5*(x^10 + 11*x^5*y^5 - y^10)^5";
      expect = 60;
      break;
    default:
      raise(ErrorCode::kInput, "Klein types are 1 to 5");
  }
  RationalSphereMap f = make_map(parse_polynomial(A, ctx), parse_polynomial(B, ctx));
  ensure(f.d == expect, ErrorCode::kInternal, "unexpected degree of a Klein map");
  return f;
}

Lemma47Result lemma47_sums(const RationalSphereMap& f, const PValue& p0) {
  const CriticalValueRecord rec = fiber_record(associated_foliation(f), p0);
  const auto nu = rec.uniform_nu();
  ensure(nu.has_value(), ErrorCode::kInput, "the fiber is not uniformly ramified");
  Lemma47Result out;
  out.nu = *nu;
  if (*nu == 2) {
    out.unconditional = true;
    out.holomorphic = true;
    return out;
  }
  const MPoly& G = p0.infinite ? f.A : f.B;
  const MPoly Gx = G.derivative("x"), Gy = G.derivative("y");
  const UPoly g = dehomogenize_y(G), gx = dehomogenize_y(Gx), gy = dehomogenize_y(Gy);
  std::array<Frac, 3> s;
  // Points [z : 1].
  for (const auto& c : rec.classes) {
    const ResidueRing ring(c.m);
    const UPoly inv = ring.inverse(ring.reduce(g));
    const UPoly ex = ring.reduce(gx), ey = ring.reduce(gy), z = ring.reduce(zpoly());
    s[0] += ring.trace(ring.mul(ex, inv));
    s[1] += ring.trace(ring.mul(ey - ring.mul(z, ex), inv));
    s[2] += ring.trace(ring.mul(ring.mul(z, ey), inv));
  }
  // The point [1 : 0].
  if (rec.nu_infinity > 0) {
    const Frac g10 = eval_at(G, 1, 0);
    ensure(!g10.is_zero(), ErrorCode::kInternal, "division guard at [1:0]");
    s[1] -= eval_at(Gx, 1, 0) / g10;
    s[2] += eval_at(Gy, 1, 0) / g10;
  }
  out.holomorphic = s[0].is_zero() && s[1].is_zero() && s[2].is_zero();
  out.sums = s;
  return out;
}

}  // namespace webcurv
