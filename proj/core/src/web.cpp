#include "webcurv/web.hpp"

#include <algorithm>
#include <map>

#include "dense.hpp"
#include "webcurv/error.hpp"

namespace webcurv {
namespace {

const Symbol kX = "x";
const Symbol kY = "y";
const Symbol kP = "p";
const Symbol kT = "~t";

UPoly on_d(const MPoly& f) { return UPoly::from_mpoly(f.substitute(kY, MPoly(0)), kP); }

// Sinks a Frac whose denominator is free of x, y and p (a parameter unit)
// to its numerator, which defines the same web.
MPoly web_numerator(const Frac& f) {
  for (const auto& v : f.den().vars())
    ensure(!is_variable_symbol(v), ErrorCode::kInternal, "chart change produced a non-polynomial equation");
  return f.num();
}

// ---- linear factors over K(x) by power-series lifting ---------------------

using dense::APoly;

APoly truncate(APoly a, std::size_t n) {
  if (a.size() > n) a.resize(n);
  dense::trim(a);
  return a;
}

APoly series_inverse(const APoly& a, std::size_t n) {
  const Algebraic inv0 = a.at(0).inverse();
  APoly s(n);
  s[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Algebraic acc;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * s[k - j];
    s[k] = -acc * inv0;
  }
  dense::trim(s);
  return s;
}

APoly to_apoly(const MPoly& f, const Symbol& s) {
  APoly out;
  for (const auto& c : f.coeffs_in(s)) out.push_back(c.constant_value());
  dense::trim(out);
  return out;
}

APoly eval_series(const std::vector<APoly>& poly, const APoly& phi, std::size_t n) {
  APoly acc;
  for (std::size_t k = poly.size(); k-- > 0;) acc = truncate(dense::add(dense::mul(acc, phi), poly[k]), n);
  return acc;
}

// Polynomial in x from a polynomial in t = x - x0.
MPoly shift_back(const APoly& a, const Algebraic& x0) {
  const MPoly t = MPoly::var(kX) - MPoly(x0);
  MPoly acc;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * t + MPoly(a[k]);
  return acc;
}

// A root in K(x) of M(x, p) through the simple root r0 of M(x0, p), found
// by Newton lifting in K[[x - x0]] and Pade reconstruction of degree e.
std::optional<Frac> lift_root(const MPoly& M, const Algebraic& x0, const Algebraic& r0, unsigned e) {
  const std::size_t n = 2 * e + 2;
  const MPoly shifted = M.substitute(kX, MPoly::var(kT) + MPoly(x0));
  std::vector<APoly> poly, dpoly;
  for (const auto& c : shifted.coeffs_in(kP)) poly.push_back(to_apoly(c, kT));
  for (std::size_t k = 1; k < poly.size(); ++k) dpoly.push_back(dense::scale(poly[k], Algebraic(static_cast<long>(k))));
  APoly phi{r0};
  dense::trim(phi);
  for (std::size_t prec = 1; prec < 2 * n; prec *= 2) {
    const APoly f = eval_series(poly, phi, n);
    if (f.empty()) break;
    const APoly df = eval_series(dpoly, phi, n);
    if (df.empty() || df[0].is_zero()) return std::nullopt;
    phi = truncate(dense::sub(phi, dense::mul(f, series_inverse(df, n))), n);
  }
  // Pade: r_i = s_i t^n + u_i phi with deg r_i <= e.
  APoly r0p(n + 1);
  r0p[n] = Algebraic(1);
  APoly a = r0p, b = phi, u0, u1{Algebraic(1)};
  while (!b.empty() && dense::degree(b) > static_cast<int>(e)) {
    APoly q, r;
    dense::divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    APoly u2 = dense::sub(u0, dense::mul(q, u1));
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (u1.empty() || u1[0].is_zero() || dense::degree(u1) > static_cast<int>(e)) return std::nullopt;
  return Frac(shift_back(b, x0), shift_back(u1, x0));
}

Algebraic sample_point(int i) { return Algebraic(static_cast<long>(i % 2 ? (i + 1) / 2 : -(i / 2))); }

// Splits off the linear factors of a monic squarefree m over K(x). Only
// attempted when the coefficients contain no symbol besides x.
std::vector<UPoly> split_linear(const UPoly& m) {
  if (m.degree() <= 1) return {m};
  for (const auto& c : m.coeffs())
    for (const auto& v : c.vars())
      if (v != kX) return {m};
  std::vector<UPoly> out;
  UPoly rest = m;
  const MPoly M = rest.to_mpoly_cleared(kP).first;
  const unsigned e = M.degree(kX);
  auto take = [&](const Frac& phi) {
    const UPoly lin({-phi, Frac(1)});
    if (!rest.eval(phi).is_zero()) return;
    out.push_back(lin);
    rest = quo(rest, lin);
  };
  if (e == 0) {
    for (const auto& r : rational_roots(rest)) take(Frac(Algebraic(r)));
  } else {
    for (int i = 0; i < 64; ++i) {
      const Algebraic x0 = sample_point(i);
      const UPoly at = UPoly::from_mpoly(M.substitute(kX, MPoly(x0)), kP);
      if (at.degree() != m.degree() || gcd(at, at.derivative()).degree() != 0) continue;
      for (const auto& r : rational_roots(at)) {
        if (rest.degree() <= 1) break;
        if (auto phi = lift_root(M, x0, Algebraic(r), e)) take(*phi);
      }
      break;
    }
  }
  if (rest.degree() >= 1) out.push_back(rest);
  return out;
}

// ---- numeric evaluation ----------------------------------------------------

Complex cpow(const Complex& z, unsigned e) {
  Complex acc(Real(1.0, z.prec()), Real(z.prec()));
  for (unsigned i = 0; i < e; ++i) acc *= z;
  return acc;
}

FieldPtr field_of(const MPoly& f) {
  FieldPtr out;
  for (const auto& t : f.terms()) {
    if (t.coeff.field()) out = t.coeff.field();
  }
  for (const auto& v : f.vars())
    ensure(is_variable_symbol(v), ErrorCode::kExactUnsupported, "numeric evaluation needs parameter-free input");
  return out;
}

Complex eval_complex(const MPoly& f, const std::map<Symbol, Complex>& at, const Embedding& emb) {
  const mpfr_prec_t prec = emb.prec();
  Complex acc(prec);
  for (const auto& t : f.terms()) {
    Complex term = emb(t.coeff);
    for (std::size_t i = 0; i < f.vars().size(); ++i)
      if (t.exp[i]) term *= cpow(at.at(f.vars()[i]), t.exp[i]);
    acc += term;
  }
  return acc;
}

struct Geometry {
  ImplicitWeb web;
  unsigned shear = 0;
  SlopeSpectrum spec;
  UPoly F0, Fy0, Fpy0;
  unsigned degree = 0;  // deg_p F(x, 0, p)
};

Geometry prepare(const ImplicitWeb& w) {
  Geometry g;
  g.web = w;
  g.shear = make_slopes_finite(g.web);
  g.spec = slope_spectrum(g.web);
  g.F0 = on_d(g.web.F);
  const MPoly Fy = g.web.F.derivative(kY);
  g.Fy0 = on_d(Fy);
  g.Fpy0 = on_d(Fy.derivative(kP));
  g.degree = static_cast<unsigned>(g.F0.degree());
  return g;
}

UPoly inverse_or_not_smooth(const ResidueRing& ring, const UPoly& a) {
  try {
    return ring.inverse(a);
  } catch (const Error&) {
    raise(ErrorCode::kInput, "the web is not smooth along y = 0 (F_y vanishes on a multiple slope)");
  }
}

}  // namespace

// ---- construction -----------------------------------------------------------

namespace {

// A specialization of every symbol but p that keeps the degree and is
// squarefree in p certifies that F is squarefree over K(x, y, params).
bool squarefree_at_some_point(const MPoly& F) {
  const unsigned d = F.degree(kP);
  for (long shift = 0; shift < 3; ++shift) {
    std::map<Symbol, MPoly> at;
    long k = 0;
    for (const auto& v : F.vars())
      if (v != kP) at[v] = MPoly(Algebraic(3 + 7 * k++ + 11 * shift));
    const UPoly f = UPoly::from_mpoly(F.substitute(at), kP);
    if (f.degree() != static_cast<int>(d)) continue;
    if (gcd(f, f.derivative()).degree() == 0) return true;
  }
  return false;
}

}  // namespace

ImplicitWeb make_web(const MPoly& F) {
  ensure(!F.is_zero(), ErrorCode::kInput, "the web equation is zero");
  for (const auto& v : F.vars())
    ensure(!is_variable_symbol(v) || v == kX || v == kY || v == kP, ErrorCode::kInput,
           "web equations use only x, y and p");
  ensure(F.degree(kP) >= 1, ErrorCode::kInput, "the web equation does not involve p");
  ImplicitWeb w;
  w.F = F;
  if (!squarefree_at_some_point(F)) {
    const MPoly g = gcd(F, F.derivative(kP));
    if (g.degree(kP) > 0) {
      const MPoly repeated = *divide_exact(g, content_in(g, kP));
      w.F = *divide_exact(F, repeated);
      w.reduced = true;
    }
  }
  w.d = w.F.degree(kP);
  w.a0 = w.F.coeff_in(kP, w.d);
  return w;
}

WebDiscriminant web_discriminant(const ImplicitWeb& w) {
  WebDiscriminant out;
  out.value = discriminant(w.F, kP);
  out.support = squarefree_decomposition(out.value, &out.unit);
  return out;
}

std::string ChartChange::describe() const {
  switch (kind) {
    case Kind::kIdentity: return "identity";
    case Kind::kTranslate: return "translate: (x, y) = (" + x.str() + ", " + y.str() + ")";
    case Kind::kShear: return "shear: (x, y) = (" + x.str() + ", " + y.str() + ")";
    case Kind::kSwap: return "swap: (x, y) = (" + x.str() + ", " + y.str() + "), p -> 1/p";
  }
  return "";
}

NormalizedWeb normalize_component(const ImplicitWeb& w, const MPoly& line) {
  for (const auto& v : line.vars())
    ensure(!is_variable_symbol(v) || v == kX || v == kY, ErrorCode::kInput, "a component is a line in x and y");
  const bool linear = line.degree(kX) <= 1 && line.degree(kY) <= 1 && !line.coeff_in(kX, 1).has_var(kY);
  if (!linear)
    raise(ErrorCode::kInput, "only line components are supported here; curved components go through the foliation pipeline");
  const MPoly u = line.coeff_in(kX, 1), v = line.coeff_in(kY, 1), c = line.coeff_in(kX, 0).coeff_in(kY, 0);
  ensure(!u.is_zero() || !v.is_zero(), ErrorCode::kInput, "the component equation is constant");

  NormalizedWeb out;
  out.web = w;
  const Frac X = Frac::var(kX), Y = Frac::var(kY), P = Frac::var(kP);
  if (!v.is_zero()) {
    // y' = y + (u x + c) / v keeps x and shifts p by u / v.
    const Frac s = Frac(u) / Frac(v), t = Frac(c) / Frac(v);
    if (s.is_zero() && t.is_zero()) return out;
    out.change.kind = s.is_zero() ? ChartChange::Kind::kTranslate : ChartChange::Kind::kShear;
    out.change.x = X;
    out.change.y = Y - s * X - t;
    const Frac F = Frac(w.F).substitute(std::map<Symbol, Frac>{{kY, out.change.y}, {kP, P - s}});
    out.web.F = web_numerator(F);
  } else {
    // x = -c/u becomes y' = 0 after swapping the roles of x and y.
    const Frac t = Frac(c) / Frac(u);
    out.change.kind = ChartChange::Kind::kSwap;
    out.change.x = Y - t;
    out.change.y = X;
    const auto coeffs = w.F.coeffs_in(kP);
    Frac acc;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const Frac ck = Frac(coeffs[k]).substitute(std::map<Symbol, Frac>{{kX, out.change.x}, {kY, out.change.y}});
      acc += ck * P.pow(static_cast<int>(w.d - k));
    }
    out.web.F = web_numerator(acc);
  }
  out.web.a0 = out.web.F.coeff_in(kP, w.d);
  return out;
}

// ---- slopes along D -----------------------------------------------------------

SlopeSpectrum slope_spectrum(const ImplicitWeb& w) {
  const UPoly F0 = on_d(w.F);
  ensure(!F0.is_zero(), ErrorCode::kInput, "F(x, 0, p) vanishes identically; y divides the equation");
  SlopeSpectrum s;
  s.degree_drop = w.d - static_cast<unsigned>(F0.degree());
  for (auto& f : squarefree(F0, &s.lead)) {
    for (auto& part : split_linear(f.factor)) {
      SlopeClass c;
      c.m = std::move(part);
      c.nu = f.multiplicity;
      if (c.m.degree() == 1) c.phi = -c.m.coeff(0);
      s.classes.push_back(std::move(c));
    }
  }
  return s;
}

unsigned make_slopes_finite(ImplicitWeb& w) {
  const auto coeffs = w.F.coeffs_in(kP);
  auto lead_on_d = [&](long s) {
    // Coefficient of p^d after the shear, restricted to y = 0.
    MPoly acc;
    Algebraic pw(1);
    for (std::size_t k = w.d + 1; k-- > 0;) {
      if (k < coeffs.size()) acc += coeffs[k].substitute(kY, MPoly(0)).scaled(pw);
      pw *= Algebraic(-s);
    }
    return acc;
  };
  if (!lead_on_d(0).is_zero()) return 0;
  for (long s = 1;; ++s) {
    ensure(s < 1000, ErrorCode::kInternal, "no finite-slope shear found");
    if (lead_on_d(s).is_zero()) continue;
    // x_old = x - s y, p_old = p / (1 - s p), cleared by (1 - s p)^d.
    const MPoly xs = MPoly::var(kX) - MPoly::var(kY).scaled(Algebraic(s));
    const MPoly one_minus = MPoly(1) - MPoly::var(kP).scaled(Algebraic(s));
    MPoly acc;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      acc += coeffs[k].substitute(kX, xs) * MPoly::var(kP).pow(static_cast<unsigned>(k)) *
             one_minus.pow(static_cast<unsigned>(w.d - k));
    w.F = acc;
    w.a0 = w.F.coeff_in(kP, w.d);
    return static_cast<unsigned>(s);
  }
}

SmoothnessReport smooth_along(const ImplicitWeb& w) {
  SmoothnessReport rep;
  ImplicitWeb web = w;
  rep.shear = make_slopes_finite(web);
  const SlopeSpectrum spec = slope_spectrum(web);
  const UPoly Fx = on_d(web.F.derivative(kX)), Fy = on_d(web.F.derivative(kY)), Fp = on_d(web.F.derivative(kP));
  for (const auto& c : spec.classes) {
    const ResidueRing ring(c.m);
    SmoothnessEntry e;
    e.slope = c;
    e.dx = ring.reduce(Fx);
    e.dy = ring.reduce(Fy);
    e.dp = ring.reduce(Fp);
    if (c.nu >= 2) {
      UPoly s, t;
      e.smooth = !e.dy.is_zero() && ext_gcd(e.dy, c.m, s, t).degree() == 0;
      if (c.phi && !e.dy.is_zero()) e.vanishing_locus = e.dy.coeff(0).num();
    }
    rep.smooth = rep.smooth && e.smooth;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---- holomorphy criteria ------------------------------------------------------

Frac psi_alpha(const ImplicitWeb& w, const SlopeSpectrum& s, std::size_t alpha) {
  ensure(alpha < s.classes.size(), ErrorCode::kInput, "slope index out of range");
  ensure(s.degree_drop == 0, ErrorCode::kInput, "a slope is infinite along y = 0");
  for (const auto& c : s.classes) ensure(c.phi.has_value(), ErrorCode::kInput, "psi needs every slope rational over K(x)");
  const SlopeClass& a = s.classes[alpha];
  ensure(a.nu >= 2, ErrorCode::kInput, "psi is defined for multiple slopes only");
  const Frac& phi = *a.phi;
  const MPoly Fy = w.F.derivative(kY);
  const Frac fy = on_d(Fy).eval(phi), fpy = on_d(Fy.derivative(kP)).eval(phi);
  ensure(!fy.is_zero(), ErrorCode::kInternal, "F_y vanishes on a multiple slope of a smooth web");
  Frac cross;
  for (std::size_t b = 0; b < s.classes.size(); ++b) {
    if (b == alpha) continue;
    const Frac& pb = *s.classes[b].phi;
    cross += Frac(static_cast<long>(s.classes[b].nu)) * pb / (phi - pb);
  }
  const long nu = a.nu, d = w.d;
  return (Frac(nu - 2) * (Frac(d) - phi * fpy / fy) - Frac(2 * (nu + 1)) * cross) / Frac(nu);
}

Verdict theorem1_criterion(const ImplicitWeb& w) {
  const Geometry g = prepare(w);
  const UPoly P = UPoly::identity();
  const long d = g.degree;
  Frac t1, t2;
  long extra = 0;
  for (const auto& c : g.spec.classes) {
    if (c.nu < 2) continue;
    const ResidueRing ring(c.m);
    const long nu = c.nu;
    const UPoly inv_fy = inverse_or_not_smooth(ring, ring.reduce(g.Fy0));
    const UPoly rho = ring.mul(P, ring.mul(ring.reduce(g.Fpy0), inv_fy));
    // sum_{beta != alpha} nu_beta phi_beta / (phi_alpha - phi_beta) through the
    // Taylor data of F(x, 0, p) at the class: -(d - nu) + phi c_{nu+1} / c_nu.
    const auto tay = local_taylor(g.F0, RootClass{c.m, c.nu}, c.nu + 1);
    const UPoly ratio = ring.mul(tay[c.nu + 1], ring.inverse(tay[c.nu]));
    const UPoly cross = ring.mul(P, ratio) - UPoly(Frac(d - nu));
    const UPoly psi = (((UPoly(Frac(d)) - rho).scaled(Frac(nu - 2)) - cross.scaled(Frac(2 * (nu + 1)))))
                          .scaled(Frac(1) / Frac(nu));
    t1 += Frac(nu - 1) * ring.trace(ring.mul(P, psi));
    t2 += Frac(nu - 1) * ring.trace(psi);
    extra += (nu - 1) * (nu - 2) * c.count();
  }
  Verdict v;
  v.rule = "full criterion";
  v.shear = g.shear;
  const Frac dt2 = t2.derivative(kX);
  v.holomorphic = t1.is_zero() && dt2.is_zero();
  v.witnesses = {{"sum_phi_psi", t1}, {"sum_psi", t2}, {"d_sum_psi", dt2}};
  v.residue = OneForm{-t1 / Frac(6), (t2 + Frac(extra)) / Frac(6)};
  return v;
}

Verdict corollary_criterion(const ImplicitWeb& w) {
  const Geometry g = prepare(w);
  const SlopeClass* multiple = nullptr;
  for (const auto& c : g.spec.classes) {
    if (c.nu < 2) continue;
    ensure(!multiple && c.count() == 1, ErrorCode::kInput, "the shortcut needs exactly one multiple slope");
    multiple = &c;
  }
  ensure(multiple != nullptr, ErrorCode::kInput, "the shortcut needs exactly one multiple slope");
  const Frac phi0 = *multiple->phi;
  const long nu = multiple->nu, d = g.degree;
  const Frac fy = g.Fy0.eval(phi0), fpy = g.Fpy0.eval(phi0);
  if (fy.is_zero()) raise(ErrorCode::kInput, "the web is not smooth along y = 0 (F_y vanishes on a multiple slope)");
  // sum over the simple slopes of phi / (phi0 - phi), as traces.
  Frac sum;
  const UPoly P = UPoly::identity();
  for (const auto& c : g.spec.classes) {
    if (c.nu >= 2) continue;
    const ResidueRing ring(c.m);
    sum += ring.trace(ring.mul(P, ring.inverse(UPoly(phi0) - P)));
  }
  const Frac psi = Frac(nu - 2) * (Frac(d) - phi0 * fpy / fy) - Frac(2 * (nu + 1)) * sum;
  Verdict v;
  v.rule = "single multiple slope";
  v.shear = g.shear;
  v.holomorphic = phi0.is_zero() || psi.is_zero();
  v.witnesses = {{"phi0", phi0}, {"psi", psi}};
  return v;
}

Verdict uniform_criterion(const ImplicitWeb& w) {
  const Geometry g = prepare(w);
  ensure(!g.spec.classes.empty(), ErrorCode::kInput, "no slopes along y = 0");
  const unsigned nu = g.spec.classes.front().nu;
  for (const auto& c : g.spec.classes)
    ensure(c.nu == nu && nu >= 2, ErrorCode::kInput, "the shortcut needs one common multiplicity >= 2");
  Verdict v;
  v.shear = g.shear;
  if (nu == 2) {
    v.rule = "uniform multiplicity 2";
    v.holomorphic = true;
    return v;
  }
  const UPoly P = UPoly::identity();
  const long d = g.degree;
  Frac s1, s2;
  for (const auto& c : g.spec.classes) {
    const ResidueRing ring(c.m);
    const UPoly rho = ring.mul(P, ring.mul(ring.reduce(g.Fpy0), inverse_or_not_smooth(ring, ring.reduce(g.Fy0))));
    s1 += ring.trace(ring.mul(P, UPoly(Frac(d)) - rho));
    s2 += ring.trace(rho);
  }
  const Frac ds2 = s2.derivative(kX);
  v.rule = "uniform multiplicity";
  v.holomorphic = s1.is_zero() && ds2.is_zero();
  v.witnesses = {{"sum_phi_d_minus_rho", s1}, {"d_sum_rho", ds2}};
  return v;
}

Verdict criterion(const ImplicitWeb& w) {
  Verdict full = theorem1_criterion(w);
  const SlopeSpectrum spec = prepare(w).spec;
  bool uniform = !spec.classes.empty();
  int multiple_points = 0;
  for (const auto& c : spec.classes) {
    uniform = uniform && c.nu == spec.classes.front().nu && c.nu >= 2;
    if (c.nu >= 2) multiple_points += c.count();
  }
  std::optional<Verdict> shortcut;
  if (uniform) shortcut = uniform_criterion(w);
  else if (multiple_points == 1) shortcut = corollary_criterion(w);
  if (shortcut) {
    ensure(shortcut->holomorphic == full.holomorphic, ErrorCode::kInternal,
           "shortcut and full criterion disagree");
    full.rule += " (agrees with " + shortcut->rule + ")";
    for (auto& wpair : shortcut->witnesses) full.witnesses.push_back(std::move(wpair));
  }
  return full;
}

std::optional<Frac> barycenter(const Frac& phi0, const std::vector<Frac>& others) {
  Frac s;
  for (const auto& f : others) {
    ensure(f != phi0, ErrorCode::kInput, "barycenter of a slope equal to the base slope");
    s += (f - phi0).inverse();
  }
  if (s.is_zero()) return std::nullopt;
  return phi0 + Frac(static_cast<long>(others.size())) / s;
}

// ---- fundamental form ---------------------------------------------------------

OneForm eta3(const Frac& l1, const Frac& l2, const Frac& l3) {
  ensure(l1 != l2 && l2 != l3 && l1 != l3, ErrorCode::kInput, "eta3 needs three distinct slopes");
  const Frac* l[3] = {&l1, &l2, &l3};
  static const int kCyclic[3][3] = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  OneForm eta;
  for (const auto& ijk : kCyclic) {
    const Frac &li = *l[ijk[0]], &lj = *l[ijk[1]], &lk = *l[ijk[2]];
    const Frac c = ((li * lj).derivative(kY) - lk.derivative(kX)) / ((li - lk) * (lj - lk));
    eta.a -= c * lk;
    eta.b += c;
  }
  return eta;
}

OneForm eta3_forms(const OneForm& w1, const OneForm& w2, const OneForm& w3) {
  for (const auto* w : {&w1, &w2, &w3})
    ensure(!w->b.is_zero(), ErrorCode::kInput, "a defining form has no dy component");
  OneForm eta = eta3(-w1.a / w1.b, -w2.a / w2.b, -w3.a / w3.b);
  return eta + dlog(w1.b * w2.b * w3.b);
}

OneForm eta_full(const std::vector<Frac>& slopes) {
  ensure(slopes.size() >= 3, ErrorCode::kInput, "a fundamental form needs at least three slopes");
  OneForm eta;
  const std::size_t n = slopes.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t) eta += eta3(slopes[r], slopes[s], slopes[t]);
  return eta;
}

TwoForm curvature(const OneForm& eta) { return exterior_derivative(eta); }

bool is_flat(const std::vector<Frac>& slopes) { return curvature(eta_full(slopes)).is_zero(); }

NumericOneForm numeric_eta(const ImplicitWeb& w, const Complex& x0, const Complex& y0, const RootOptions& opt) {
  const Embedding emb(field_of(w.F), opt.prec);
  std::vector<Complex> coeffs;
  for (const auto& c : w.F.coeffs_in(kP)) coeffs.push_back(eval_complex(c, {{kX, x0}, {kY, y0}}, emb));
  const auto roots = numeric_roots(coeffs, opt);
  ensure(roots.size() >= 3, ErrorCode::kInput, "a fundamental form needs at least three slopes");
  const MPoly Fx = w.F.derivative(kX), Fy = w.F.derivative(kY), Fp = w.F.derivative(kP);
  struct Branch {
    Complex l, lx, ly;
  };
  std::vector<Branch> br;
  for (const auto& r : roots) {
    const std::map<Symbol, Complex> at{{kX, x0}, {kY, y0}, {kP, r.z}};
    const Complex fp = eval_complex(Fp, at, emb);
    br.push_back({r.z, -eval_complex(Fx, at, emb) / fp, -eval_complex(Fy, at, emb) / fp});
  }
  NumericOneForm out{Complex(opt.prec), Complex(opt.prec)};
  static const int kCyclic[3][3] = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  const std::size_t n = br.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t) {
        const Branch* b[3] = {&br[r], &br[s], &br[t]};
        for (const auto& ijk : kCyclic) {
          const Branch &bi = *b[ijk[0]], &bj = *b[ijk[1]], &bk = *b[ijk[2]];
          const Complex c = (bi.l * bj.ly + bj.l * bi.ly - bk.lx) / ((bi.l - bk.l) * (bj.l - bk.l));
          out.a -= c * bk.l;
          out.b += c;
        }
      }
  return out;
}

}  // namespace webcurv
