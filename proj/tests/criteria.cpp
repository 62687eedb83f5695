#include "criteria.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "webcurv/error.hpp"
#include "webcurv/foliation.hpp"
#include "webcurv/parse.hpp"
#include "webcurv/web.hpp"

namespace criteria {
namespace {

using namespace webcurv;

MPoly P(const std::string& s, const std::vector<std::string>& params = {}, FieldPtr field = nullptr) {
  ParseContext ctx;
  ctx.params = params;
  ctx.field = std::move(field);
  return parse_polynomial(s, ctx);
}

Frac R(const std::string& s, const std::vector<std::string>& params = {}) {
  ParseContext ctx;
  ctx.params = params;
  return parse_rational(s, ctx);
}

HomogeneousFoliation H(const std::string& a, const std::string& b, const std::vector<std::string>& params = {}) {
  return make_foliation(P(a, params), P(b, params));
}

int count(const Options& o, int full) { return std::max(1, static_cast<int>(std::lround(full * o.scale))); }

// Collects failures; the outcome passes when nothing was recorded.
class Checker {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome finish() const {
    Outcome o;
    o.pass = failed_ == 0 && checks_ > 0;
    std::ostringstream s;
    s << checks_ - failed_ << "/" << checks_ << " checks";
    if (!notes_.empty()) s << "; " << notes_;
    for (const auto& f : failures_) s << "; FAILED: " << f;
    o.detail = s.str();
    return o;
  }

 private:
  int checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

template <class Body>
Outcome timed(double budget, Body body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.budget = budget;
  if (budget > 0 && o.seconds >= budget) {
    o.pass = false;
    o.detail += "; over the time budget";
  }
  return o;
}

const char* kTwoWeb = "(y^2 - x)*p^2 + 2*x*p - x";
const char* kHenaut = "((x^2 - 1)*p + (x - 3)*y^2) * ((x^2 - 1)*p + (x + 3)*y^2) * ((x^2 - 1)*p - 2*x*y^2)";

bool constant_multiple(const Frac& a, const Frac& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return (a / b).is_constant();
}

Complex to_complex(const Frac& f, mpfr_prec_t prec) {
  const Algebraic c = f.constant_value();
  if (c.is_rational()) return Complex(Real(c.rational(), prec), Real(prec));
  return Embedding(c.field(), prec)(c);
}

// ---- random smooth webs with rational spectra ------------------------------

struct RandomWeb {
  ImplicitWeb w;
  std::vector<std::pair<MPoly, unsigned>> spectrum;  // slope on D, multiplicity
};

MPoly random_xy_poly(testgen::Rng& rng, unsigned deg, long range = 3) {
  MPoly out;
  for (unsigned i = 0; i <= deg; ++i)
    for (unsigned j = 0; i + j <= deg; ++j)
      out += (MPoly::var("x").pow(i) * MPoly::var("y").pow(j)).scaled(Algebraic(testgen::uniform(rng, -range, range)));
  return out;
}

std::vector<unsigned> random_shape(testgen::Rng& rng, unsigned d) {
  switch (testgen::uniform(rng, 0, 2)) {
    case 0: {  // uniform multiplicity
      const unsigned nu = d % 3 == 0 && testgen::uniform(rng, 0, 1) ? 3 : 2;
      if (d % nu == 0) return std::vector<unsigned>(d / nu, nu);
      break;
    }
    case 1: {  // one multiple slope
      std::vector<unsigned> s{static_cast<unsigned>(testgen::uniform(rng, 2, d))};
      while (s.size() < d - s[0] + 1) s.push_back(1);
      return s;
    }
    default:
      break;
  }
  std::vector<unsigned> s;
  unsigned left = d;
  while (left > 0) {
    const unsigned nu = static_cast<unsigned>(testgen::uniform(rng, 1, std::min<long>(left, 3)));
    s.push_back(nu);
    left -= nu;
  }
  if (*std::max_element(s.begin(), s.end()) < 2) s = {2, d - 2};
  // Drop the trailing zero-size entry for d - 2 = 0.
  s.erase(std::remove(s.begin(), s.end(), 0u), s.end());
  return s;
}

RandomWeb random_smooth_web(testgen::Rng& rng) {
  const MPoly p = MPoly::var("p"), x = MPoly::var("x");
  for (;;) {
    const unsigned d = static_cast<unsigned>(testgen::uniform(rng, 3, 6));
    const std::vector<unsigned> shape = random_shape(rng, d);
    RandomWeb out;
    MPoly F(testgen::uniform(rng, 1, 3));
    std::vector<MPoly> used;
    for (unsigned nu : shape) {
      MPoly phi;
      do {
        phi = MPoly(testgen::uniform(rng, -4, 4)) + x.scaled(Algebraic(testgen::uniform(rng, -2, 2)));
      } while (std::find(used.begin(), used.end(), phi) != used.end());
      used.push_back(phi);
      out.spectrum.emplace_back(phi, nu);
      F = F * (p - phi).pow(nu);
    }
    MPoly G;
    for (unsigned k = 0; k < d; ++k) G += random_xy_poly(rng, 1) * p.pow(k);
    F += MPoly::var("y") * G;
    try {
      out.w = make_web(F);
      if (out.w.d != d || out.w.reduced) continue;
      if (!smooth_along(out.w).smooth) continue;
      return out;
    } catch (const Error&) {
    }
  }
}

// W2 x W_{d-2}: a 2-web ramified along y = 0 over the slope phi0, times d-2
// foliations with slopes phi_a(x) + y c_a on D.
struct BarycenterCase {
  ImplicitWeb w;
  Frac phi0;
  std::vector<Frac> others;
};

BarycenterCase random_barycenter_case(testgen::Rng& rng) {
  const MPoly p = MPoly::var("p"), x = MPoly::var("x"), y = MPoly::var("y");
  for (;;) {
    const unsigned d = static_cast<unsigned>(testgen::uniform(rng, 3, 6));
    const int kind = static_cast<int>(testgen::uniform(rng, 0, 2));
    BarycenterCase c;
    const MPoly phi0 = kind == 0 ? MPoly() : MPoly(testgen::uniform(rng, -3, 3)) + x.scaled(Algebraic(testgen::uniform(rng, 1, 2)));
    c.phi0 = Frac(phi0);
    for (unsigned k = 0; k < d - 2; ++k)
      c.others.push_back(Frac(MPoly(testgen::uniform(rng, -4, 4)) + x.scaled(Algebraic(testgen::uniform(rng, -2, 2)))));
    auto distinct = [&c] {
      for (std::size_t i = 0; i < c.others.size(); ++i) {
        if (c.others[i] == c.phi0) return false;
        for (std::size_t j = 0; j < i; ++j)
          if (c.others[i] == c.others[j]) return false;
      }
      return true;
    };
    if (!distinct()) continue;
    if (kind == 2) {
      // Put the barycenter on D: sum phi_a / (phi0 - phi_a) = 0 fixes the last slope.
      Frac s;
      for (std::size_t k = 0; k + 1 < c.others.size(); ++k) s += c.others[k] / (c.phi0 - c.others[k]);
      if (s == Frac(1)) continue;
      c.others.back() = -s * c.phi0 / (Frac(1) - s);
      if (!distinct()) continue;
    }
    const MPoly h = MPoly(testgen::uniform(rng, 1, 3)) + x.scaled(Algebraic(testgen::uniform(rng, -2, 2)));
    MPoly F = (p - phi0).pow(2) - y * h;
    for (const auto& s : c.others) {
      const MPoly cy = random_xy_poly(rng, 1);
      F = F * (p.scaled(Algebraic(1)) * s.den() - s.num() - y * cy * s.den());
    }
    try {
      c.w = make_web(F);
      if (c.w.d != d || !smooth_along(c.w).smooth) continue;
      return c;
    } catch (const Error&) {
    }
  }
}

// x0 on D away from coincidences of the slopes and zeros of a0.
mpq_class probe_point(testgen::Rng& rng, const RandomWeb& rw) {
  for (;;) {
    const mpq_class x0(testgen::uniform(rng, -20, 20), testgen::uniform(rng, 3, 11));
    const Frac fx{Algebraic(x0)};
    bool ok = !rw.w.a0.substitute({{"x", MPoly(Algebraic(x0))}, {"y", MPoly()}}).is_zero();
    for (std::size_t i = 0; ok && i < rw.spectrum.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        ok = ok && Frac(rw.spectrum[i].first).substitute("x", fx) != Frac(rw.spectrum[j].first).substitute("x", fx);
    if (ok) return x0;
  }
}

AnalysisOptions numeric(mpfr_prec_t prec = 256) {
  AnalysisOptions o;
  o.mode = Mode::kNumeric;
  o.prec = prec;
  return o;
}

}  // namespace

// ---- 1 ------------------------------------------------------------------------

Outcome discriminants(const Options&) {
  return timed(1.0, [] {
    Checker c;
    const WebDiscriminant a = web_discriminant(make_web(P(kTwoWeb)));
    c.check(constant_multiple(Frac(a.value), Frac(P("x*y^2"))), "first example: 4 x y^2 up to a constant");
    c.check(a.value == P("4*x*y^2"), "first example: exact value 4 x y^2");
    const WebDiscriminant b = web_discriminant(make_web(P(kHenaut)));
    c.check(b.value == P("(x^2 - 1)^8*y^12").scaled(b.unit), "3-web: unit times (x^2-1)^8 y^12");
    c.check(b.unit == Algebraic(2916), "3-web: unit 2916");
    c.note("values " + a.value.str() + " and " + b.value.str());
    return c.finish();
  });
}

// ---- 2 ------------------------------------------------------------------------

Outcome smoothness(const Options&) {
  return timed(1.0, [] {
    Checker c;
    const ImplicitWeb w = make_web(P(kTwoWeb));
    c.check(smooth_along(normalize_component(w, P("x")).web).smooth, "first example smooth along x = 0");
    c.check(!smooth_along(w).smooth, "first example not smooth along y = 0");
    c.check(!smooth_along(make_web(P(kHenaut))).smooth, "3-web not smooth along y = 0");
    return c.finish();
  });
}

// ---- 3 ------------------------------------------------------------------------

Outcome eta_golden(const Options&) {
  return timed(1.0, [] {
    Checker c;
    const OneForm printed{R("14*x/(3*(x^2 - 1))"), R("4/y - 1/(3*y^2)")};
    const OneForm forms = eta3_forms({R("(x - 3)*y^2"), R("x^2 - 1")}, {R("(x + 3)*y^2"), R("x^2 - 1")},
                                     {R("-2*x*y^2"), R("x^2 - 1")});
    c.check(forms == printed, "eta of the defining 1-forms equals the printed form");
    c.check(curvature(forms).is_zero(), "its curvature vanishes");
    const OneForm slopes =
        eta3(R("-(x - 3)*y^2/(x^2 - 1)"), R("-(x + 3)*y^2/(x^2 - 1)"), R("2*x*y^2/(x^2 - 1)"));
    c.check(slopes == printed - dlog(R("(x^2 - 1)^3")), "slope representative differs by 3 dlog(x^2 - 1)");
    c.check(curvature(slopes).is_zero(), "slope representative is closed");
    return c.finish();
  });
}

// ---- 4 ------------------------------------------------------------------------

Outcome full_criterion_consistency(const Options& o) {
  const int n = count(o, 100);
  return timed(60.0, [n] {
    Checker c;
    testgen::Rng rng(4004);
    int shortcuts = 0, holomorphic = 0, nu2 = 0;
    const mpfr_prec_t prec = 512;
    for (int i = 0; i < n; ++i) {
      const RandomWeb rw = random_smooth_web(rng);
      const Verdict full = theorem1_criterion(rw.w);
      holomorphic += full.holomorphic;
      const std::string tag = "web " + std::to_string(i) + " " + rw.w.F.str();
      if (!full.residue) {
        c.check(false, tag + ": no residue");
        continue;
      }
      // Pole order: y * eta(x0, y) must tend to theta(x0) as y -> 0; a y^-2
      // term would blow up like 1/y.
      const mpq_class x0 = probe_point(rng, rw);
      const Frac ta = full.residue->a.substitute("x", Frac(Algebraic(x0)));
      const Frac tb = full.residue->b.substitute("x", Frac(Algebraic(x0)));
      const Real y0 = Real::exp10(-40, prec);
      RootOptions ro;
      ro.prec = prec;
      const NumericOneForm eta =
          numeric_eta(rw.w, Complex(Real(x0, prec), Real(prec)), Complex(y0, Real(prec)), ro);
      Complex ya = eta.a, yb = eta.b;
      ya.re *= y0;
      ya.im *= y0;
      yb.re *= y0;
      yb.im *= y0;
      const Real ea = (ya - to_complex(ta, prec)).abs(), eb = (yb - to_complex(tb, prec)).abs();
      const double scale = 1 + std::abs(ta.is_zero() ? 0.0 : to_complex(ta, 64).re.to_double()) +
                           std::abs(tb.is_zero() ? 0.0 : to_complex(tb, 64).re.to_double());
      c.check(ea.to_double() < 1e-25 * scale && eb.to_double() < 1e-25 * scale, tag + ": principal part beyond 1/y");

      bool uniform = true;
      int multiple = 0;
      for (const auto& s : rw.spectrum) {
        uniform = uniform && s.second == rw.spectrum.front().second && s.second >= 2;
        if (s.second >= 2) ++multiple;
      }
      if (uniform) {
        ++shortcuts;
        c.check(uniform_criterion(rw.w).holomorphic == full.holomorphic, tag + ": uniform shortcut disagrees");
        if (rw.spectrum.front().second == 2) {
          ++nu2;
          c.check(full.holomorphic, tag + ": uniform multiplicity 2 must be holomorphic");
        }
      }
      if (multiple == 1) {
        ++shortcuts;
        c.check(corollary_criterion(rw.w).holomorphic == full.holomorphic, tag + ": single-slope shortcut disagrees");
      }
    }
    c.note(std::to_string(n) + " webs, " + std::to_string(shortcuts) + " shortcut comparisons, " +
           std::to_string(nu2) + " uniform nu=2, " + std::to_string(holomorphic) + " holomorphic");
    return c.finish();
  });
}

// ---- 5 ------------------------------------------------------------------------

Outcome barycenter_equivalence(const Options& o) {
  const int n = count(o, 100);
  return timed(60.0, [n] {
    Checker c;
    testgen::Rng rng(5005);
    int yes = 0;
    for (int i = 0; i < n; ++i) {
      const BarycenterCase bc = random_barycenter_case(rng);
      const bool full = theorem1_criterion(bc.w).holomorphic;
      const std::optional<Frac> beta = barycenter(bc.phi0, bc.others);
      const bool direct = bc.phi0.is_zero() || (beta && beta->is_zero());
      yes += direct;
      c.check(full == direct, "instance " + std::to_string(i) + " " + bc.w.F.str());
    }
    c.note(std::to_string(n) + " instances, " + std::to_string(yes) + " holomorphic");
    return c.finish();
  });
}

// ---- 6 ------------------------------------------------------------------------

Outcome two_line_example(const Options&) {
  return timed(10.0, [] {
    Checker c;
    const std::vector<std::string> lm{"l", "m"};
    const PValue zero = PValue::of(Frac(0));
    const HomogeneousFoliation h2 = H("y^2*(y - x)^2", "(y - l*x)^2*(y - m*x)^2", lm);
    const CriticalValueRecord r2 = fiber_record(h2, zero);
    c.check(r2.uniform_nu() == 2u, "k = 2: uniform index 2");
    c.check(theorem3_sum(h2, zero).zero, "k = 2: holomorphic for all l, m");

    const HomogeneousFoliation h3 = H("y^3*(y - x)^3", "(y - l*x)^3*(y - m*x)^3", lm);
    const CriticalValueRecord r3 = fiber_record(h3, zero);
    bool shape = r3.classes.size() == 2;
    for (const auto& cl : r3.classes)
      shape = shape && cl.nu == 3 && cl.fixed == (cl.m == UPoly::identity());
    c.check(shape, "k = 3: fiber [0:1] fixed and [1:1] non-fixed, index 3");
    const Frac S = *theorem3_sum(h3, zero).exact;
    const Frac target = R("l + m - 2*l*m", lm);
    c.check(constant_multiple(Frac(S.num()), target), "k = 3: numerator of S is a multiple of l + m - 2 l m");
    c.check(constant_multiple(Frac(S.den()), R("(l - 1)*(m - 1)", lm)),
            "k = 3: denominator of S only vanishes where the foliation degenerates");
    c.note("S = " + S.str());
    const Remark33Result rr = remark33_shortcut(h3, zero);
    c.check(constant_multiple(rr.sum, S), "k = 3: uniform-fiber sum proportional to S");
    c.check(rr.restriction && constant_multiple(Frac(rr.restriction->num()), target * R("x^5 * (l-1)^2 * (m-1)^2", lm)),
            "k = 3: d(omega) on y = x vanishes exactly on l + m = 2 l m");
    const Corollary37Result cr = corollary37_check(h3, Frac(-1), Frac(1), 3);
    c.check(constant_multiple(cr.value, target * R("(l - 1)^5*(m - 1)^5", lm)), "k = 3: line invariant Q(1,1)");

    const HomogeneousFoliation flat = H("y^3*(y - x)^3", "(y - 2*x)^3*(3*y - 2*x)^3");
    const HomogeneousFoliation curved = H("y^3*(y - x)^3", "(y - 2*x)^3*(2*y - x)^3");
    c.check(theorem3_sum(flat, zero).zero, "(2, 2/3): holomorphic");
    c.check(!theorem3_sum(curved, zero).zero, "(2, 1/2): not holomorphic");
    c.check(S.substitute({{"l", Frac(2)}, {"m", R("2/3")}}).is_zero(), "(2, 2/3) zero of the symbolic S");
    return c.finish();
  });
}

// ---- 7 ------------------------------------------------------------------------

Outcome galois_suite(const Options&) {
  return timed(0, [] {
    Checker c;
    const FieldPtr k3 = parse_field("t^2 + 3");
    struct Item {
      std::string name;
      RationalSphereMap f;
      double budget;
    };
    std::vector<Item> items;
    for (unsigned k = 2; k <= 4; ++k) items.push_back({"f2(k=" + std::to_string(k) + ")", klein_map(2, k), 10});
    items.push_back({"f3", klein_map(3, 0, k3), 10});
    items.push_back({"f4", klein_map(4), 10});
    items.push_back({"f5", klein_map(5), 120});
    std::string times;
    for (const auto& it : items) {
      const auto t0 = std::chrono::steady_clock::now();
      c.check(galois_group_type(it.f) == GaloisType::kNonCyclic, it.name + " non-cyclic Galois");
      for (const PValue& v : {PValue::of(Frac(0)), PValue::of(Frac(1)), PValue::inf()}) {
        const Lemma47Result l = lemma47_sums(it.f, v);
        c.check(l.unconditional || (l.sums && l.holomorphic), it.name + " sums over " + v.str());
      }
      const FlatnessReport r = flatness_decision(associated_foliation(it.f));
      c.check(r.flat, it.name + " flat");
      c.check(r.components.size() == 3, it.name + " three components");
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      c.check(s < it.budget, it.name + " within its time budget");
      std::ostringstream t;
      t.precision(3);
      t << it.name << " " << s << "s";
      times += (times.empty() ? "" : ", ") + t.str();
    }
    c.note(times);
    return c.finish();
  });
}

// ---- 8 ------------------------------------------------------------------------

Outcome cyclic_case(const Options&) {
  return timed(30.0, [] {
    Checker c;
    for (unsigned d = 3; d <= 5; ++d) {
      const std::string e = std::to_string(d);
      c.check(flatness_decision(H("y^" + e, "-x^" + e)).flat, "omega_1^" + e + " flat");
      c.check(flatness_decision(H("x^" + e, "-y^" + e)).flat, "omega_2^" + e + " flat");
    }
    for (unsigned d = 3; d <= 4; ++d) {
      const RationalSphereMap f = postcompose(klein_map(1, d), Mobius{1, 1, 1, -1});
      const FlatnessReport r = flatness_decision(associated_foliation(f), numeric());
      c.check(!r.flat, "twisted power map of degree " + std::to_string(d) + " not flat");
      bool certified = false;
      for (const auto& comp : r.components)
        if (!comp.holomorphic && comp.value.numeric && comp.value.tolerance) {
          const Real ten(10.0, comp.value.prec);
          certified = certified || comp.value.numeric->abs() > *comp.value.tolerance * ten;
          c.note("d=" + std::to_string(d) + " S(" + comp.record.label() + ") = " + comp.value.numeric->re.str(12));
        }
      c.check(certified, "nonzero value certified above 10 tol");
    }
    return c.finish();
  });
}

// ---- 9 ------------------------------------------------------------------------

Outcome exact_numeric_agreement(const Options&) {
  return timed(0, [] {
    Checker c;
    std::vector<std::pair<std::string, HomogeneousFoliation>> cases;
    cases.push_back({"k=2 (2,2/3)", H("y^2*(y - x)^2", "(y - 2*x)^2*(3*y - 2*x)^2")});
    cases.push_back({"k=3 (2,2/3)", H("y^3*(y - x)^3", "(y - 2*x)^3*(3*y - 2*x)^3")});
    cases.push_back({"k=3 (2,1/2)", H("y^3*(y - x)^3", "(y - 2*x)^3*(2*y - x)^3")});
    for (unsigned k = 2; k <= 4; ++k) cases.push_back({"f2 k=" + std::to_string(k), associated_foliation(klein_map(2, k))});
    cases.push_back({"f3", associated_foliation(klein_map(3, 0, parse_field("t^2 + 3")))});
    cases.push_back({"f4", associated_foliation(klein_map(4))});
    cases.push_back({"f5", associated_foliation(klein_map(5))});
    for (unsigned d = 3; d <= 5; ++d) {
      const std::string e = std::to_string(d);
      cases.push_back({"omega_1^" + e, H("y^" + e, "-x^" + e)});
      cases.push_back({"omega_2^" + e, H("x^" + e, "-y^" + e)});
    }
    for (unsigned d = 3; d <= 4; ++d)
      cases.push_back({"twisted d=" + std::to_string(d),
                       associated_foliation(postcompose(klein_map(1, d), Mobius{1, 1, 1, -1}))});
    const Real tol = Real::exp10(-20, 256);
    int components = 0;
    double worst = 0;
    for (const auto& [name, h] : cases) {
      std::vector<PValue> values;
      if (name.rfind("k=", 0) == 0)
        values.push_back(PValue::of(Frac(0)));
      else
        for (const auto& rec : critical_fibers(h)) values.push_back(rec.value);
      for (const auto& v : values) {
        const CriterionValue e = theorem3_sum(h, v);
        const CriterionValue n = theorem3_sum(h, v, numeric(256));
        const Real diff = (*n.numeric - to_complex(*e.exact, 256)).abs();
        worst = std::max(worst, diff.to_double());
        c.check(diff < tol, name + " at " + v.str() + ": |exact - numeric| = " + diff.str(5));
        c.check(n.zero == e.zero, name + " at " + v.str() + ": verdicts");
        ++components;
      }
    }
    std::ostringstream s;
    s << components << " components, max deviation " << worst;
    c.note(s.str());
    return c.finish();
  });
}

// ---- 10 -----------------------------------------------------------------------

Outcome trace_properties(const Options& o) {
  const int n = count(o, 1000);
  return timed(60.0, [n] {
    Checker c;
    testgen::Rng rng(1010);
    const FieldPtr sqrt2 = parse_field("t^2 - 2");
    const MPoly z = MPoly::var("z");
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const FieldPtr field = i % 4 == 3 ? sqrt2 : nullptr;
      const MPoly theta = field ? P("theta", {}, field) : MPoly(0);
      auto rand_poly = [&](int deg) {
        MPoly f;
        for (int k = 0; k <= deg; ++k)
          f += (MPoly(testgen::uniform(rng, -5, 5)) + theta.scaled(Algebraic(testgen::uniform(rng, -2, 2)))) * z.pow(k);
        return f;
      };
      const int deg = static_cast<int>(testgen::uniform(rng, 1, 6));
      UPoly m;
      for (;;) {
        m = UPoly::from_mpoly(rand_poly(deg - 1) + z.pow(deg), "z");
        if (gcd(m, m.derivative()).degree() == 0) break;
      }
      auto rand_frac = [&]() {
        for (;;) {
          const MPoly num = rand_poly(static_cast<int>(testgen::uniform(rng, 0, 4)));
          const MPoly den = rand_poly(static_cast<int>(testgen::uniform(rng, 0, 2)));
          if (den.is_zero()) continue;
          if (gcd(UPoly::from_mpoly(den, "z"), m).degree() > 0) continue;
          return Frac(num, den);
        }
      };
      const Frac g1 = rand_frac(), g2 = rand_frac();
      const Frac t1 = trace_sum(g1, "z", m), t2 = trace_sum(g2, "z", m);
      const Frac a = testgen::small_rational(rng), b = testgen::small_rational(rng);
      c.check(trace_sum(a * g1 + b * g2, "z", m) == a * t1 + b * t2, "linearity, instance " + std::to_string(i));
      c.check(trace_sum(Frac(1), "z", m) == Frac(static_cast<long>(m.degree())), "trace of 1");

      const Embedding e(field, 256);
      Complex sum(256);
      const auto num = e.coeffs(UPoly::from_mpoly(g1.num(), "z"));
      const auto den = e.coeffs(UPoly::from_mpoly(g1.den(), "z"));
      for (const auto& r : numeric_roots(e.coeffs(m))) sum += horner(num, r.z) / horner(den, r.z);
      const Complex exact = t1.is_zero() ? Complex(256) : e(t1.constant_value());
      const double rel = ((sum - exact).abs() / Real::max(Real(1.0, 256), exact.abs())).to_double();
      worst = std::max(worst, rel);
      c.check(rel < 1e-10, "numeric trace, instance " + std::to_string(i));
    }
    std::ostringstream s;
    s << n << " instances, max relative deviation " << worst;
    c.note(s.str());
    return c.finish();
  });
}

// ---- 11 -----------------------------------------------------------------------

Outcome naturality(const Options& o) {
  const int n = count(o, 20);
  return timed(30.0, [n] {
    Checker c;
    testgen::Rng rng(1111);
    const Frac X = Frac::var("x"), Y = Frac::var("y");
    for (int i = 0; i < n; ++i) {
      const unsigned d = i % 2 == 0 ? 3 : 4;
      std::vector<Frac> slopes;
      while (slopes.size() < d) {
        const MPoly num = random_xy_poly(rng, 2);
        const MPoly den = random_xy_poly(rng, 1, 2);
        if (den.is_zero()) continue;
        const Frac s(num, den);
        if (std::find(slopes.begin(), slopes.end(), s) == slopes.end()) slopes.push_back(s);
      }
      long a, b, cc, f;
      do {
        a = testgen::uniform(rng, -3, 3);
        b = testgen::uniform(rng, -3, 3);
        cc = testgen::uniform(rng, -3, 3);
        f = testgen::uniform(rng, -3, 3);
      } while (a * f - b * cc == 0);
      const Frac e(testgen::uniform(rng, -3, 3)), g(testgen::uniform(rng, -3, 3));
      const Frac PX = Frac(a) * X + Frac(b) * Y + e, PY = Frac(cc) * X + Frac(f) * Y + g;
      // phi^*(dy - l dx) is proportional to dy - l' dx.
      std::vector<Frac> pulled;
      bool ok = true;
      for (const auto& s : slopes) {
        const Frac sp = s.substitute({{"x", PX}, {"y", PY}});
        const Frac den = Frac(f) - Frac(b) * sp;
        if (den.is_zero()) ok = false;
        if (!ok) break;
        pulled.push_back((Frac(a) * sp - Frac(cc)) / den);
      }
      if (!ok) {
        --i;
        continue;
      }
      const TwoForm K = curvature(eta_full(slopes));
      const TwoForm Kp = curvature(eta_full(pulled));
      c.check(Kp == pullback(K, PX, PY), "instance " + std::to_string(i));
    }
    c.note(std::to_string(n) + " affine maps on 3- and 4-webs");
    return c.finish();
  });
}

const std::vector<Entry>& all() {
  static const std::vector<Entry> entries{
      {1, "discriminant golden values", discriminants},
      {2, "smoothness golden values", smoothness},
      {3, "fundamental form golden value", eta_golden},
      {4, "full criterion self-consistency", full_criterion_consistency},
      {5, "barycenter equivalence", barycenter_equivalence},
      {6, "two-line inflection example", two_line_example},
      {7, "Galois suite", galois_suite},
      {8, "cyclic case", cyclic_case},
      {9, "exact/numeric agreement", exact_numeric_agreement},
      {10, "trace sum properties", trace_properties},
      {11, "naturality of the curvature", naturality},
  };
  return entries;
}

}  // namespace criteria
