// Replays the worked examples of the theory against the library.

#include <algorithm>
#include <functional>

#include "app.hpp"
#include "webcurv/error.hpp"
#include "webcurv/parse.hpp"
#include "webcurv/web.hpp"

namespace webcurv::app {
namespace {

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

bool proportional(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return monic_normalize(a) == monic_normalize(b);
}

const PValue kZero = PValue::of(Frac(0));
const PValue kOne = PValue::of(Frac(1));
const std::vector<std::string> kLM{"l", "m"};
const char* kTwoWeb = "(y^2 - x)*p^2 + 2*x*p - x";
const char* kHenaut = "((x^2 - 1)*p + (x - 3)*y^2) * ((x^2 - 1)*p + (x + 3)*y^2) * ((x^2 - 1)*p - 2*x*y^2)";

HomogeneousFoliation two_lines(unsigned k, const std::string& l = "l", const std::string& m = "m") {
  const std::string e = std::to_string(k);
  return H("y^" + e + "*(y - x)^" + e, "(y - " + l + "*x)^" + e + "*(y - " + m + "*x)^" + e, kLM);
}

std::vector<std::string> values_of(const std::vector<CriticalValueRecord>& recs) {
  std::vector<std::string> v;
  for (const auto& r : recs) v.push_back(r.label());
  return v;
}

bool all_zero(const Lemma47Result& r) {
  return r.sums && std::all_of(r.sums->begin(), r.sums->end(), [](const Frac& s) { return s.is_zero(); });
}

struct Check {
  std::string name;
  std::function<bool()> body;
};

std::vector<Check> checks() {
  std::vector<Check> c;
  // Parsing.
  c.push_back({"parse y^3", [] { return P("y^3") == MPoly::var("y").pow(3); }});
  c.push_back({"parse the implicit 2-web", [] {
                 const MPoly p = MPoly::var("p"), x = MPoly::var("x"), y = MPoly::var("y");
                 return P(kTwoWeb) == (y * y - x) * p * p + (x * p).scaled(Algebraic(2)) - x;
               }});
  c.push_back({"parse error offset", [] {
                 try {
                   P("x^");
                 } catch (const Error& e) {
                   return e.code() == ErrorCode::kInput && std::string(e.what()).find("offset 2") != std::string::npos;
                 }
                 return false;
               }});

  // Implicit webs.
  c.push_back({"2-web accepted with d = 2", [] { return make_web(P(kTwoWeb)).d == 2; }});
  c.push_back({"2-web discriminant 4xy^2", [] { return proportional(web_discriminant(make_web(P(kTwoWeb))).value, P("4*x*y^2")); }});
  c.push_back({"cubic discriminant 2916(x^2-1)^8 y^12", [] {
                 return proportional(web_discriminant(make_web(P(kHenaut))).value, P("2916*(x^2 - 1)^8*y^12"));
               }});
  c.push_back({"component x = 0 is swapped to y = 0", [] {
                 return normalize_component(make_web(P(kTwoWeb)), P("x")).change.kind == ChartChange::Kind::kSwap;
               }});
  c.push_back({"2-web smooth along x = 0", [] { return smooth_along(normalize_component(make_web(P(kTwoWeb)), P("x")).web).smooth; }});
  c.push_back({"2-web not smooth along y = 0", [] { return !smooth_along(make_web(P(kTwoWeb))).smooth; }});
  c.push_back({"cubic not smooth along y = 0", [] { return !smooth_along(make_web(P(kHenaut))).smooth; }});
  c.push_back({"2-web along x = 0 has one double slope", [] {
                 // The swap sends the slope 0 to the vertical direction; a shear brings it back.
                 ImplicitWeb w = normalize_component(make_web(P(kTwoWeb)), P("x")).web;
                 const bool vertical = slope_spectrum(w).degree_drop == 2;
                 make_slopes_finite(w);
                 const SlopeSpectrum s = slope_spectrum(w);
                 return vertical && s.classes.size() == 1 && s.classes[0].nu == 2;
               }});

  // Fundamental form.
  c.push_back({"cubic eta", [] {
                 const OneForm eta = eta3_forms({R("(x - 3)*y^2"), R("x^2 - 1")}, {R("(x + 3)*y^2"), R("x^2 - 1")},
                                                {R("-2*x*y^2"), R("x^2 - 1")});
                 return eta.a == R("14*x/(3*(x^2 - 1))") && eta.b == R("4/y - 1/(3*y^2)");
               }});
  c.push_back({"cubic is flat", [] {
                 return is_flat({R("-(x - 3)*y^2/(x^2 - 1)"), R("-(x + 3)*y^2/(x^2 - 1)"), R("2*x*y^2/(x^2 - 1)")});
               }});

  // Holomorphy criteria along y = 0.
  c.push_back({"all multiplicities 2: holomorphic with vanishing derivative sum", [] {
                 const ImplicitWeb w = normalized_legendre(two_lines(2, "2", "2/3"), Frac(0));
                 const Verdict v = theorem1_criterion(w);
                 bool dzero = false;
                 for (const auto& [name, value] : v.witnesses)
                   if (name == "d_sum_psi") dzero = value.is_zero();
                 return v.holomorphic && dzero && uniform_criterion(w).holomorphic;
               }});
  c.push_back({"totally invariant line: holomorphic", [] {
                 return criterion(make_web(P("p^3 + y*p - y*(x + 2)"))).holomorphic;
               }});
  c.push_back({"uniform multiplicity 3: shortcut agrees with the full criterion", [] {
                 bool ok = true;
                 for (const char* m : {"1/2", "2/3"}) {
                   const ImplicitWeb w = normalized_legendre(two_lines(3, "2", m), Frac(0));
                   ok = ok && uniform_criterion(w).holomorphic == theorem1_criterion(w).holomorphic;
                 }
                 return ok;
               }});
  c.push_back({"double slope: criterion equals barycenter invariance", [] {
                 const MPoly p = MPoly::var("p"), x = MPoly::var("x"), y = MPoly::var("y");
                 bool ok = true;
                 // From phi0 = 1 the slopes {2, 2/3} have barycenter 0, so D is
                 // invariant; replacing 2/3 by 3 moves the barycenter off D.
                 int holomorphic = 0;
                 for (const char* other : {"2/3", "3"}) {
                   const Frac phi0 = R("1"), s1 = R("2"), s2 = R(other);
                   const MPoly F = ((p - MPoly(1)).pow(2) - y * (x + MPoly(2))) * (p - MPoly(2) - y) *
                                   (p.scaled(s2.den().constant_value()) - s2.num() + y * x);
                   const ImplicitWeb w = make_web(F);
                   const auto beta = barycenter(phi0, {s1, s2});
                   const bool full = theorem1_criterion(w).holomorphic;
                   holomorphic += full;
                   ok = ok && full == (beta && beta->is_zero());
                 }
                 ok = ok && holomorphic == 1;
                 return ok;
               }});

  // Homogeneous foliations and their Gauss maps.
  c.push_back({"power map z^3 gives y^3 dx - x^3 dy", [] {
                 const HomogeneousFoliation h = associated_foliation(klein_map(1, 3));
                 return proportional(h.A, P("y^3")) && proportional(h.B, P("-x^3")) && (h.A * P("-x^3") == h.B * P("y^3"));
               }});
  c.push_back({"dihedral map k = 2", [] {
                 const RationalSphereMap f = klein_map(2, 2);
                 return same_map(f, make_map(P("(x^2 + y^2)^2"), P("4*x^2*y^2")));
               }});
  c.push_back({"Gauss map of the two-line foliation", [] {
                 const RationalSphereMap g = gauss_map(two_lines(3));
                 return same_map(g, make_map(P("-x^3*(x - y)^3"), P("(x - l*y)^3*(x - m*y)^3", kLM)));
               }});
  c.push_back({"power map critical values {0, inf}, total ramification", [] {
                 const auto recs = critical_fibers(associated_foliation(klein_map(1, 4)));
                 bool ok = values_of(recs) == std::vector<std::string>{"0", "inf"};
                 for (const auto& r : recs) ok = ok && r.uniform_nu() == 4u && r.critical_points() == 1;
                 return ok;
               }});
  c.push_back({"Klein maps have critical values {0, 1, inf}", [] {
                 bool ok = true;
                 for (const auto& f : {klein_map(2, 3), klein_map(3, 0, parse_field("t^2 + 3")), klein_map(4), klein_map(5)})
                   ok = ok && values_of(critical_fibers(associated_foliation(f))) == std::vector<std::string>{"0", "1", "inf"};
                 return ok;
               }});
  c.push_back({"dihedral k = 2 fiber over inf: z with index 2 plus the vertical direction", [] {
                 const CriticalValueRecord r = fiber_record(associated_foliation(klein_map(2, 2)), PValue::inf());
                 return r.classes.size() == 1 && r.classes[0].m == UPoly::identity() && r.classes[0].nu == 2 &&
                        r.nu_infinity == 2;
               }});
  c.push_back({"icosahedral fiber over 0: 20 points of index 3", [] {
                 const CriticalValueRecord r = fiber_record(associated_foliation(klein_map(5)), kZero);
                 int points = 0;
                 for (const auto& cl : r.classes) points += cl.count();
                 return points + (r.nu_infinity ? 1 : 0) == 20 && r.uniform_nu() == 3u;
               }});
  c.push_back({"icosahedral quartic roots", [] {
                 const auto roots = numeric_roots(UPoly::from_mpoly(P("z^4 - 228*z^3 + 494*z^2 + 228*z + 1"), "z"));
                 const Real s5 = Real::sqrt(Real(5.0, 256));
                 std::vector<Real> expect;
                 for (int a : {-1, 1})
                   for (int b : {-1, 1}) {
                     const Real inner = Real(255.0, 256) + Real(static_cast<double>(a), 256) * Real(114.0, 256) * s5;
                     expect.push_back(Real(57.0, 256) + Real(static_cast<double>(a), 256) * Real(25.0, 256) * s5 +
                                      Real(static_cast<double>(b), 256) * Real(5.0, 256) * Real::sqrt(inner));
                   }
                 bool ok = roots.size() == 4;
                 for (const auto& e : expect) {
                   bool hit = false;
                   for (const auto& r : roots)
                     hit = hit || (Real::abs(r.z.re - e) < Real::exp10(-40, 256) && Real::abs(r.z.im) < Real::exp10(-40, 256));
                   ok = ok && hit;
                 }
                 return ok;
               }});
  c.push_back({"dihedral k = 3 fiber over 1: three double points", [] {
                 const CriticalValueRecord r = fiber_record(associated_foliation(klein_map(2, 3)), kOne);
                 return r.uniform_nu() == 2u && r.critical_points() == 3;
               }});
  c.push_back({"two-line fiber over 0: one fixed, one non-fixed, index k", [] {
                 const CriticalValueRecord r = fiber_record(two_lines(3), kZero);
                 return r.classes.size() == 2 && r.classes[0].nu == 3 && r.classes[1].nu == 3 &&
                        r.classes[0].fixed != r.classes[1].fixed;
               }});
  c.push_back({"two-line Legendre polynomial", [] {
                 return legendre_polynomial(two_lines(3)) ==
                        P("(p*x - q)^3*(p*x - q - x)^3 + p*(p*x - q - l*x)^3*(p*x - q - m*x)^3", kLM);
               }});
  c.push_back({"normalized Legendre web is smooth along the component", [] {
                 return smooth_along(normalized_legendre(two_lines(3, "2", "1/2"), Frac(0))).smooth;
               }});
  c.push_back({"two-line normalized web for k = 2 has double slopes", [] {
                 const SlopeSpectrum s = slope_spectrum(normalized_legendre(two_lines(2, "2", "1/2"), Frac(0)));
                 return !s.classes.empty() &&
                        std::all_of(s.classes.begin(), s.classes.end(), [](const SlopeClass& c) { return c.nu == 2; });
               }});
  c.push_back({"two-line k = 2 holomorphic for all parameters", [] { return theorem3_sum(two_lines(2), kZero).zero; }});
  c.push_back({"two-line k = 3 criterion vanishes exactly on l + m = 2lm", [] {
                 const Frac S = *theorem3_sum(two_lines(3), kZero).exact;
                 return proportional(S.num(), P("l + m - 2*l*m", kLM)) && proportional(S.den(), P("(l - 1)*(m - 1)", kLM));
               }});
  c.push_back({"two-line k = 3 restriction of d(omega) to y = x", [] {
                 const Remark33Result r = remark33_shortcut(two_lines(3), kZero);
                 return r.restriction && *r.restriction == R("-3*(l - 1)^2*(m - 1)^2*x^5*(l + m - 2*l*m)", kLM);
               }});
  c.push_back({"uniform index 2 is outside the shortcut and always holomorphic", [] {
                 try {
                   remark33_shortcut(two_lines(2), kZero);
                   return false;
                 } catch (const Error& e) {
                   if (e.code() != ErrorCode::kInput) return false;
                 }
                 return theorem3_sum(two_lines(2, "3", "5"), kZero).zero;
               }});
  c.push_back({"maximal inflection: line invariant agrees with the fiber sum", [] {
                 // Fiber over 1 is the single non-fixed point [1:0] of index 3.
                 const HomogeneousFoliation h = H("y^3 - x^3", "x^3");
                 const CriticalValueRecord r = fiber_record(h, kOne);
                 const Corollary37Result c37 = corollary37_check(h, Frac(0), Frac(1), 3);
                 return r.uniform_nu() == 3u && r.has_nonfixed_critical() && c37.holomorphic == theorem3_sum(h, kOne).zero;
               }});
  c.push_back({"icosahedral sum over 0 vanishes", [] {
                 const CriterionValue v = theorem3_sum(associated_foliation(klein_map(5)), kZero);
                 return v.zero && v.exact && v.exact->is_zero();
               }});
  c.push_back({"y^3 dx - x^3 dy is flat", [] { return flatness_decision(H("y^3", "-x^3")).flat; }});
  c.push_back({"dihedral k = 2 foliation is flat", [] { return flatness_decision(associated_foliation(klein_map(2, 2))).flat; }});
  c.push_back({"icosahedral foliation is flat on 0, 1, inf", [] {
                 const FlatnessReport r = flatness_decision(associated_foliation(klein_map(5)));
                 bool ok = r.flat && r.components.size() == 3;
                 for (const auto& comp : r.components) ok = ok && comp.holomorphic;
                 return ok;
               }});

  // Galois maps.
  c.push_back({"power map is Galois and cyclic", [] {
                 const RationalSphereMap f = klein_map(1, 3);
                 return is_galois(f).galois && galois_group_type(f) == GaloisType::kCyclic;
               }});
  c.push_back({"octahedral map is Galois with index 2 over 1", [] {
                 const RationalSphereMap f = klein_map(4);
                 const GaloisReport g = is_galois(f);
                 bool uniform = true;
                 for (const auto& e : g.portrait) uniform = uniform && e.uniform;
                 return g.galois && uniform && fiber_record(associated_foliation(f), kOne).uniform_nu() == 2u;
               }});
  c.push_back({"dihedral k = 2 is non-cyclic", [] { return galois_group_type(klein_map(2, 2)) == GaloisType::kNonCyclic; }});
  c.push_back({"icosahedral map is non-cyclic", [] { return galois_group_type(klein_map(5)) == GaloisType::kNonCyclic; }});
  c.push_back({"icosahedral degree 60", [] { return klein_map(5).d == 60; }});
  c.push_back({"tetrahedral map: two cubed quartics of degree 12", [] {
                 const RationalSphereMap f = klein_map(3, 0, parse_field("t^2 + 3"));
                 bool ok = f.d == 12;
                 for (const MPoly* g : {&f.A, &f.B}) {
                   const auto sf = squarefree_decomposition(*g);
                   ok = ok && sf.size() == 1 && sf[0].multiplicity == 3 && sf[0].factor.total_degree() == 4;
                 }
                 return ok;
               }});
  c.push_back({"dihedral sums over inf vanish for k >= 3", [] {
                 bool ok = true;
                 for (unsigned k = 3; k <= 5; ++k) ok = ok && all_zero(lemma47_sums(klein_map(2, k), PValue::inf()));
                 return ok;
               }});
  c.push_back({"icosahedral sums over 0 and inf vanish", [] {
                 const RationalSphereMap f = klein_map(5);
                 const Lemma47Result a = lemma47_sums(f, kZero), b = lemma47_sums(f, PValue::inf());
                 return all_zero(a) && all_zero(b) && b.nu == 5;
               }});

  // Command layer.
  c.push_back({"flat command on y^3 dx - x^3 dy", [] {
                 Request req;
                 req.command = "flat";
                 req.inputs = {{"A", "y^3"}, {"B", "-x^3"}};
                 const Outcome o = run(req);
                 return o.exit_code == 0 && o.report["result"]["flat"] == true;
               }});
  c.push_back({"klein 5 piped into flat", [] {
                 Request k;
                 k.command = "klein";
                 k.klein_type = 5;
                 const Outcome ko = run(k);
                 Request f;
                 f.command = "flat";
                 f.piped = ko.report;
                 const Outcome fo = run(f);
                 bool ok = ko.exit_code == 0 && fo.exit_code == 0 && fo.report["result"]["flat"] == true;
                 std::vector<std::string> values;
                 for (const auto& comp : fo.report["result"]["components"]) {
                   values.push_back(comp["value"].get<std::string>());
                   ok = ok && comp["holomorphic"] == true;
                 }
                 return ok && values == std::vector<std::string>{"0", "1", "inf"};
               }});
  return c;
}

}  // namespace

Json selftest() {
  Json list = Json::array();
  int passed = 0, failed = 0;
  for (const auto& check : checks()) {
    Json e{{"name", check.name}};
    try {
      const bool ok = check.body();
      e["pass"] = ok;
      ok ? ++passed : ++failed;
    } catch (const std::exception& ex) {
      e["pass"] = false;
      e["detail"] = ex.what();
      ++failed;
    }
    list.push_back(std::move(e));
  }
  return Json{{"passed", passed}, {"failed", failed}, {"total", passed + failed}, {"checks", list}};
}

}  // namespace webcurv::app
