#include <doctest.h>

#include <chrono>

#include "generators.hpp"
#include "helpers.hpp"
#include "webcurv/error.hpp"
#include "webcurv/foliation.hpp"

using namespace webcurv;
using testing_util::P;
using testing_util::R;

namespace {

HomogeneousFoliation H(const std::string& a, const std::string& b, const std::vector<std::string>& params = {}) {
  return make_foliation(P(a, params), P(b, params));
}

Frac exact_sum(const HomogeneousFoliation& h, const PValue& v) {
  const CriterionValue c = theorem3_sum(h, v);
  REQUIRE(c.exact);
  return *c.exact;
}

AnalysisOptions numeric_opts(mpfr_prec_t prec = 256) {
  AnalysisOptions o;
  o.mode = Mode::kNumeric;
  o.prec = prec;
  return o;
}

}  // namespace

TEST_CASE("foliation construction checks") {
  CHECK(H("x^3", "y^3").d == 3);
  CHECK_THROWS_AS(H("x^3 + y", "y^3"), Error);
  CHECK_THROWS_AS(H("x^2", "y^3"), Error);
  CHECK_THROWS_AS(H("x^2*y", "x*y^2"), Error);
  // A common factor x would be invisible after setting x = 1.
  CHECK_THROWS_AS(H("x*y^2", "x^3"), Error);
}

TEST_CASE("Gauss map and associated foliation are inverse") {
  const RationalSphereMap f = make_map(P("x^3 - 2*x*y^2"), P("y^3 + x^2*y"));
  const HomogeneousFoliation h = associated_foliation(f);
  const RationalSphereMap g = gauss_map(h);
  CHECK(g.A == f.A);
  CHECK(g.B == f.B);
  // f(z) is the slope of the leaves crossing [1 : z].
  const Frac fz = f.dehomogenized();
  const Frac slope = -Frac(dehomogenize(h.A).to_mpoly("z")) / Frac(dehomogenize(h.B).to_mpoly("z"));
  CHECK(fz == slope);
  CHECK(same_map(f, make_map(P("2*x^3 - 4*x*y^2"), P("2*y^3 + 2*x^2*y"))));
}

TEST_CASE("fiber records add up to the degree") {
  const HomogeneousFoliation h = H("y^4 + x^4", "x^4 - y^4");
  for (const auto& rec : critical_fibers(h)) CHECK(rec.degree() == h.d);
  const CriticalValueRecord r = fiber_record(h, PValue::of(Frac(5)));
  CHECK(r.degree() == 4);
  CHECK(r.critical_points() == 0);
  const CriticalValueRecord at_inf = fiber_record(h, PValue::inf());
  CHECK(at_inf.degree() == 4);
}

TEST_CASE("radial and power foliations are flat") {
  for (unsigned d = 3; d <= 5; ++d) {
    const std::string e = std::to_string(d);
    const HomogeneousFoliation w2 = H("x^" + e, "-y^" + e);
    const FlatnessReport r2 = flatness_decision(w2);
    CHECK(r2.flat);
    CHECK(r2.components.size() == 2);
    CHECK(exact_sum(w2, PValue::of(Frac(0))).is_zero());
    CHECK(exact_sum(w2, PValue::inf()).is_zero());

    const FlatnessReport r1 = flatness_decision(H("y^" + e, "-x^" + e));
    CHECK(r1.flat);
    for (const auto& c : r1.components) CHECK(c.kind == ComponentKind::kRadialOnly);
  }
}

TEST_CASE("criterion values of a Moebius twisted power map") {
  // The associated foliation of h o f with f = z^d and h = (z+1)/(z-1).
  const HomogeneousFoliation h3 = H("y^3 + x^3", "x^3 - y^3");
  CHECK(exact_sum(h3, PValue::of(Frac(-1))) == Frac(-2));
  CHECK(exact_sum(h3, PValue::of(Frac(1))) == Frac(-2));
  CHECK(theorem3_sum(h3, PValue::of(Frac(1))).delta == 2);
  CHECK(theorem3_sum(h3, PValue::of(Frac(-1))).delta == 0);
  const HomogeneousFoliation h4 = H("y^4 + x^4", "x^4 - y^4");
  CHECK(exact_sum(h4, PValue::of(Frac(-1))) == Frac(-6));
  CHECK(exact_sum(h4, PValue::of(Frac(1))) == Frac(-6));
  CHECK_FALSE(flatness_decision(h4).flat);

  const CriterionValue n = theorem3_sum(h4, PValue::of(Frac(1)), numeric_opts());
  REQUIRE(n.numeric);
  CHECK(std::abs(n.numeric->re.to_double() + 6) < 1e-15);
  CHECK_FALSE(n.zero);
}

TEST_CASE("two-line inflection example") {
  const std::vector<std::string> params{"l", "m"};
  const HomogeneousFoliation h2 = H("y^2*(y - x)^2", "(y - l*x)^2*(y - m*x)^2", params);
  CHECK(exact_sum(h2, PValue::of(Frac(0))).is_zero());

  const HomogeneousFoliation h3 = H("y^3*(y - x)^3", "(y - l*x)^3*(y - m*x)^3", params);
  const CriticalValueRecord rec = fiber_record(h3, PValue::of(Frac(0)));
  REQUIRE(rec.classes.size() == 2);
  const Frac s = exact_sum(h3, PValue::of(Frac(0)));
  CHECK_FALSE(s.is_zero());
  CHECK(s == R("2*(l + m - 2*l*m)/((l - 1)*(m - 1))", params));

  const Remark33Result r = remark33_shortcut(h3, PValue::of(Frac(0)));
  REQUIRE(r.restriction);
  CHECK(*r.restriction == R("-3*(l - 1)^2*(m - 1)^2*x^5*(l + m - 2*l*m)", params));

  // Specializations: l + m = 2 l m is flat along p = 0.
  const HomogeneousFoliation flat = H("y^3*(y - x)^3", "(y - 2*x)^3*(3*y - 2*x)^3");
  CHECK(exact_sum(flat, PValue::of(Frac(0))).is_zero());
  const HomogeneousFoliation curved = H("y^3*(y - x)^3", "(y - 2*x)^3*(2*y - x)^3");
  CHECK_FALSE(exact_sum(curved, PValue::of(Frac(0))).is_zero());

  AnalysisOptions o;
  CHECK_THROWS_AS(flatness_decision(h3, o), Error);
}

TEST_CASE("exact and numeric criterion values agree") {
  const HomogeneousFoliation h = H("y^3*(y - x)^3 + x^6", "(y - 2*x)^3*(2*y - x)^3");
  for (const PValue& v : {PValue::of(Frac(0)), PValue::of(Frac(-1)), PValue::inf()}) {
    const Frac e = exact_sum(h, v);
    const CriterionValue n = theorem3_sum(h, v, numeric_opts(320));
    REQUIRE(n.numeric);
    const Real diff = (*n.numeric - Complex(Real(e.constant_value().rational(), 320), Real(320))).abs();
    CHECK(diff.to_double() < 1e-20);
  }
}

TEST_CASE("Klein maps are Galois with holomorphic sums") {
  const FieldPtr k3 = parse_field("t^2 + 3");
  const std::vector<std::pair<int, unsigned>> types{{2, 3}, {3, 0}, {4, 0}, {5, 0}};
  for (const auto& [type, n] : types) {
    const RationalSphereMap f = klein_map(type, n, type == 3 ? k3 : nullptr);
    const GaloisReport g = is_galois(f);
    CHECK(g.galois);
    CHECK(galois_group_type(f) == GaloisType::kNonCyclic);
    for (const auto& e : g.portrait) CHECK(e.uniform);
    for (const PValue& v : {PValue::of(Frac(0)), PValue::of(Frac(1)), PValue::inf()}) {
      const Lemma47Result l = lemma47_sums(f, v);
      CHECK(l.holomorphic);
    }
  }
  CHECK(klein_map(4).d == 24);
  CHECK(klein_map(5).d == 60);
  CHECK(galois_group_type(klein_map(1, 5)) == GaloisType::kCyclic);
  CHECK_THROWS_AS(klein_map(3), Error);
}

TEST_CASE("icosahedral foliation is flat") {
  const auto t0 = std::chrono::steady_clock::now();
  const FlatnessReport r = flatness_decision(associated_foliation(klein_map(5)));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.flat);
  CHECK(r.components.size() == 3);
  CHECK(secs < 120);
}

TEST_CASE("non-Galois map") {
  const RationalSphereMap f = make_map(P("x^3 + x*y^2"), P("y^3"));
  AnalysisOptions o = numeric_opts();
  const GaloisReport g = is_galois(f, o);
  CHECK_FALSE(g.galois);
  CHECK_THROWS_AS(galois_group_type(f, o), Error);
}

namespace {

struct Instance {
  HomogeneousFoliation h;
  Frac p0;
  std::vector<std::pair<Frac, unsigned>> fiber;
};

// Random fiber over a random value: some multiple points, sometimes the
// fixed direction r = p0 among them.
Instance random_instance(testgen::Rng& rng) {
  const unsigned d = static_cast<unsigned>(testgen::uniform(rng, 3, 6));
  const Frac p0 = testgen::small_rational(rng, 3, 2);
  std::vector<unsigned> nus;
  unsigned left = d;
  while (left > 0) {
    const unsigned nu = static_cast<unsigned>(testgen::uniform(rng, 1, std::min<long>(left, 4)));
    nus.push_back(nu);
    left -= nu;
  }
  if (*std::max_element(nus.begin(), nus.end()) < 2) nus = {2, d - 2};
  std::vector<Frac> roots = testgen::distinct_rationals(rng, nus.size());
  if (testgen::uniform(rng, 0, 3) == 0 && std::find(roots.begin(), roots.end(), p0) == roots.end()) roots[0] = p0;
  Instance in;
  in.p0 = p0;
  for (std::size_t i = 0; i < nus.size(); ++i) in.fiber.emplace_back(roots[i], nus[i]);
  in.h = testgen::foliation_with_fiber(rng, d, p0, in.fiber);
  return in;
}

std::vector<unsigned> sorted_nus(const CriticalValueRecord& r) {
  std::vector<unsigned> out;
  for (const auto& c : r.classes)
    for (int k = 0; k < c.count(); ++k) out.push_back(c.nu);
  if (r.nu_infinity > 0) out.push_back(r.nu_infinity);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("criterion routes agree on random rational fibers") {
  testgen::Rng rng(20240611);
  int zeros = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance in = random_instance(rng);
    CAPTURE(in.h.A.str());
    CAPTURE(in.h.B.str());
    CAPTURE(in.p0.str());
    const PValue v = PValue::of(in.p0);
    const CriticalValueRecord rec = fiber_record(in.h, v);
    CHECK(rec.degree() == in.h.d);
    for (const auto& c : rec.classes)
      CHECK(c.fixed == (c.m.degree() == 1 && -c.m.coeff(0) == in.p0));

    const Frac S = exact_sum(in.h, v);
    zeros += S.is_zero();
    const CriterionValue n = theorem3_sum(in.h, v, numeric_opts());
    REQUIRE(n.numeric);
    const Complex se(Real(S.constant_value().rational(), 256), Real(256));
    CHECK((*n.numeric - se).abs().to_double() < 1e-20);
    CHECK(n.zero == S.is_zero());

    // The dual web along the component.
    const ImplicitWeb w = normalized_legendre(in.h, in.p0);
    CHECK(smooth_along(w).smooth);
    CHECK(theorem1_criterion(w).holomorphic == S.is_zero());

    // Linear conjugation.
    LinearMap m{testgen::small_rational(rng), testgen::small_rational(rng), testgen::small_rational(rng),
                testgen::small_rational(rng)};
    if ((m.m00 * m.m11 - m.m01 * m.m10).is_zero()) m = {1, 1, 0, 1};
    const HomogeneousFoliation g = linear_conjugate(in.h, m);
    const PValue gv = induced_value(m, v);
    CHECK(sorted_nus(fiber_record(g, gv)) == sorted_nus(rec));
    const CriterionValue cg = theorem3_sum(g, gv);
    CHECK(cg.zero == S.is_zero());

    if (const auto u = rec.uniform_nu(); u && *u >= 3) CHECK(remark33_shortcut(in.h, v).holomorphic == S.is_zero());

    std::vector<const FiberClass*> critical;
    for (const auto& c : rec.classes)
      if (!c.fixed && c.nu >= 2) critical.push_back(&c);
    if (critical.size() == 1 && critical[0]->count() == 1) {
      const Frac r = -critical[0]->m.coeff(0);
      CHECK(corollary37_check(in.h, -r, Frac(1), critical[0]->nu).holomorphic == S.is_zero());
    }
  }
  // Fibers whose only multiple point is fixed give zero.
  CHECK(zeros > 0);
}

TEST_CASE("uniform shortcut and the single-line corollary") {
  testgen::Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Frac> r = testgen::distinct_rationals(rng, 2);
    const Frac p0 = testgen::small_rational(rng);
    const HomogeneousFoliation h = testgen::foliation_with_fiber(rng, 6, p0, {{r[0], 3}, {r[1], 3}});
    const Remark33Result rr = remark33_shortcut(h, PValue::of(p0));
    CHECK(rr.holomorphic == exact_sum(h, PValue::of(p0)).is_zero());
    CHECK(rr.nu == 3);
  }
  // Maximal inflection: omega_2^d at the line x = 0 on the component p = inf.
  const HomogeneousFoliation w2 = H("x^4", "-y^4");
  const Corollary37Result c = corollary37_check(w2, Frac(1), Frac(0), 4);
  CHECK(c.holomorphic);
  // Two-line example: line y = x.
  const std::vector<std::string> params{"l", "m"};
  const HomogeneousFoliation h3 = H("y^3*(y - x)^3", "(y - l*x)^3*(y - m*x)^3", params);
  const Corollary37Result lx = corollary37_check(h3, Frac(-1), Frac(1), 3);
  CHECK(lx.value == R("-3*(l - 1)^5*(m - 1)^5*(l + m - 2*l*m)", params));
  CHECK_THROWS_AS(corollary37_check(h3, Frac(-1), Frac(1), 2), Error);
  CHECK_THROWS_AS(remark33_shortcut(H("y^2*(y - x)^2", "(y - 2*x)^2*(y - 3*x)^2"), PValue::of(Frac(0))), Error);
}

TEST_CASE("fixed flags match the Gauss map numerically") {
  testgen::Rng rng(99);
  const AnalysisOptions o = numeric_opts();
  for (int trial = 0; trial < 10; ++trial) {
    const HomogeneousFoliation h = testgen::random_foliation(rng, 4);
    const Embedding e(nullptr, 256);
    const auto a = e.coeffs(dehomogenize(h.A)), b = e.coeffs(dehomogenize(h.B));
    for (const auto& rec : critical_fibers(h, o)) {
      CHECK(rec.degree() == 4);
      for (const auto& p : rec.points) {
        const Complex g = -horner(a, p.z) / horner(b, p.z);
        CHECK(((g - p.z).abs().to_double() < 1e-30) == p.fixed);
      }
      for (const auto& c : rec.classes)
        for (const auto& root : numeric_roots(e.coeffs(c.m))) {
          const Complex g = -horner(a, root.z) / horner(b, root.z);
          CHECK(((g - root.z).abs().to_double() < 1e-30) == c.fixed);
        }
    }
  }
}

TEST_CASE("Moebius postcompositions of the dihedral map stay holomorphic") {
  testgen::Rng rng(5);
  const RationalSphereMap f = klein_map(2, 3);
  for (int trial = 0; trial < 5; ++trial) {
    Mobius h{testgen::small_rational(rng), testgen::small_rational(rng), testgen::small_rational(rng),
             testgen::small_rational(rng)};
    if ((h.a * h.e - h.b * h.c).is_zero()) h = {1, 2, 3, 4};
    const HomogeneousFoliation hh = associated_foliation(postcompose(f, h));
    for (const PValue& p : {PValue::of(Frac(0)), PValue::of(Frac(1)), PValue::inf()}) {
      REQUIRE(lemma47_sums(f, p).holomorphic);
      const PValue q = h.apply(p);
      const CriterionValue n = theorem3_sum(hh, q, numeric_opts());
      CHECK(n.zero);
      CHECK(theorem3_sum(hh, q).zero);
    }
  }
}

TEST_CASE("Legendre transforms") {
  const HomogeneousFoliation w1 = H("y^3", "-x^3");
  CHECK(legendre_polynomial(w1) == P("(p*x - q)^3 - p*x^3"));
  const ImplicitWeb lw = legendre(w1);
  CHECK(lw.d == 3);
  const std::vector<std::string> params{"l", "m"};
  const HomogeneousFoliation h = H("y^2*(y - x)^2", "(y - l*x)^2*(y - m*x)^2", params);
  CHECK(legendre_polynomial(h) ==
        P("(p*x - q)^2*(p*x - q - x)^2 + p*(p*x - q - l*x)^2*(p*x - q - m*x)^2", params));
  CHECK_THROWS_AS(normalized_legendre(H("x^3", "-y^3"), Frac(0)), Error);
}

TEST_CASE("delta shift avoids the vertical direction") {
  const HomogeneousFoliation w2 = H("x^3", "-y^3");
  const DeltaShift s = delta_shift(w2, Frac(0));
  CHECK(s.delta == 1);
  CHECK(delta_shift(H("y^3 + x^3", "x^3 - y^3"), Frac(-1)).delta == 0);
  const ComponentChart c = component_chart(w2, PValue::inf());
  CHECK(c.swapped);
}

TEST_CASE("portraits under relabeling") {
  const RationalSphereMap f = klein_map(1, 4);
  const RationalSphereMap g = postcompose(f, Mobius{0, 1, 1, 0});
  const GaloisReport a = is_galois(f), b = is_galois(g);
  CHECK(a.galois);
  CHECK(b.galois);
  REQUIRE(a.portrait.size() == 2);
  REQUIRE(b.portrait.size() == 2);
  CHECK(a.portrait[0].value == "0");
  CHECK(a.portrait[0].nus == b.portrait[0].nus);
  CHECK(is_galois(klein_map(2, 1)).galois);
  for (unsigned k = 2; k <= 4; ++k) CHECK(flatness_decision(associated_foliation(klein_map(2, k))).flat);
}
