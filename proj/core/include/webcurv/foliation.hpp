#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "webcurv/numeric.hpp"
#include "webcurv/roots.hpp"
#include "webcurv/web.hpp"

namespace webcurv {

// Directions through the origin are written [1 : z] (the line y = z x), with
// z = infinity standing for the vertical direction x = 0. All univariate
// polynomials below are in the symbol "z".
inline const Symbol kDirection = "z";

// A point of the projective line of slopes: a constant of K or infinity.
struct PValue {
  bool infinite = false;
  Frac value;  // used when finite

  static PValue inf() { return PValue{true, Frac()}; }
  static PValue of(const Frac& v) { return PValue{false, v}; }
  bool operator==(const PValue& o) const { return infinite == o.infinite && (infinite || value == o.value); }
  bool operator!=(const PValue& o) const { return !(*this == o); }
  // "inf" or the value in the input grammar.
  std::string str() const;
};

// f([x:y]) = [A(x,y) : B(x,y)] with A, B coprime, homogeneous of degree d.
struct RationalSphereMap {
  MPoly A, B;
  unsigned d = 0;
  // f(z) = A(z,1) / B(z,1).
  Frac dehomogenized() const;
};
RationalSphereMap make_map(const MPoly& A, const MPoly& B);
// Equality as maps (the pairs agree up to a common scalar).
bool same_map(const RationalSphereMap& f, const RationalSphereMap& g);

// The homogeneous foliation A dx + B dy of degree d.
struct HomogeneousFoliation {
  MPoly A, B;
  unsigned d = 0;
};
// Checks homogeneity and coprimality (the latter includes the direction
// x = 0, which dehomogenizing at x = 1 would hide).
HomogeneousFoliation make_foliation(const MPoly& A, const MPoly& B);

// omega = A_f(y,x) dx - B_f(y,x) dy.
HomogeneousFoliation associated_foliation(const RationalSphereMap& f);
// Inverse of associated_foliation: the map sending the direction [1:z] to
// the slope -A(1,z)/B(1,z) of the leaves crossing it.
RationalSphereMap gauss_map(const HomogeneousFoliation& h);

// z -> (a z + b) / (c z + e).
struct Mobius {
  Frac a = 1, b = 0, c = 0, e = 1;
  PValue apply(const PValue& v) const;
};
RationalSphereMap postcompose(const RationalSphereMap& f, const Mobius& h);

// The linear map (x, y) -> (m00 x + m01 y, m10 x + m11 y).
struct LinearMap {
  Frac m00 = 1, m01 = 0, m10 = 0, m11 = 1;
};
// Pullback of the foliation by the map.
HomogeneousFoliation linear_conjugate(const HomogeneousFoliation& h, const LinearMap& m);
// Slope p0 of the original foliation seen in the conjugated one.
PValue induced_value(const LinearMap& m, const PValue& p0);

// Dehomogenized pieces: A(1,z), B(1,z).
UPoly dehomogenize(const MPoly& f);

enum class Mode { kExact, kNumeric };
const char* mode_name(Mode m);

struct AnalysisOptions {
  Mode mode = Mode::kExact;
  mpfr_prec_t prec = 256;
  int tol_exp = 20;  // numeric zero threshold 10^-tol_exp, capped by the precision
  std::uint64_t seed = 0;
};
// 10^-min(tol_exp, floor(0.15 prec)).
Real zero_tolerance(const AnalysisOptions& opt, mpfr_prec_t prec);

// One squarefree piece of a fiber: the directions [1:r], m(r) = 0, all of
// ramification index nu and all fixed or all non-fixed by the Gauss map.
struct FiberClass {
  UPoly m;
  unsigned nu = 1;
  bool fixed = false;
  int count() const { return m.degree(); }
  // Inflection order of the line y = r x at a non-fixed critical root r.
  unsigned inflection_order() const { return !fixed && nu >= 2 ? nu - 1 : 0; }
};

struct NumericFiberPoint {
  Complex z;
  unsigned nu = 1;
  bool fixed = false;
};

struct CriticalValueRecord {
  bool numeric = false;
  PValue value;                          // exact records
  std::optional<Complex> numeric_value;  // numeric records
  std::vector<FiberClass> classes;       // exact records
  std::vector<NumericFiberPoint> points; // numeric records
  unsigned nu_infinity = 0;              // index at the direction x = 0, 0 if absent
  bool infinity_fixed = false;
  // Leading coefficient of the fiber polynomial A(1,z) + p0 B(1,z), or of
  // B(1,z) when p0 is infinite.
  Frac lead;

  std::string label() const;
  bool has_nonfixed_critical() const;
  // Every fiber point has the same index; returns it.
  std::optional<unsigned> uniform_nu() const;
  // Sum of nu * count over the fiber, d by construction.
  unsigned degree() const;
  // Number of fiber points that are critical.
  unsigned critical_points() const;
};

// Exact fiber of p0. No requirement that p0 be critical.
CriticalValueRecord fiber_record(const HomogeneousFoliation& h, const PValue& p0);

// Every critical value with its fiber, sorted: rational values increasingly,
// other exact values by their rendering, then infinity, then numeric values
// by (re, im). Exact mode throws kExactUnsupported when a critical value is
// not in K; numeric mode records such values numerically.
std::vector<CriticalValueRecord> critical_fibers(const HomogeneousFoliation& h, const AnalysisOptions& opt = {});

// A(x, p x - q) + p B(x, p x - q) in the symbols p, q, x.
MPoly legendre_polynomial(const HomogeneousFoliation& h);
// The same web in ImplicitWeb coordinates: x <- p, y <- q, slope p <- x.
ImplicitWeb legendre(const HomogeneousFoliation& h);
// y B(1, t) + C(t) with t = y + p0 - p x and C(z) = A(1,z) + p0 B(1,z); here
// (x, y, p) stand for q, p - p0 and dp/dq. Requires deg C = d.
ImplicitWeb normalized_legendre(const HomogeneousFoliation& h, const Frac& p0);

struct DeltaShift {
  HomogeneousFoliation h;
  unsigned delta = 0;
  Frac q0;  // the critical value in the new coordinates
};
// Conjugation by (x + delta y, y) with the smallest delta >= 0 keeping the
// value finite and the vertical direction out of the fiber.
DeltaShift delta_shift(const HomogeneousFoliation& h, const Frac& p0);

// The chart where a component {p = p0} is analyzed: infinity is first sent
// to 0 by exchanging x and y, then the vertical direction is cleared.
struct ComponentChart {
  HomogeneousFoliation h;
  Frac q0;
  bool swapped = false;
  unsigned delta = 0;
};
ComponentChart component_chart(const HomogeneousFoliation& h, const PValue& p0);

struct CriterionValue {
  Mode mode = Mode::kExact;
  std::optional<Frac> exact;
  std::optional<Complex> numeric;
  std::optional<Real> tolerance;
  mpfr_prec_t prec = 0;
  bool zero = false;  // the verdict: holomorphic on the component
  bool swapped = false;
  unsigned delta = 0;
};

// Exact: sum over multiple fiber classes of (nu-1) Tr[(q0 - z) psi], psi
// from the Taylor data of the fiber polynomial. Numeric: the sum with the
// P_i, Q_i determinants evaluated at numeric fiber points, certified
// against the zero tolerance (gray zone: one precision doubling, then
// kIndeterminate).
CriterionValue theorem3_sum(const HomogeneousFoliation& h, const PValue& p0, const AnalysisOptions& opt = {});
// Numeric evaluation at a critical value known only numerically.
CriterionValue theorem3_sum_numeric(const HomogeneousFoliation& h, const Complex& p0, const AnalysisOptions& opt = {});

struct Remark33Result {
  unsigned nu = 0;
  Frac sum;
  bool holomorphic = false;
  // With a single non-fixed critical point r: d(omega) restricted to the
  // line y = r x (or x = 0), as a polynomial in the remaining coordinate.
  std::optional<Frac> restriction;
};
// Uniform fiber with nu >= 3; throws kInput otherwise.
Remark33Result remark33_shortcut(const HomogeneousFoliation& h, const PValue& p0);

struct Corollary37Result {
  MPoly P, Q;
  Frac value;  // Q(b, -a; a, b)
  bool holomorphic = false;
};
// T = {a x + b y = 0} with [-a:b] the only non-fixed critical point of its
// fiber and index nu there.
Corollary37Result corollary37_check(const HomogeneousFoliation& h, const Frac& a, const Frac& b, unsigned nu);

enum class ComponentKind { kRadialOnly, kUniformNu2, kTransverseInflection };
const char* component_kind_name(ComponentKind k);

struct ComponentReport {
  CriticalValueRecord record;
  ComponentKind kind = ComponentKind::kTransverseInflection;
  CriterionValue value;
  bool holomorphic = false;
};

struct FlatnessReport {
  std::vector<ComponentReport> components;
  bool flat = false;
  Mode mode = Mode::kExact;
  mpfr_prec_t prec = 0;
};
// Requires d >= 3.
FlatnessReport flatness_decision(const HomogeneousFoliation& h, const AnalysisOptions& opt = {});

struct PortraitEntry {
  std::string value;
  std::vector<unsigned> nus;  // indices over the fiber, sorted decreasingly
  bool uniform = false;
};
struct GaloisReport {
  bool galois = false;
  std::vector<PortraitEntry> portrait;
  unsigned critical_points = 0;
};
GaloisReport is_galois(const RationalSphereMap& f, const AnalysisOptions& opt = {});

enum class GaloisType { kCyclic, kNonCyclic };
const char* galois_type_name(GaloisType t);
// Throws kInput when f is not Galois.
GaloisType galois_group_type(const RationalSphereMap& f, const AnalysisOptions& opt = {});

// Klein's list. Type 1 takes the degree d, type 2 takes k (degree 2k),
// type 3 needs `field` to be Q(theta) with theta^2 + 3 = 0.
RationalSphereMap klein_map(int type, unsigned n = 0, const FieldPtr& field = nullptr);

struct Lemma47Result {
  unsigned nu = 0;
  bool unconditional = false;  // nu = 2
  std::optional<std::array<Frac, 3>> sums;
  bool holomorphic = false;
};
// Uniform fiber of f over p0; sums of b G_x/G, (b G_y - a G_x)/G, a G_y/G
// over the fiber points [a:b] with G = B (p0 finite) or G = A (p0 infinite).
Lemma47Result lemma47_sums(const RationalSphereMap& f, const PValue& p0);

}  // namespace webcurv
