#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "webcurv/forms.hpp"
#include "webcurv/numeric.hpp"
#include "webcurv/roots.hpp"

namespace webcurv {

// A d-web in one affine chart, as the implicit equation F(x, y, p) = 0
// with p = dy/dx. F is squarefree as a polynomial in p.
struct ImplicitWeb {
  MPoly F;
  unsigned d = 0;
  MPoly a0;              // coefficient of p^d
  bool reduced = false;  // a repeated factor in p was removed
};

// Takes the squarefree part of F in p over K(x, y).
ImplicitWeb make_web(const MPoly& F);

struct WebDiscriminant {
  MPoly value;  // (-1)^(d(d-1)/2) Res_p(F, F_p) / a0
  Algebraic unit;
  std::vector<MFactor> support;  // value = unit * prod factor^multiplicity
};
WebDiscriminant web_discriminant(const ImplicitWeb& w);

// Affine change of chart. Old coordinates are given as functions of the
// new ones, so a point (x', y') of the new chart is (x(x',y'), y(x',y')).
struct ChartChange {
  enum class Kind { kIdentity, kTranslate, kShear, kSwap };
  Kind kind = Kind::kIdentity;
  Frac x = Frac::var("x");
  Frac y = Frac::var("y");
  std::string describe() const;
};

struct NormalizedWeb {
  ImplicitWeb web;
  ChartChange change;
};

// Moves the line {line = 0} to {y = 0}. The line must have total degree 1
// in x and y with constant coefficients. Vertical lines swap x and y, which
// acts on the fiber coordinate as p -> 1/p.
NormalizedWeb normalize_component(const ImplicitWeb& w, const MPoly& line);

// Everything below works along D = {y = 0}.

// Slopes of W over D sharing a multiplicity: the roots (in p, over K(x)) of
// a monic squarefree m. Linear classes carry their slope explicitly.
struct SlopeClass {
  UPoly m;
  unsigned nu = 1;
  std::optional<Frac> phi;
  int count() const { return m.degree(); }
};

struct SlopeSpectrum {
  Frac lead;  // F(x, 0, p) = lead * prod m^nu
  std::vector<SlopeClass> classes;
  unsigned degree_drop = 0;  // d - deg_p F(x, 0, p)
};

// Squarefree classes of F(x, 0, p), with linear factors split off whenever
// the coefficients are free of parameters.
SlopeSpectrum slope_spectrum(const ImplicitWeb& w);

// If some slope is infinite along D (a0 vanishes there), replaces W by its
// image under (x, y) -> (x + s y, y) for the smallest s >= 1 making every
// slope finite. D is preserved. Returns s, or 0 when nothing was done.
unsigned make_slopes_finite(ImplicitWeb& w);

struct SmoothnessEntry {
  SlopeClass slope;
  // Partials of F at (x, 0, slope), as residues modulo the class.
  UPoly dx, dy, dp;
  bool smooth = true;
  // Points of D where F_y vanishes on a rational multiple slope.
  std::optional<MPoly> vanishing_locus;
};

struct SmoothnessReport {
  bool smooth = true;
  unsigned shear = 0;  // see make_slopes_finite
  std::vector<SmoothnessEntry> entries;
};
SmoothnessReport smooth_along(const ImplicitWeb& w);

// psi for a rational slope of multiplicity >= 2, computed term by term from
// the explicit slopes. Requires every class to be linear.
Frac psi_alpha(const ImplicitWeb& w, const SlopeSpectrum& s, std::size_t alpha);

struct Verdict {
  bool holomorphic = false;
  std::string rule;
  // Named rational functions whose vanishing decides the verdict.
  std::vector<std::pair<std::string, Frac>> witnesses;
  // theta with eta(W) - theta / y holomorphic along D (full criterion only).
  std::optional<OneForm> residue;
  unsigned shear = 0;
};

// Holomorphy of K(W) along D from the psi data of every multiple class.
Verdict theorem1_criterion(const ImplicitWeb& w);
// Shape with a single multiple slope phi0: holomorphic iff phi0 = 0 or psi = 0.
Verdict corollary_criterion(const ImplicitWeb& w);
// Uniform multiplicity: nu = 2 is unconditional, nu >= 3 uses rho.
Verdict uniform_criterion(const ImplicitWeb& w);
// Picks the most specific applicable rule.
Verdict criterion(const ImplicitWeb& w);

// Barycenter of the slopes `others` with respect to phi0; nullopt when the
// barycenter direction is vertical.
std::optional<Frac> barycenter(const Frac& phi0, const std::vector<Frac>& others);

// Fundamental form of the 3-web dy - lambda_l dx.
OneForm eta3(const Frac& l1, const Frac& l2, const Frac& l3);
// Same web given by 1-forms a dx + b dy, where eta picks up d log(b1 b2 b3).
OneForm eta3_forms(const OneForm& w1, const OneForm& w2, const OneForm& w3);
// Sum of eta3 over all triples of a completely decomposable web.
OneForm eta_full(const std::vector<Frac>& slopes);
TwoForm curvature(const OneForm& eta);
bool is_flat(const std::vector<Frac>& slopes);

// eta(W) at a point off the discriminant, from the numeric branches of
// F(x0, y0, p) and their implicit first derivatives.
struct NumericOneForm {
  Complex a, b;
};
NumericOneForm numeric_eta(const ImplicitWeb& w, const Complex& x0, const Complex& y0, const RootOptions& opt = {});

}  // namespace webcurv
