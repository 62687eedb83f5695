#pragma once

#include <vector>

#include "webcurv/upoly.hpp"

namespace webcurv {

// The roots of a monic squarefree modulus m, all of multiplicity nu.
struct RootClass {
  UPoly m;
  unsigned nu = 1;
  int count() const { return m.degree(); }
};

struct RootClassList {
  Frac lead;  // C = lead * prod m_i^nu_i
  std::vector<RootClass> classes;
};

// Multiplicity-graded squarefree classes of C (no irreducible splitting).
RootClassList root_classes(const UPoly& c);

// K[z]/(m) for a monic squarefree m. Elements are UPolys of degree < deg m.
class ResidueRing {
 public:
  explicit ResidueRing(UPoly m);

  const UPoly& modulus() const { return m_; }
  int degree() const { return m_.degree(); }

  UPoly reduce(const UPoly& a) const;
  UPoly mul(const UPoly& a, const UPoly& b) const;
  // Throws Error(kInput) naming the common factor when a is a zero divisor.
  UPoly inverse(const UPoly& a) const;
  // Embeds a rational function in z (denominator coprime to m).
  UPoly from_frac(const Frac& g, const Symbol& z) const;
  // Sum of the element over the roots of m.
  Frac trace(const UPoly& a) const;
  // Newton power sums p_0 .. p_{deg m - 1} of the roots.
  const std::vector<Frac>& power_sums() const { return power_sums_; }

 private:
  UPoly m_;
  std::vector<Frac> power_sums_;
};

// Sum of g(r) over the roots r of m, with g a rational function in z.
Frac trace_sum(const Frac& g, const Symbol& z, const UPoly& m);

// Taylor coefficients c_0..c_k of C around the generic root of rc.m, as
// residues. The first nu must vanish and c_nu must be invertible.
std::vector<UPoly> local_taylor(const UPoly& c, const RootClass& rc, unsigned k);

}  // namespace webcurv
