#include "webcurv/roots.hpp"

#include "webcurv/error.hpp"

namespace webcurv {

RootClassList root_classes(const UPoly& c) {
  RootClassList out;
  for (auto& f : squarefree(c, &out.lead)) out.classes.push_back({std::move(f.factor), f.multiplicity});
  return out;
}

ResidueRing::ResidueRing(UPoly m) : m_(std::move(m)) {
  ensure(m_.degree() >= 1, ErrorCode::kInternal, "residue ring modulus must have positive degree");
  m_ = m_.monic();
  // Newton: p_k + a_{n-1} p_{k-1} + ... + a_{n-k+1} p_1 + k a_{n-k} = 0.
  const int n = m_.degree();
  power_sums_.assign(static_cast<std::size_t>(n), Frac());
  power_sums_[0] = Frac(static_cast<long>(n));
  for (int k = 1; k < n; ++k) {
    Frac s = m_.coeff(n - k) * Frac(static_cast<long>(k));
    for (int i = 1; i < k; ++i) s += m_.coeff(n - i) * power_sums_[k - i];
    power_sums_[k] = -s;
  }
}

UPoly ResidueRing::reduce(const UPoly& a) const {
  if (a.degree() < m_.degree()) return a;
  return rem(a, m_);
}

UPoly ResidueRing::mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }

UPoly ResidueRing::inverse(const UPoly& a) const {
  UPoly s, t;
  const UPoly g = ext_gcd(reduce(a), m_, s, t);
  if (g.degree() != 0)
    raise(ErrorCode::kInput, "element is a zero divisor modulo the root class; common factor " + g.str("z"));
  return reduce(s);
}

UPoly ResidueRing::from_frac(const Frac& g, const Symbol& z) const {
  // g = N/D with N, D polynomials in z over the remaining symbols.
  const UPoly num = UPoly::from_mpoly(g.num(), z);
  const UPoly den = UPoly::from_mpoly(g.den(), z);
  return mul(num, inverse(den));
}

Frac ResidueRing::trace(const UPoly& a) const {
  const UPoly r = reduce(a);
  Frac s;
  for (int j = 0; j <= r.degree(); ++j)
    if (!r.coeff(j).is_zero()) s += r.coeff(j) * power_sums_[static_cast<std::size_t>(j)];
  return s;
}

Frac trace_sum(const Frac& g, const Symbol& z, const UPoly& m) {
  const ResidueRing ring(m);
  return ring.trace(ring.from_frac(g, z));
}

std::vector<UPoly> local_taylor(const UPoly& c, const RootClass& rc, unsigned k) {
  const ResidueRing ring(rc.m);
  std::vector<UPoly> out;
  out.reserve(k + 1);
  for (unsigned j = 0; j <= k; ++j) out.push_back(ring.reduce(c.hasse(j)));
  for (unsigned j = 0; j < rc.nu && j <= k; ++j)
    ensure(out[j].is_zero(), ErrorCode::kInput, "Taylor coefficient below the declared multiplicity is nonzero");
  if (rc.nu <= k) ring.inverse(out[rc.nu]);
  return out;
}

}  // namespace webcurv
