#pragma once

// Random instances shared by the property tests and the acceptance runner.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "webcurv/error.hpp"
#include "webcurv/foliation.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline webcurv::Frac small_rational(Rng& rng, long range = 5, long max_den = 3) {
  const long den = uniform(rng, 1, max_den);
  return webcurv::Frac(uniform(rng, -range, range)) / webcurv::Frac(den);
}

inline webcurv::Frac nonzero_rational(Rng& rng, long range = 5, long max_den = 3) {
  webcurv::Frac r;
  while (r.is_zero()) r = small_rational(rng, range, max_den);
  return r;
}

inline webcurv::UPoly random_upoly(Rng& rng, int degree, long range = 4) {
  std::vector<webcurv::Frac> c(degree + 1);
  for (auto& v : c) v = webcurv::Frac(uniform(rng, -range, range));
  return webcurv::UPoly(std::move(c));
}

// sum_k c_k x^(d-k) y^k.
inline webcurv::MPoly homogenize(const webcurv::UPoly& u, unsigned d) {
  using webcurv::MPoly;
  MPoly out;
  for (int k = 0; k <= u.degree(); ++k) {
    if (u.coeff(k).is_zero()) continue;
    const webcurv::Algebraic c = u.coeff(k).constant_value();
    out += (MPoly::var("x").pow(d - k) * MPoly::var("y").pow(k)).scaled(c);
  }
  return out;
}

// A foliation of degree d whose fiber over p0 is prod (z - r)^nu, with the
// remaining freedom in B(1, z) random. The nu must add up to d.
inline webcurv::HomogeneousFoliation foliation_with_fiber(Rng& rng, unsigned d, const webcurv::Frac& p0,
                                                        const std::vector<std::pair<webcurv::Frac, unsigned>>& fiber) {
  using namespace webcurv;
  UPoly C(Frac(1));
  for (const auto& [r, nu] : fiber) C = C * (UPoly::identity() - UPoly(r)).pow(nu);
  C = C.scaled(nonzero_rational(rng, 3, 1));
  for (int attempt = 0; attempt < 100; ++attempt) {
    const UPoly b = random_upoly(rng, static_cast<int>(d));
    if (b.is_zero()) continue;
    const UPoly a = C - b.scaled(p0);
    try {
      return make_foliation(homogenize(a, d), homogenize(b, d));
    } catch (const Error&) {
      // A and B shared a factor; draw again.
    }
  }
  raise(ErrorCode::kInternal, "could not draw a coprime pair");
}

inline webcurv::HomogeneousFoliation random_foliation(Rng& rng, unsigned d) {
  using namespace webcurv;
  for (int attempt = 0; attempt < 100; ++attempt) {
    try {
      return make_foliation(homogenize(random_upoly(rng, static_cast<int>(d)), d),
                            homogenize(random_upoly(rng, static_cast<int>(d)), d));
    } catch (const Error&) {
    }
  }
  raise(ErrorCode::kInternal, "could not draw a coprime pair");
}

// Distinct rationals.
inline std::vector<webcurv::Frac> distinct_rationals(Rng& rng, std::size_t n, long range = 6) {
  std::vector<webcurv::Frac> out;
  while (out.size() < n) {
    const webcurv::Frac r = small_rational(rng, range, 2);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

}  // namespace testgen
