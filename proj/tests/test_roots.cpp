#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "webcurv/error.hpp"
#include "webcurv/numeric.hpp"
#include "webcurv/roots.hpp"

using namespace webcurv;
using testing_util::P;

namespace {

UPoly U(const std::string& s) { return UPoly::from_mpoly(P(s), "z"); }

double dist(const Complex& a, double re, double im) {
  const double dr = a.re.to_double() - re, di = a.im.to_double() - im;
  return std::sqrt(dr * dr + di * di);
}

}  // namespace

TEST_CASE("root classes") {
  RootClassList rc = root_classes(U("z^3"));
  REQUIRE(rc.classes.size() == 1);
  CHECK(rc.classes[0].nu == 3);
  CHECK(rc.classes[0].m == U("z"));

  rc = root_classes(U("4*z^2"));
  REQUIRE(rc.classes.size() == 1);
  CHECK(rc.classes[0].nu == 2);
  CHECK(rc.lead == Frac(4));

  // Numerator of f5 over 0: (z^20 - 228 z^15 + 494 z^10 + 228 z^5 + 1)^3.
  rc = root_classes(U("(z^20 - 228*z^15 + 494*z^10 + 228*z^5 + 1)^3"));
  REQUIRE(rc.classes.size() == 1);
  CHECK(rc.classes[0].nu == 3);
  CHECK(rc.classes[0].count() == 20);

  rc = root_classes(U("z^2*(z-1)^3*(z+2)*(z^2+1)^3"));
  int total = 0;
  for (const auto& c : rc.classes) total += static_cast<int>(c.nu) * c.count();
  CHECK(total == 12);
}

TEST_CASE("trace sums") {
  CHECK(trace_sum(Frac(P("z^2")), "z", U("z^2+1")) == Frac(-2));
  CHECK(trace_sum(testing_util::R("1/z"), "z", U("z^2-2")) == Frac(0));
  CHECK(trace_sum(Frac(1), "z", U("z^5 + 3*z - 7")) == Frac(5));
  CHECK_THROWS_AS(trace_sum(testing_util::R("1/(z-1)"), "z", U("z^2-1")), Error);
}

TEST_CASE("local taylor") {
  const UPoly c = U("z^2*(z-1)");
  auto t = local_taylor(c, {U("z"), 2}, 3);
  CHECK(t[2] == UPoly(Frac(-1)));
  CHECK(t[3] == UPoly(Frac(1)));
  t = local_taylor(U("(z-1)^3"), {U("z-1"), 3}, 4);
  CHECK(t[3] == UPoly(Frac(1)));
  CHECK(t[4].is_zero());
  CHECK_THROWS_AS(local_taylor(U("z^2*(z-1)"), {U("z"), 1}, 2), Error);
}

TEST_CASE("numeric roots") {
  auto r = numeric_roots(U("z^2+1"));
  REQUIRE(r.size() == 2);
  CHECK(Real::abs(r[0].z.im + Real(1.0, 256)) < Real::exp10(-60, 256));
  CHECK(r[0].radius < Real::exp10(-60, 256));

  // w1..w4 = 57 -+ 25 sqrt5 +- 5 sqrt(255 -+ 114 sqrt5).
  r = numeric_roots(U("z^4 - 228*z^3 + 494*z^2 + 228*z + 1"));
  REQUIRE(r.size() == 4);
  const double s5 = std::sqrt(5.0);
  std::vector<double> w = {57 - 25 * s5 + 5 * std::sqrt(255 - 114 * s5), 57 - 25 * s5 - 5 * std::sqrt(255 - 114 * s5),
                           57 + 25 * s5 + 5 * std::sqrt(255 + 114 * s5), 57 + 25 * s5 - 5 * std::sqrt(255 + 114 * s5)};
  std::sort(w.begin(), w.end());
  for (int i = 0; i < 4; ++i) {
    CHECK(dist(r[i].z, w[i], 0) < 1e-9 * std::max(1.0, std::abs(w[i])));
    CHECK(r[i].z.im.to_double() == doctest::Approx(0).epsilon(1e-30));
  }

  r = numeric_roots(U("(z-1)*(z-2)*(z-3)*(z-4)*(z-5)*(z-6)*(z-7)*(z-8)*(z-9)*(z-10)"));
  REQUIRE(r.size() == 10);
  for (int j = 0; j < 10; ++j) {
    CHECK(Real::abs(r[j].z.re - Real(j + 1.0, 256)) < Real::exp10(-30, 256));
    CHECK(r[j].radius < Real::exp10(-30, 256));
  }
  CHECK_THROWS_AS(numeric_roots(U("(z-1)^2")), Error);
}

TEST_CASE("numeric fibers") {
  const Embedding e(nullptr, 256);
  auto cl = numeric_fibers(e.coeffs(U("z^3")), e.coeffs(U("1")), Complex(256));
  REQUIRE(cl.size() == 1);
  CHECK(cl[0].multiplicity == 3);

  // z^3 + z at the critical point i/sqrt3 takes the value 2i/(3 sqrt3).
  Complex w(Real(256), Real(2.0, 256) / (Real(3.0, 256) * Real::sqrt(Real(3.0, 256))));
  cl = numeric_fibers(e.coeffs(U("z^3+z")), e.coeffs(U("1")), w);
  REQUIRE(cl.size() == 2);
  std::vector<unsigned> mult = {cl[0].multiplicity, cl[1].multiplicity};
  std::sort(mult.begin(), mult.end());
  CHECK(mult == std::vector<unsigned>{1, 2});

  // f2 with k = 3 over the value 1: three double points.
  cl = numeric_fibers(e.coeffs(U("(z^3+1)^2")), e.coeffs(U("4*z^3")), Complex(Real(1.0, 256), Real(256)));
  REQUIRE(cl.size() == 3);
  for (const auto& c : cl) CHECK(c.multiplicity == 2);
}

TEST_CASE("embedding picks the root with largest real part, then imaginary") {
  const FieldPtr f = parse_field("t^2+3");
  const Embedding e(f, 256);
  const Complex t = e(Algebraic::theta(f));
  CHECK(std::abs(t.re.to_double()) < 1e-60);
  CHECK(t.im.to_double() == doctest::Approx(std::sqrt(3.0)));
}
