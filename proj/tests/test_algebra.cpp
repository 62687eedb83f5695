#include <doctest.h>

#include "helpers.hpp"
#include "webcurv/error.hpp"
#include "webcurv/upoly.hpp"

using namespace webcurv;
using testing_util::P;
using testing_util::R;

TEST_CASE("polynomial arithmetic") {
  CHECK(P("(x+y)*(x-y)") == P("x^2 - y^2"));
  CHECK(P("y^3").substitute("y", P("p*x - q")) == P("(p*x-q)^3"));
  const MPoly f = P("(x+1)^10");
  CHECK(f.coeff_in("x", 5) == MPoly(252));
  CHECK(P("x^2*y").derivative("x") == P("2*x*y"));
  CHECK(P("(y^2-x)*p^2 + 2*x*p - x").derivative("p") == P("2*(y^2-x)*p + 2*x"));
  CHECK(MPoly(7).derivative("y").is_zero());
  CHECK(P("x^2 + 3*x*y - 1/2").str() == "x^2 + 3*x*y - 1/2");
}

TEST_CASE("wide exponents") {
  // Exponents too wide to pack into a machine word take the generic path.
  const MPoly a = P("x^300000*y^300000*z^300000*w + 1", {"z", "w"});
  const MPoly b = P("x*y*z*w - 1", {"z", "w"});
  const MPoly ab = a * b;
  CHECK(ab == P("x^300001*y^300001*z^300001*w^2 - x^300000*y^300000*z^300000*w + x*y*z*w - 1", {"z", "w"}));
  CHECK(divide_exact(ab, a) == b);
  CHECK(!divide_exact(ab + MPoly(1), a).has_value());
}

TEST_CASE("degree cap") {
  CHECK_THROWS_AS(P("x^600000") * P("x^600000"), Error);
}

TEST_CASE("univariate gcd") {
  CHECK(gcd(P("z^2-1"), P("z-1")) == P("z-1"));
  CHECK(gcd(P("z^3"), MPoly(-1)) == MPoly(1));
  CHECK(gcd(P("2*z^2+2"), MPoly()) == P("z^2+1"));
  CHECK(gcd(MPoly(), MPoly()).is_zero());
}

TEST_CASE("multivariate gcd") {
  const MPoly a = P("(x+y)*(x-2*y+1)^2*(y-3)");
  const MPoly b = P("(x+y)^2*(x*y+1)*(y-3)");
  CHECK(gcd(a, b) == P("(x+y)*(y-3)"));
  const MPoly c = P("(3*x^2*y - 7*y^3 + 11)^4*(x - 3)^2*(x*y - 5/2)");
  CHECK(gcd(c * P("(x+y^2-1)^3"), c * P("(x-y)^2*(y+4)")) == monic_normalize(c));
  CHECK(gcd(P("lam*x + lam*mu", {"lam", "mu"}), P("x^2 - mu^2", {"mu"})) == P("x + mu", {"mu"}));
}

TEST_CASE("squarefree decomposition") {
  std::vector<SquarefreeFactor> sf = squarefree(UPoly::from_mpoly(P("z^4 - 2*z^3 + z^2"), "z"));
  REQUIRE(sf.size() == 1);
  CHECK(sf[0].multiplicity == 2);
  CHECK(sf[0].factor.to_mpoly("z") == P("z^2 - z"));
  sf = squarefree(UPoly::from_mpoly(P("(z^2+1)^3"), "z"));
  REQUIRE(sf.size() == 1);
  CHECK(sf[0].multiplicity == 3);
  sf = squarefree(UPoly::from_mpoly(P("z^3 - 2"), "z"));
  REQUIRE(sf.size() == 1);
  CHECK(sf[0].multiplicity == 1);
}

TEST_CASE("resultant and discriminant") {
  CHECK(resultant(P("z-a", {"a"}), P("z-b", {"b"}), "z") == P("a-b", {"a", "b"}));
  // Res(f, g) = lc(f)^deg g * prod g(roots of f) = 2*sqrt(x) * 2*(-sqrt(x)).
  CHECK(resultant(P("p^2-x"), P("2*p"), "p") == P("-4*x"));
  CHECK(resultant(P("z^2+z+1"), P("z^2+z+1"), "z").is_zero());
  CHECK(discriminant(P("(y^2-x)*p^2 + 2*x*p - x"), "p") == P("4*x*y^2"));
  CHECK(discriminant(P("p^2-1"), "p") == MPoly(4));
}

TEST_CASE("euler residual") {
  CHECK(euler_residual(P("y^3"), 3).is_zero());
  CHECK(euler_residual(P("x^2+y"), 2) == P("-y"));
  CHECK(euler_residual(P("(x+y)^4"), 4).is_zero());
}

TEST_CASE("rational functions") {
  const Frac f = R("(x^2-1)/(2*x-2)");
  CHECK(f == R("x/2 + 1/2"));
  CHECK(R("1/(x-1) - 1/(x+1)") == R("2/(x^2-1)"));
  CHECK(R("x/y").derivative("y") == R("-x/y^2"));
  // The factor x - 1 is free of y and cancels completely in the derivative.
  CHECK(R("(x+y-1)/((x-1)*y)").derivative("y") == R("-1/y^2"));
  CHECK(R("(x*y^2+1)/((x-1)^2*(y+1))").derivative("x") ==
        R("((x-1)*y^2 - 2*(x*y^2+1))/((x-1)^3*(y+1))"));
  CHECK(R("1/(x+y)").substitute("y", R("1/x")) == R("x/(x^2+1)"));
  CHECK_THROWS_AS(R("1/(x-x)"), Error);
}

TEST_CASE("number field") {
  const FieldPtr f = parse_field("t^2 + 3");
  ParseContext ctx;
  ctx.field = f;
  const MPoly a = parse_polynomial("(1 + theta)^2", ctx);
  CHECK(a == parse_polynomial("-2 + 2*theta", ctx));
  const Algebraic t = Algebraic::theta(f);
  CHECK((t * t) == Algebraic(-3));
  CHECK(((t + 1) * (t + 1).inverse()).is_one());
  CHECK_THROWS_AS(parse_polynomial("i", ctx), Error);
  ctx.field = parse_field("t^2+1");
  CHECK((parse_polynomial("i^2", ctx)) == MPoly(-1));
}

TEST_CASE("parser errors") {
  try {
    P("x^");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }
  CHECK_THROWS_AS(P("2x"), Error);
  CHECK_THROWS_AS(P("foo + 1"), Error);
  CHECK_THROWS_AS(P("1/x"), Error);
}
