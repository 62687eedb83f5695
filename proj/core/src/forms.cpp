#include "webcurv/forms.hpp"

#include <map>

#include "webcurv/error.hpp"

namespace webcurv {
namespace {

const Symbol kX = "x";
const Symbol kY = "y";

Frac compose(const Frac& f, const Frac& X, const Frac& Y) {
  return f.substitute(std::map<Symbol, Frac>{{kX, X}, {kY, Y}});
}

}  // namespace

std::string OneForm::str() const { return "(" + a.str() + ")*dx + (" + b.str() + ")*dy"; }

std::string TwoForm::str() const { return "(" + c.str() + ")*dx^dy"; }

TwoForm exterior_derivative(const OneForm& w) { return {w.b.derivative(kX) - w.a.derivative(kY)}; }

OneForm differential(const Frac& g) { return {g.derivative(kX), g.derivative(kY)}; }

OneForm dlog(const Frac& g) {
  ensure(!g.is_zero(), ErrorCode::kInput, "logarithmic differential of zero");
  const Frac inv = g.inverse();
  return {g.derivative(kX) * inv, g.derivative(kY) * inv};
}

OneForm pullback(const OneForm& w, const Frac& X, const Frac& Y) {
  // a(X,Y) dX + b(X,Y) dY with dX = X_x dx + X_y dy.
  const Frac a = compose(w.a, X, Y);
  const Frac b = compose(w.b, X, Y);
  return {a * X.derivative(kX) + b * Y.derivative(kX), a * X.derivative(kY) + b * Y.derivative(kY)};
}

TwoForm pullback(const TwoForm& w, const Frac& X, const Frac& Y) {
  const Frac jac = X.derivative(kX) * Y.derivative(kY) - X.derivative(kY) * Y.derivative(kX);
  return {compose(w.c, X, Y) * jac};
}

}  // namespace webcurv
