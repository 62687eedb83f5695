#include "webcurv/parse.hpp"

#include <algorithm>
#include <cctype>

#include "webcurv/error.hpp"

namespace webcurv {
namespace {

class Parser {
 public:
  Parser(const std::string& src, const ParseContext& ctx, bool polynomial, bool field_mode)
      : s_(src), ctx_(ctx), polynomial_(polynomial), field_mode_(field_mode) {}

  Frac run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Frac r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    raise(ErrorCode::kInput, "syntax error at offset " + std::to_string(at) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Frac expr() {
    Frac r = term();
    while (true) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else return r;
    }
  }

  Frac term() {
    Frac r = unary();
    while (true) {
      skip();
      if (accept('*')) {
        r *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Frac d = unary();
        if (d.is_zero()) fail_at(at, "division by zero");
        if (polynomial_ && !d.is_constant()) fail_at(at, "division by a non-constant expression");
        r /= d;
      } else {
        return r;
      }
    }
  }

  Frac unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Frac power() {
    Frac base = atom();
    if (!accept('^')) return base;
    skip();
    bool neg = false;
    bool paren = accept('(');
    if (accept('-')) neg = true;
    skip();
    const std::size_t at = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected integer exponent");
    unsigned long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (e > kDegreeCap) fail_at(at, "exponent exceeds the degree cap");
      ++pos_;
    }
    if (paren && !accept(')')) fail("expected ')'");
    if (neg) {
      if (polynomial_ && !base.is_constant()) fail_at(at, "negative exponent of a non-constant expression");
      if (base.is_zero()) fail_at(at, "division by zero");
      return base.pow(-static_cast<int>(e));
    }
    return base.pow(static_cast<int>(e));
  }

  Frac atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Frac r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string digits = s_.substr(start, pos_ - start);
      check_no_implicit_product();
      return Frac(Algebraic(mpz_class(digits)));
    }
    if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::islower(static_cast<unsigned char>(s_[pos_])) ||
                                  std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      check_no_implicit_product();
      return identifier(id, start);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  // Rejects "2x", "x y", "2(x)" and similar juxtapositions.
  void check_no_implicit_product() {
    std::size_t k = pos_;
    while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
    if (k < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[k])) || s_[k] == '(' || s_[k] == '_'))
      fail_at(k, "implicit multiplication is not allowed");
  }

  Frac identifier(const std::string& id, std::size_t at) {
    if (field_mode_) {
      if (id == "t") return Frac::var("t");
      fail_at(at, "unknown identifier '" + id + "'");
    }
    if (id == "theta") {
      if (!ctx_.field) fail_at(at, "'theta' requires a number field (--field)");
      return Frac(Algebraic::theta(ctx_.field));
    }
    if (id == "i") {
      const auto& f = ctx_.field;
      const bool ok = f && f->degree() == 2 && f->minpoly()[0] == 1 && f->minpoly()[1] == 0;
      if (!ok) fail_at(at, "'i' requires the field t^2 + 1");
      return Frac(Algebraic::theta(f));
    }
    if (is_variable_symbol(id)) {
      if (!ctx_.variables.empty() &&
          std::find(ctx_.variables.begin(), ctx_.variables.end(), id) == ctx_.variables.end())
        fail_at(at, "variable '" + id + "' is not allowed here");
      return Frac::var(id);
    }
    if (std::find(ctx_.params.begin(), ctx_.params.end(), id) != ctx_.params.end()) return Frac::var(id);
    fail_at(at, "unknown identifier '" + id + "'");
  }

  const std::string& s_;
  const ParseContext& ctx_;
  bool polynomial_;
  bool field_mode_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_polynomial(const std::string& src, const ParseContext& ctx) {
  Frac f = Parser(src, ctx, true, false).run();
  return f.num().scaled(f.den().constant_value().inverse());
}

Frac parse_rational(const std::string& src, const ParseContext& ctx) {
  return Parser(src, ctx, false, false).run();
}

FieldPtr parse_field(const std::string& src) {
  ParseContext ctx;
  Frac f = Parser(src, ctx, true, true).run();
  const MPoly p = f.num().scaled(f.den().constant_value().inverse());
  const unsigned d = p.degree("t");
  ensure(d >= 1, ErrorCode::kInput, "field polynomial must have positive degree in t");
  std::vector<mpq_class> c(d + 1);
  auto cs = p.coeffs_in("t");
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const Algebraic v = cs[k].constant_value();
    c[k] = v.rational();
    ensure(c[k].get_den() == 1, ErrorCode::kInput, "field polynomial must have integer coefficients");
  }
  ensure(c[d] == 1, ErrorCode::kInput, "field polynomial must be monic");
  if (d == 1) {
    ensure(c[0] == 0, ErrorCode::kInput, "degree-one field polynomial must be t");
    return nullptr;
  }
  return std::make_shared<const NumberField>(std::move(c));
}

}  // namespace webcurv
