#include "webcurv/mpoly.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>
#include <numeric>
#include <sstream>

#include "dense.hpp"
#include "webcurv/error.hpp"

namespace webcurv {
namespace {

using Exp = std::vector<std::uint32_t>;

unsigned total(const Exp& e) {
  unsigned s = 0;
  for (auto v : e) s += v;
  return s;
}

// Graded-lex comparison; earlier symbols dominate ties.
int grlex_cmp(const Exp& a, const Exp& b) {
  const unsigned ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb ? -1 : 1;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  return 0;
}

std::vector<Symbol> merge_vars(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  std::vector<Symbol> r;
  r.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

// Index map from a sub-list of symbols into a super-list.
std::vector<std::size_t> embedding(const std::vector<Symbol>& sub, const std::vector<Symbol>& sup) {
  std::vector<std::size_t> idx(sub.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    while (sup[j] != sub[i]) ++j;
    idx[i] = j;
  }
  return idx;
}

std::vector<MPoly::Term> lift_terms(const MPoly& p, const std::vector<Symbol>& vars) {
  if (p.vars() == vars) return p.terms();
  const auto idx = embedding(p.vars(), vars);
  std::vector<MPoly::Term> out;
  out.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    Exp e(vars.size(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i) e[idx[i]] = t.exp[i];
    out.push_back({std::move(e), t.coeff});
  }
  return out;
}

// Exponent vectors packed into one machine word: the total degree in the top
// field, then one field per symbol with the first symbol most significant, so
// integer order is graded-lex order. Field widths are sized for the largest
// exponents an operation can produce, which makes key addition exact.
class Packer {
 public:
  Packer(const std::vector<unsigned>& max_exp, unsigned max_total) : shift_(max_exp.size()), width_(max_exp.size()) {
    unsigned used = 0;
    for (std::size_t k = max_exp.size(); k-- > 0;) {
      width_[k] = static_cast<unsigned>(std::bit_width(max_exp[k]));
      shift_[k] = used;
      used += width_[k];
    }
    total_shift_ = used;
    used += static_cast<unsigned>(std::bit_width(max_total));
    ok_ = used <= 64;
  }
  bool ok() const { return ok_; }
  std::uint64_t pack(const Exp& e) const {
    std::uint64_t key = std::uint64_t{total(e)} << total_shift_;
    for (std::size_t k = 0; k < e.size(); ++k) key |= std::uint64_t{e[k]} << shift_[k];
    return key;
  }
  Exp unpack(std::uint64_t key) const {
    Exp e(shift_.size());
    for (std::size_t k = 0; k < e.size(); ++k)
      e[k] = static_cast<std::uint32_t>((key >> shift_[k]) & ((std::uint64_t{1} << width_[k]) - 1));
    return e;
  }

 private:
  std::vector<unsigned> shift_, width_;
  unsigned total_shift_ = 0;
  bool ok_ = false;
};

void exponent_bounds(const std::vector<MPoly::Term>& terms, std::vector<unsigned>& max_exp, unsigned& max_total) {
  for (const auto& t : terms) {
    for (std::size_t k = 0; k < t.exp.size(); ++k) max_exp[k] = std::max<unsigned>(max_exp[k], t.exp[k]);
    max_total = std::max(max_total, total(t.exp));
  }
}

// Recursive dense view: coefficients in a main symbol.
using RPoly = std::vector<MPoly>;

void rtrim(RPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int rdeg(const RPoly& p) { return static_cast<int>(p.size()) - 1; }

RPoly rprem(RPoly a, const RPoly& b) {
  const MPoly& lb = b.back();
  int steps = rdeg(a) - rdeg(b) + 1;
  while (!a.empty() && rdeg(a) >= rdeg(b)) {
    const std::size_t shift = a.size() - b.size();
    const MPoly la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= la * b[j];
    rtrim(a);
    --steps;
  }
  if (steps > 0) {
    const MPoly f = lb.pow(static_cast<unsigned>(steps));
    for (auto& c : a) c *= f;
  }
  return a;
}

MPoly exact_or_throw(const MPoly& f, const MPoly& g) {
  auto q = divide_exact(f, g);
  ensure(q.has_value(), ErrorCode::kInternal, "inexact division in subresultant sequence");
  return *q;
}

unsigned checked_degree(unsigned long long d) {
  ensure(d <= kDegreeCap, ErrorCode::kInput, "degree cap exceeded (total degree > 10^6)");
  return static_cast<unsigned>(d);
}

}  // namespace

bool is_variable_symbol(const Symbol& s) {
  return s == "x" || s == "y" || s == "p" || s == "z" || s == "q";
}

MPoly::MPoly(const Algebraic& c) {
  if (!c.is_zero()) terms_.push_back({{}, c});
}

MPoly MPoly::var(const Symbol& name) {
  MPoly r;
  r.vars_ = {name};
  r.terms_.push_back({{1u}, Algebraic(1)});
  return r;
}

MPoly MPoly::from_terms(std::vector<Symbol> vars, std::vector<Term> terms) {
  MPoly r;
  // Sort the symbol list and permute exponents to match.
  std::vector<std::size_t> perm(vars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });
  bool identity = true;
  for (std::size_t i = 0; i < perm.size(); ++i) identity &= perm[i] == i;
  if (!identity) {
    std::vector<Symbol> sv(vars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) sv[i] = vars[perm[i]];
    for (auto& t : terms) {
      Exp e(vars.size());
      for (std::size_t i = 0; i < perm.size(); ++i) e[i] = t.exp[perm[i]];
      t.exp = std::move(e);
    }
    vars = std::move(sv);
  }
  // Merge duplicated symbols if any.
  for (std::size_t i = 1; i < vars.size();) {
    if (vars[i] == vars[i - 1]) {
      for (auto& t : terms) {
        t.exp[i - 1] += t.exp[i];
        t.exp.erase(t.exp.begin() + static_cast<long>(i));
      }
      vars.erase(vars.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  r.vars_ = std::move(vars);
  r.terms_ = std::move(terms);
  r.canonicalize();
  return r;
}

void MPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_cmp(a.exp, b.exp) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  terms_ = std::move(out);
  prune_vars();
}

void MPoly::prune_vars() {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& t : terms_)
    for (std::size_t k = 0; k < vars_.size(); ++k) used[k] = used[k] || t.exp[k] != 0;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<Symbol> nv;
  for (std::size_t k = 0; k < vars_.size(); ++k)
    if (used[k]) nv.push_back(vars_[k]);
  for (auto& t : terms_) {
    Exp e;
    e.reserve(nv.size());
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (used[k]) e.push_back(t.exp[k]);
    t.exp = std::move(e);
  }
  vars_ = std::move(nv);
}

Algebraic MPoly::constant_value() const {
  ensure(is_constant(), ErrorCode::kInternal, "polynomial is not constant");
  return terms_.empty() ? Algebraic() : terms_[0].coeff;
}

Algebraic MPoly::constant_term() const {
  if (terms_.empty() || total(terms_.back().exp) != 0) return Algebraic();
  return terms_.back().coeff;
}

bool MPoly::has_var(const Symbol& v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

unsigned MPoly::degree(const Symbol& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return 0;
  const std::size_t k = static_cast<std::size_t>(it - vars_.begin());
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp[k]);
  return d;
}

unsigned MPoly::total_degree() const { return terms_.empty() ? 0 : total(terms_[0].exp); }

const Algebraic& MPoly::leading_coeff() const {
  ensure(!terms_.empty(), ErrorCode::kInternal, "leading coefficient of zero polynomial");
  return terms_[0].coeff;
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (vars_ == o.vars_) {
    // Linear merge of two sorted term lists.
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i == terms_.size()) c = -1;
      else if (j == o.terms_.size()) c = 1;
      else c = grlex_cmp(terms_[i].exp, o.terms_[j].exp);
      if (c > 0) {
        out.push_back(std::move(terms_[i++]));
      } else if (c < 0) {
        out.push_back(o.terms_[j++]);
      } else {
        Algebraic s = terms_[i].coeff + o.terms_[j].coeff;
        if (!s.is_zero()) out.push_back({std::move(terms_[i].exp), std::move(s)});
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    // Cancellation can remove symbols.
    prune_vars();
    return *this;
  }
  auto vars = merge_vars(vars_, o.vars_);
  auto a = lift_terms(*this, vars);
  auto b = lift_terms(o, vars);
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  vars_ = std::move(vars);
  terms_ = std::move(a);
  canonicalize();
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
  if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
  checked_degree(static_cast<unsigned long long>(a.total_degree()) + b.total_degree());
  auto vars = merge_vars(a.vars_, b.vars_);
  auto ta = lift_terms(a, vars);
  auto tb = lift_terms(b, vars);
  const std::size_t n = vars.size();
  {
    std::vector<unsigned> ma(n, 0), mb(n, 0);
    unsigned sa = 0, sb = 0;
    exponent_bounds(ta, ma, sa);
    exponent_bounds(tb, mb, sb);
    for (std::size_t k = 0; k < n; ++k) ma[k] += mb[k];
    const Packer pk(ma, sa + sb);
    if (pk.ok()) {
      std::vector<std::uint64_t> kb(tb.size());
      for (std::size_t j = 0; j < tb.size(); ++j) kb[j] = pk.pack(tb[j].exp);
      std::unordered_map<std::uint64_t, std::size_t> slot;
      slot.reserve(ta.size() * tb.size());
      const auto rational = [](const std::vector<MPoly::Term>& t) {
        return std::all_of(t.begin(), t.end(), [](const MPoly::Term& x) { return x.coeff.is_rational(); });
      };
      if (rational(ta) && rational(tb)) {
        // Integer arithmetic over a common denominator avoids a gcd per product.
        const auto integral = [](const std::vector<MPoly::Term>& t, mpz_class& den) {
          den = 1;
          for (const auto& x : t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.coeff.rational().get_den_mpz_t());
          std::vector<mpz_class> out(t.size());
          for (std::size_t i = 0; i < t.size(); ++i)
            out[i] = t[i].coeff.rational().get_num() * (den / t[i].coeff.rational().get_den());
          return out;
        };
        mpz_class da, db;
        const auto ia = integral(ta, da), ib = integral(tb, db);
        std::vector<std::pair<std::uint64_t, mpz_class>> acc;
        for (std::size_t i = 0; i < ta.size(); ++i) {
          const std::uint64_t ks = pk.pack(ta[i].exp);
          for (std::size_t j = 0; j < tb.size(); ++j) {
            const auto [it, fresh] = slot.try_emplace(ks + kb[j], acc.size());
            if (fresh) acc.emplace_back(ks + kb[j], 0);
            mpz_addmul(acc[it->second].second.get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
          }
        }
        std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
        const mpz_class den = da * db;
        MPoly r;
        r.vars_ = std::move(vars);
        r.terms_.reserve(acc.size());
        for (auto& [key, c] : acc) {
          if (sgn(c) == 0) continue;
          mpq_class q(c, den);
          r.terms_.push_back({pk.unpack(key), Algebraic(q)});
        }
        r.prune_vars();
        return r;
      }
      std::vector<std::pair<std::uint64_t, Algebraic>> acc;
      for (const auto& s : ta) {
        const std::uint64_t ks = pk.pack(s.exp);
        for (std::size_t j = 0; j < tb.size(); ++j) {
          const auto [it, fresh] = slot.try_emplace(ks + kb[j], acc.size());
          if (fresh) acc.emplace_back(ks + kb[j], s.coeff * tb[j].coeff);
          else acc[it->second].second += s.coeff * tb[j].coeff;
        }
      }
      std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
      MPoly r;
      r.vars_ = std::move(vars);
      r.terms_.reserve(acc.size());
      for (auto& [key, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({pk.unpack(key), std::move(c)});
      r.prune_vars();
      return r;
    }
  }
  std::vector<MPoly::Term> prod;
  prod.reserve(ta.size() * tb.size());
  for (const auto& s : ta) {
    for (const auto& t : tb) {
      Exp e(n);
      for (std::size_t k = 0; k < n; ++k) e[k] = s.exp[k] + t.exp[k];
      prod.push_back({std::move(e), s.coeff * t.coeff});
    }
  }
  MPoly r;
  r.vars_ = std::move(vars);
  r.terms_ = std::move(prod);
  r.canonicalize();
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly MPoly::scaled(const Algebraic& c) const {
  if (c.is_zero()) return MPoly();
  MPoly r(*this);
  if (c.is_one()) return r;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  if (e == 0) return MPoly(1);
  checked_degree(static_cast<unsigned long long>(total_degree()) * e);
  MPoly base(*this), acc(1);
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

bool MPoly::operator==(const MPoly& o) const {
  if (vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

MPoly MPoly::derivative(const Symbol& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return MPoly();
  const std::size_t k = static_cast<std::size_t>(it - vars_.begin());
  MPoly r;
  r.vars_ = vars_;
  for (const auto& t : terms_) {
    if (t.exp[k] == 0) continue;
    Term u = t;
    u.coeff *= Algebraic(static_cast<long>(t.exp[k]));
    u.exp[k] -= 1;
    r.terms_.push_back(std::move(u));
  }
  r.canonicalize();
  return r;
}

std::vector<MPoly> MPoly::coeffs_in(const Symbol& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) {
    if (is_zero()) return {};
    return {*this};
  }
  const std::size_t k = static_cast<std::size_t>(it - vars_.begin());
  std::vector<Symbol> rest(vars_);
  rest.erase(rest.begin() + static_cast<long>(k));
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    Exp e(t.exp);
    const unsigned d = e[k];
    e.erase(e.begin() + static_cast<long>(k));
    buckets[d].push_back({std::move(e), t.coeff});
  }
  std::vector<MPoly> out(buckets.size());
  for (std::size_t d = 0; d < buckets.size(); ++d) {
    out[d].vars_ = rest;
    out[d].terms_ = std::move(buckets[d]);
    out[d].canonicalize();
  }
  return out;
}

MPoly MPoly::from_coeffs_in(const Symbol& v, const std::vector<MPoly>& c) {
  std::vector<Term> terms;
  std::vector<Symbol> vars{v};
  for (const auto& p : c) vars = merge_vars(vars, p.vars());
  const auto iv = embedding({v}, vars)[0];
  for (std::size_t d = 0; d < c.size(); ++d) {
    for (auto& t : lift_terms(c[d], vars)) {
      t.exp[iv] += static_cast<std::uint32_t>(d);
      terms.push_back(std::move(t));
    }
  }
  MPoly r;
  r.vars_ = std::move(vars);
  r.terms_ = std::move(terms);
  r.canonicalize();
  return r;
}

MPoly MPoly::coeff_in(const Symbol& v, unsigned k) const {
  auto c = coeffs_in(v);
  return k < c.size() ? c[k] : MPoly();
}

MPoly MPoly::substitute(const Symbol& v, const MPoly& g) const {
  if (!has_var(v)) return *this;
  auto c = coeffs_in(v);
  MPoly r = c.back();
  for (std::size_t d = c.size() - 1; d-- > 0;) r = r * g + c[d];
  return r;
}

MPoly MPoly::substitute(const std::map<Symbol, MPoly>& s) const {
  std::vector<std::size_t> sub_idx;
  std::vector<const MPoly*> sub_val;
  std::vector<Symbol> keep;
  std::vector<std::size_t> keep_idx;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = s.find(vars_[k]);
    if (it != s.end()) {
      sub_idx.push_back(k);
      sub_val.push_back(&it->second);
    } else {
      keep.push_back(vars_[k]);
      keep_idx.push_back(k);
    }
  }
  if (sub_idx.empty()) return *this;
  std::vector<std::vector<MPoly>> powers(sub_idx.size());
  auto power = [&](std::size_t i, unsigned e) -> const MPoly& {
    auto& tab = powers[i];
    if (tab.empty()) tab.push_back(MPoly(1));
    while (tab.size() <= e) tab.push_back(tab.back() * *sub_val[i]);
    return tab[e];
  };
  // Group terms by their kept monomial so each group is one product.
  std::map<Exp, std::vector<const Term*>> groups;
  for (const auto& t : terms_) {
    Exp e(keep_idx.size());
    for (std::size_t i = 0; i < keep_idx.size(); ++i) e[i] = t.exp[keep_idx[i]];
    groups[e].push_back(&t);
  }
  MPoly result;
  for (const auto& [e, ts] : groups) {
    MPoly acc;
    for (const Term* t : ts) {
      MPoly prod(t->coeff);
      for (std::size_t i = 0; i < sub_idx.size(); ++i) {
        const unsigned d = t->exp[sub_idx[i]];
        if (d) prod *= power(i, d);
      }
      acc += prod;
    }
    MPoly mono = MPoly::from_terms(keep, {{e, Algebraic(1)}});
    result += acc * mono;
  }
  return result;
}

MPoly MPoly::rename(const std::map<Symbol, Symbol>& s) const {
  std::vector<Symbol> vars(vars_);
  for (auto& v : vars) {
    auto it = s.find(v);
    if (it != s.end()) v = it->second;
  }
  return from_terms(std::move(vars), terms_);
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (t.exp[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[k];
      if (t.exp[k] > 1) mono += "^" + std::to_string(t.exp[k]);
    }
    const Algebraic& c = t.coeff;
    if (c.is_atomic()) {
      const bool neg = c.leading_sign() < 0;
      const Algebraic a = neg ? -c : c;
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      if (mono.empty()) os << a.str();
      else if (a.is_one()) os << mono;
      else os << a.str() << "*" << mono;
    } else {
      if (!first) os << " + ";
      os << "(" << c.str() << ")";
      if (!mono.empty()) os << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

std::size_t MPoly::max_coeff_bits() const {
  std::size_t m = 0;
  for (const auto& t : terms_) m = std::max(m, t.coeff.bit_size());
  return m;
}

// ---------------------------------------------------------------------------

std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g) {
  ensure(!g.is_zero(), ErrorCode::kInput, "division by the zero polynomial");
  if (f.is_zero()) return MPoly();
  if (g.is_constant()) return f.scaled(g.constant_value().inverse());
  for (const auto& v : g.vars())
    if (!f.has_var(v)) return std::nullopt;
  const auto& vars = f.vars();
  const auto gt = lift_terms(g, vars);
  const Algebraic inv_lead = gt[0].coeff.inverse();
  const std::size_t n = vars.size();
  {
    std::vector<unsigned> mf(n, 0), mg(n, 0);
    unsigned sf = 0, sg = 0;
    exponent_bounds(f.terms(), mf, sf);
    exponent_bounds(gt, mg, sg);
    const Packer pk(mf, sf);
    if (pk.ok()) {
      // A quotient term may not exceed deg f - deg g in any symbol, which keeps
      // every intermediate key inside the packer's fields.
      for (std::size_t k = 0; k < n; ++k)
        if (mg[k] > mf[k]) return std::nullopt;
      std::vector<std::uint64_t> kg(gt.size());
      for (std::size_t j = 0; j < gt.size(); ++j) kg[j] = pk.pack(gt[j].exp);
      std::map<std::uint64_t, Algebraic, std::greater<>> r;
      for (const auto& t : f.terms()) r.emplace(pk.pack(t.exp), t.coeff);
      std::vector<MPoly::Term> q;
      while (!r.empty()) {
        const auto lead = r.begin();
        const Exp lt = pk.unpack(lead->first);
        Exp e(n);
        for (std::size_t k = 0; k < n; ++k) {
          if (lt[k] < gt[0].exp[k] || lt[k] - gt[0].exp[k] > mf[k] - mg[k]) return std::nullopt;
          e[k] = lt[k] - gt[0].exp[k];
        }
        const Algebraic c = lead->second * inv_lead;
        r.erase(lead);
        const std::uint64_t ke = pk.pack(e);
        for (std::size_t j = 1; j < gt.size(); ++j) {
          auto [it, fresh] = r.try_emplace(ke + kg[j]);
          it->second -= c * gt[j].coeff;
          if (!fresh && it->second.is_zero()) r.erase(it);
        }
        q.push_back({std::move(e), c});
      }
      return MPoly::from_terms(vars, std::move(q));
    }
  }
  std::vector<MPoly::Term> r = f.terms();
  std::vector<MPoly::Term> q;
  while (!r.empty()) {
    const auto& lt = r[0];
    Exp e(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (lt.exp[k] < gt[0].exp[k]) return std::nullopt;
      e[k] = lt.exp[k] - gt[0].exp[k];
    }
    const Algebraic c = lt.coeff * inv_lead;
    // r -= c * m * g, merged in order since multiplication by a monomial
    // preserves the graded-lex order.
    std::vector<MPoly::Term> sub;
    sub.reserve(gt.size());
    for (const auto& t : gt) {
      Exp s(n);
      for (std::size_t k = 0; k < n; ++k) s[k] = t.exp[k] + e[k];
      sub.push_back({std::move(s), -(c * t.coeff)});
    }
    std::vector<MPoly::Term> out;
    out.reserve(r.size() + sub.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < sub.size()) {
      int cmpv;
      if (i == r.size()) cmpv = -1;
      else if (j == sub.size()) cmpv = 1;
      else cmpv = grlex_cmp(r[i].exp, sub[j].exp);
      if (cmpv > 0) {
        out.push_back(std::move(r[i++]));
      } else if (cmpv < 0) {
        out.push_back(std::move(sub[j++]));
      } else {
        Algebraic s = r[i].coeff + sub[j].coeff;
        if (!s.is_zero()) out.push_back({std::move(r[i].exp), std::move(s)});
        ++i;
        ++j;
      }
    }
    r = std::move(out);
    q.push_back({std::move(e), c});
  }
  return MPoly::from_terms(vars, std::move(q));
}

MPoly pseudo_remainder(const MPoly& f, const MPoly& g, const Symbol& v) {
  ensure(!g.is_zero(), ErrorCode::kInput, "pseudo-division by zero");
  RPoly a = f.coeffs_in(v), b = g.coeffs_in(v);
  rtrim(a);
  if (rdeg(a) < rdeg(b)) return f;
  return MPoly::from_coeffs_in(v, rprem(std::move(a), b));
}

MPoly monic_normalize(const MPoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(f.leading_coeff().inverse());
}

namespace {

MPoly univariate_gcd(const MPoly& f, const MPoly& g, const Symbol& v) {
  auto to_dense = [&](const MPoly& p) {
    auto c = p.coeffs_in(v);
    dense::APoly d(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = c[i].constant_value();
    return d;
  };
  const dense::APoly h = dense::gcd(to_dense(f), to_dense(g));
  std::vector<MPoly> c(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) c[i] = MPoly(h[i]);
  return MPoly::from_coeffs_in(v, c);
}

MPoly gcd_rec(MPoly f, MPoly g);

// ---- heuristic gcd over Z ---------------------------------------------------
//
// Evaluate one symbol at a large integer xi, take the gcd of the images
// recursively and read the result back through its symmetric xi-adic
// expansion. A candidate is accepted only if it divides both inputs, which
// for xi > 2 min(|f|, |g|) + 1 makes it the gcd.

bool rational_coeffs(const MPoly& f) {
  for (const auto& t : f.terms())
    if (!t.coeff.is_rational()) return false;
  return true;
}

mpz_class integer_content(const MPoly& f) {
  mpz_class g = 0;
  for (const auto& t : f.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.rational().get_num_mpz_t());
  return g;
}

// Integer primitive part with positive leading coefficient.
MPoly primitive_integer(const MPoly& f) {
  mpz_class den = 1;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.rational().get_den_mpz_t());
  MPoly h = f.scaled(Algebraic(mpq_class(den)));
  mpz_class c = integer_content(h);
  if (h.leading_coeff().rational() < 0) c = -c;
  return h.scaled(Algebraic(mpq_class(1, 1) / mpq_class(c)));
}

mpz_class max_norm(const MPoly& f) {
  mpz_class m = 0;
  for (const auto& t : f.terms()) {
    const mpz_class a = abs(t.coeff.rational().get_num());
    if (a > m) m = a;
  }
  return m;
}

std::size_t coeff_bits(const MPoly& f) {
  std::size_t b = 0;
  for (const auto& t : f.terms()) b = std::max(b, mpz_sizeinbase(t.coeff.rational().get_num_mpz_t(), 2));
  return b;
}

MPoly eval_at_integer(const MPoly& f, std::size_t k, const mpz_class& xi) {
  std::vector<Symbol> vars = f.vars();
  vars.erase(vars.begin() + static_cast<long>(k));
  std::vector<MPoly::Term> terms;
  terms.reserve(f.num_terms());
  for (const auto& t : f.terms()) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), t.exp[k]);
    Exp e = t.exp;
    e.erase(e.begin() + static_cast<long>(k));
    terms.push_back({std::move(e), t.coeff * Algebraic(mpq_class(pw))});
  }
  return MPoly::from_terms(std::move(vars), std::move(terms));
}

// gcd over Z[vars] of integer polynomials, content included.
std::optional<MPoly> heuristic_gcd(const MPoly& f, const MPoly& g, std::size_t bit_budget) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.is_constant() || g.is_constant()) {
    mpz_class c = integer_content(f);
    mpz_class d = integer_content(g);
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    return MPoly(Algebraic(mpq_class(c)));
  }
  // Evaluate the symbol shared by both with the largest degree.
  const std::vector<Symbol> all = merge_vars(f.vars(), g.vars());
  Symbol v;
  unsigned best = 0;
  for (const auto& s : all) {
    const unsigned dg = std::max(f.degree(s), g.degree(s));
    if (dg >= best) {
      best = dg;
      v = s;
    }
  }
  auto index_of = [&](const MPoly& p) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < p.vars().size(); ++k)
      if (p.vars()[k] == v) return k;
    return std::nullopt;
  };
  mpz_class xi = 2 * std::min(max_norm(f), max_norm(g)) + 29;
  for (int attempt = 0; attempt < 4; ++attempt, xi = xi * 73794 / 27011) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (best + 1) > bit_budget) return std::nullopt;
    const auto kf = index_of(f), kg = index_of(g);
    const MPoly fe = kf ? eval_at_integer(f, *kf, xi) : f;
    const MPoly ge = kg ? eval_at_integer(g, *kg, xi) : g;
    const auto gamma = heuristic_gcd(fe, ge, bit_budget);
    if (!gamma) return std::nullopt;
    // Symmetric xi-adic expansion, coefficient by coefficient.
    std::vector<Symbol> vars = gamma->vars();
    vars.push_back(v);
    std::vector<MPoly::Term> terms;
    const mpz_class half = xi / 2;
    for (const auto& t : gamma->terms()) {
      mpz_class c = t.coeff.rational().get_num();
      for (std::uint32_t i = 0; sgn(c) != 0; ++i) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
        if (r > half) r -= xi;
        Exp e = t.exp;
        e.push_back(i);
        if (sgn(r) != 0) terms.push_back({std::move(e), Algebraic(mpq_class(r))});
        c = (c - r) / xi;
      }
    }
    MPoly cand = MPoly::from_terms(std::move(vars), std::move(terms));
    if (cand.is_zero()) continue;
    cand = primitive_integer(cand);
    if (divide_exact(f, cand) && divide_exact(g, cand)) {
      mpz_class c = integer_content(f);
      mpz_class d = integer_content(g);
      mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      return cand.scaled(Algebraic(mpq_class(c)));
    }
  }
  return std::nullopt;
}


MPoly content_rec(const MPoly& f, const Symbol& v) {
  auto c = f.coeffs_in(v);
  MPoly acc;
  // Start with the smallest coefficients so the running gcd shrinks early.
  std::sort(c.begin(), c.end(), [](const MPoly& a, const MPoly& b) { return a.num_terms() < b.num_terms(); });
  for (const auto& p : c) {
    if (p.is_zero()) continue;
    acc = acc.is_zero() ? monic_normalize(p) : gcd_rec(acc, p);
    if (acc.is_constant()) return MPoly(1);
  }
  return acc;
}

MPoly gcd_rec(MPoly f, MPoly g) {
  if (f.is_zero()) return monic_normalize(g);
  if (g.is_zero()) return monic_normalize(f);
  if (f.is_constant() || g.is_constant()) return MPoly(1);
  if (f == g) return monic_normalize(f);
  if (f.vars().size() + g.vars().size() > 2 && rational_coeffs(f) && rational_coeffs(g)) {
    const MPoly pf = primitive_integer(f), pg = primitive_integer(g);
    const std::size_t budget = 4096 * (coeff_bits(pf) + coeff_bits(pg)) + (std::size_t{1} << 20);
    if (auto h = heuristic_gcd(pf, pg, budget)) return monic_normalize(*h);
  }
  // Symbols occurring in only one argument can be eliminated via content.
  for (const auto& v : std::vector<Symbol>(f.vars()))
    if (!g.has_var(v)) return gcd_rec(content_rec(f, v), g);
  for (const auto& v : std::vector<Symbol>(g.vars()))
    if (!f.has_var(v)) return gcd_rec(f, content_rec(g, v));
  if (f.vars().size() == 1) return univariate_gcd(f, g, f.vars()[0]);
  // Main symbol: the one with the smallest degree.
  Symbol v = f.vars()[0];
  unsigned best = ~0u;
  for (const auto& s : f.vars()) {
    const unsigned d = std::max(f.degree(s), g.degree(s));
    if (d < best) {
      best = d;
      v = s;
    }
  }
  const MPoly cf = content_rec(f, v), cg = content_rec(g, v);
  const MPoly c = gcd_rec(cf, cg);
  MPoly a = *divide_exact(f, cf), b = *divide_exact(g, cg);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (b.degree(v) > 0) {
    MPoly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) return monic_normalize(c);
    r = *divide_exact(r, content_rec(r, v));
    a = std::move(b);
    b = std::move(r);
  }
  if (b.degree(v) == 0) return monic_normalize(c);
  return monic_normalize(c * b);
}

}  // namespace

MPoly gcd(const MPoly& f, const MPoly& g) { return gcd_rec(f, g); }

MPoly content_in(const MPoly& f, const Symbol& v) {
  if (f.is_zero()) return f;
  return content_rec(f, v);
}

MPoly resultant(const MPoly& f, const MPoly& g, const Symbol& v) {
  RPoly a = f.coeffs_in(v), b = g.coeffs_in(v);
  rtrim(a);
  rtrim(b);
  ensure(!(a.empty() && b.empty()), ErrorCode::kInput, "resultant of two zero polynomials");
  if (a.empty() || b.empty()) return MPoly();
  if (rdeg(a) == 0) return a[0].pow(static_cast<unsigned>(rdeg(b)));
  if (rdeg(b) == 0) return b[0].pow(static_cast<unsigned>(rdeg(a)));
  int s = 1;
  if (rdeg(a) < rdeg(b)) {
    std::swap(a, b);
    if (rdeg(a) % 2 == 1 && rdeg(b) % 2 == 1) s = -1;
  }
  MPoly gg(1), h(1);
  while (true) {
    const int delta = rdeg(a) - rdeg(b);
    if (rdeg(a) % 2 == 1 && rdeg(b) % 2 == 1) s = -s;
    RPoly r = rprem(a, b);
    if (r.empty()) return MPoly();
    a = std::move(b);
    const MPoly div = gg * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact_or_throw(c, div);
    b = std::move(r);
    gg = a.back();
    if (delta >= 1) h = exact_or_throw(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    if (rdeg(b) == 0) break;
  }
  const int da = rdeg(a);
  MPoly res = exact_or_throw(b[0].pow(static_cast<unsigned>(da)), h.pow(static_cast<unsigned>(da - 1)));
  return s < 0 ? -res : res;
}

MPoly discriminant(const MPoly& f, const Symbol& v) {
  const unsigned d = f.degree(v);
  ensure(d >= 1, ErrorCode::kInput, "discriminant of a polynomial constant in the variable");
  const MPoly a0 = f.coeff_in(v, d);
  MPoly r = exact_or_throw(resultant(f, f.derivative(v), v), a0);
  if ((static_cast<unsigned long>(d) * (d - 1) / 2) % 2 == 1) r = -r;
  return r;
}

MPoly euler_residual(const MPoly& a, unsigned d) {
  const MPoly x = MPoly::var("x"), y = MPoly::var("y");
  return x * a.derivative("x") + y * a.derivative("y") - a.scaled(Algebraic(static_cast<long>(d)));
}

namespace {

void squarefree_rec(const MPoly& f, std::map<unsigned, MPoly>& acc) {
  if (f.is_constant()) return;
  const Symbol v = f.vars().front();
  const MPoly c = content_in(f, v);
  const MPoly g = *divide_exact(f, c);
  // Yun in v; g is primitive in v, so every factor involves v.
  const MPoly gv = g.derivative(v);
  const MPoly a0 = gcd(g, gv);
  MPoly b = *divide_exact(g, a0);
  MPoly d = *divide_exact(gv, a0) - b.derivative(v);
  for (unsigned i = 1; b.degree(v) > 0; ++i) {
    const MPoly a = gcd(b, d);
    b = *divide_exact(b, a);
    d = *divide_exact(d, a) - b.derivative(v);
    if (!a.is_constant()) {
      auto it = acc.find(i);
      if (it == acc.end()) acc.emplace(i, a);
      else it->second = it->second * a;
    }
  }
  squarefree_rec(c, acc);
}

}  // namespace

std::vector<MFactor> squarefree_decomposition(const MPoly& f, Algebraic* unit) {
  ensure(!f.is_zero(), ErrorCode::kInput, "squarefree decomposition of zero");
  std::map<unsigned, MPoly> acc;
  squarefree_rec(f, acc);
  std::vector<MFactor> out;
  MPoly prod(1);
  for (auto& [m, a] : acc) {
    out.push_back({monic_normalize(a), m});
    prod *= out.back().factor.pow(m);
  }
  if (unit) *unit = divide_exact(f, prod)->constant_value();
  return out;
}

}  // namespace webcurv
