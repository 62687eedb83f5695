#include "app.hpp"

#include <chrono>
#include <regex>
#include <sstream>

#include "webcurv/error.hpp"
#include "webcurv/parse.hpp"
#include "webcurv/web.hpp"

#ifndef WEBCURV_VERSION
#define WEBCURV_VERSION "unknown"
#endif

namespace webcurv::app {
namespace {

const std::vector<Symbol> kPlane{"x", "y"};
const std::vector<Symbol> kWebVars{"x", "y", "p"};
const std::vector<Symbol> kConstant{};

// ---- rendering ------------------------------------------------------------------

constexpr int kDigits = 30;

Json complex_json(const Complex& c) { return Json{{"re", c.re.str(kDigits)}, {"im", c.im.str(kDigits)}}; }

Json form_json(const OneForm& w) { return Json{{"dx", w.a.str()}, {"dy", w.b.str()}}; }

Json fiber_json(const CriticalValueRecord& r) {
  Json j;
  if (r.numeric) {
    j["value"] = complex_json(*r.numeric_value);
    Json pts = Json::array();
    for (const auto& pt : r.points) pts.push_back({{"z", complex_json(pt.z)}, {"nu", pt.nu}, {"fixed", pt.fixed}});
    j["points"] = pts;
  } else {
    j["value"] = r.value.str();
    Json cls = Json::array();
    for (const auto& c : r.classes)
      cls.push_back({{"factor", c.m.str(kDirection)},
                     {"points", c.count()},
                     {"nu", c.nu},
                     {"fixed", c.fixed},
                     {"inflection_order", c.inflection_order()}});
    j["classes"] = cls;
  }
  if (r.nu_infinity > 0) j["vertical_direction"] = {{"nu", r.nu_infinity}, {"fixed", r.infinity_fixed}};
  j["critical_points"] = r.critical_points();
  if (const auto nu = r.uniform_nu()) j["uniform_nu"] = *nu;
  return j;
}

Json criterion_value_json(const CriterionValue& v) {
  Json j{{"mode", mode_name(v.mode)}};
  if (v.exact) j["exact"] = v.exact->str();
  if (v.numeric) j["numeric"] = complex_json(*v.numeric);
  if (v.tolerance) j["tolerance"] = v.tolerance->str(6);
  if (v.mode == Mode::kNumeric) j["prec"] = v.prec;
  j["zero"] = v.zero;
  j["chart"] = {{"swapped", v.swapped}, {"delta", v.delta}};
  return j;
}

Json flatness_json(const FlatnessReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back({{"value", c.record.label()},
                     {"kind", component_kind_name(c.kind)},
                     {"holomorphic", c.holomorphic},
                     {"fiber", fiber_json(c.record)},
                     {"criterion", criterion_value_json(c.value)}});
  return Json{{"flat", r.flat}, {"mode", mode_name(r.mode)}, {"components", comps}};
}

Json galois_json(const RationalSphereMap& f, const AnalysisOptions& opt) {
  const GaloisReport g = is_galois(f, opt);
  Json portrait = Json::array();
  for (const auto& e : g.portrait) portrait.push_back({{"value", e.value}, {"nu", e.nus}, {"uniform", e.uniform}});
  Json j{{"galois", g.galois}};
  if (g.galois) j["group"] = galois_type_name(galois_group_type(f, opt));
  j["critical_points"] = g.critical_points;
  j["portrait"] = portrait;
  return j;
}

Json map_json(const RationalSphereMap& f) {
  return Json{{"A", f.A.str()}, {"B", f.B.str()}, {"degree", f.d}, {"f", f.dehomogenized().str()}};
}

Json foliation_json(const HomogeneousFoliation& h) { return Json{{"A", h.A.str()}, {"B", h.B.str()}, {"degree", h.d}}; }

// ---- input ----------------------------------------------------------------------

const std::string& required(const Request& req, const std::string& key) {
  const auto it = req.inputs.find(key);
  ensure(it != req.inputs.end() && !it->second.empty(), ErrorCode::kInput,
         "command '" + req.command + "' needs --" + key);
  return it->second;
}

std::string optional_input(const Request& req, const std::string& key, const std::string& fallback) {
  const auto it = req.inputs.find(key);
  return it == req.inputs.end() || it->second.empty() ? fallback : it->second;
}

AnalysisOptions options(const Request& req) {
  AnalysisOptions o;
  o.mode = req.mode;
  o.prec = req.prec;
  o.tol_exp = req.tol;
  o.seed = req.seed;
  return o;
}

// A and B from the flags, or from a piped report carrying a foliation.
std::pair<std::string, std::string> foliation_sources(const Request& req) {
  const bool flags = req.inputs.count("A") || req.inputs.count("B");
  if (!flags && req.piped) {
    const Json& r = *req.piped;
    ensure(r.contains("result") && r["result"].contains("foliation"), ErrorCode::kInput,
           "the piped report carries no foliation");
    const Json& h = r["result"]["foliation"];
    return {h.at("A").get<std::string>(), h.at("B").get<std::string>()};
  }
  return {required(req, "A"), required(req, "B")};
}

// Field of a piped report when no --field was given; the tetrahedral map
// lives over Q(theta) with theta^2 + 3 = 0.
Request with_piped_field(Request req) {
  if (req.command == "klein" && req.klein_type == 3 && req.field == "t") req.field = "t^2 + 3";
  if (req.piped && req.field == "t" && !req.inputs.count("A")) {
    const Json& r = *req.piped;
    if (r.contains("request") && r["request"].contains("field")) req.field = r["request"]["field"].get<std::string>();
  }
  return req;
}

HomogeneousFoliation read_foliation(const Request& req, const Inputs& in) {
  const auto [a, b] = foliation_sources(req);
  const MPoly A = parse_input(in, a, kPlane), B = parse_input(in, b, kPlane);
  if (req.map) return associated_foliation(make_map(A, B));
  return make_foliation(A, B);
}

ImplicitWeb read_web(const Request& req, const Inputs& in) { return make_web(parse_input(in, required(req, "F"), kWebVars)); }

PValue parse_value(const Inputs& in, const std::string& s) {
  if (s == "inf") return PValue::inf();
  const Frac v = parse_input_rational(in, s, kConstant);
  ensure(v.is_constant(), ErrorCode::kInput, "a slope value must be a constant or 'inf'");
  return PValue::of(v);
}

// ---- commands ---------------------------------------------------------------------

Json cmd_discriminant(const Request& req, const Inputs& in) {
  const ImplicitWeb w = read_web(req, in);
  const WebDiscriminant D = web_discriminant(w);
  Json support = Json::array();
  for (const auto& f : D.support) support.push_back({{"factor", f.factor.str()}, {"multiplicity", f.multiplicity}});
  return Json{{"F", w.F.str()},           {"degree", w.d},         {"reduced", w.reduced},
              {"discriminant", D.value.str()}, {"unit", D.unit.str()}, {"support", support}};
}

NormalizedWeb read_component(const Request& req, const Inputs& in) {
  const ImplicitWeb w = read_web(req, in);
  return normalize_component(w, parse_input(in, optional_input(req, "line", "y"), kPlane));
}

Json cmd_smooth(const Request& req, const Inputs& in) {
  const NormalizedWeb nw = read_component(req, in);
  const SmoothnessReport r = smooth_along(nw.web);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"class", e.slope.m.str("p")}, {"nu", e.slope.nu}};
    if (e.slope.phi) j["slope"] = e.slope.phi->str();
    j["smooth"] = e.smooth;
    if (e.vanishing_locus) j["vanishing_locus"] = e.vanishing_locus->str();
    entries.push_back(std::move(j));
  }
  return Json{{"line", optional_input(req, "line", "y")},
              {"chart", nw.change.describe()},
              {"web", nw.web.F.str()},
              {"smooth", r.smooth},
              {"shear", r.shear},
              {"slopes", entries}};
}

Json cmd_criterion(const Request& req, const Inputs& in) {
  const NormalizedWeb nw = read_component(req, in);
  const Verdict v = criterion(nw.web);
  Json witnesses = Json::object();
  for (const auto& [name, value] : v.witnesses) witnesses[name] = value.str();
  Json j{{"line", optional_input(req, "line", "y")}, {"chart", nw.change.describe()}, {"web", nw.web.F.str()},
         {"holomorphic", v.holomorphic}, {"rule", v.rule},     {"shear", v.shear},
         {"witnesses", witnesses}};
  if (v.residue) j["residue"] = form_json(*v.residue);
  return j;
}

Json cmd_eta(const Request& req, const Inputs& in, bool three) {
  std::vector<Frac> slopes;
  for (const auto& s : req.slopes) slopes.push_back(parse_input_rational(in, s, kPlane));
  if (three) ensure(slopes.size() == 3, ErrorCode::kInput, "eta3 takes exactly three slopes");
  const OneForm eta = three ? eta3(slopes[0], slopes[1], slopes[2]) : eta_full(slopes);
  const TwoForm K = curvature(eta);
  Json sl = Json::array();
  for (const auto& s : slopes) sl.push_back(s.str());
  return Json{{"slopes", sl}, {"eta", form_json(eta)}, {"curvature", K.c.str()}, {"flat", K.is_zero()}};
}

Json cmd_legendre(const Request& req, const Inputs& in) {
  const HomogeneousFoliation h = read_foliation(req, in);
  const ImplicitWeb w = legendre(h);
  return Json{{"foliation", foliation_json(h)},
              {"legendre", legendre_polynomial(h).str()},
              {"web", w.F.str()},
              {"web_degree", w.d}};
}

Json cmd_flat(const Request& req, const Inputs& in) {
  const HomogeneousFoliation h = read_foliation(req, in);
  Json j{{"foliation", foliation_json(h)}};
  j.update(flatness_json(flatness_decision(h, options(req))));
  return j;
}

Json cmd_analyze(const Request& req, const Inputs& in) {
  const HomogeneousFoliation h = read_foliation(req, in);
  const AnalysisOptions opt = options(req);
  const RationalSphereMap f = gauss_map(h);
  Json fibers = Json::array();
  for (const auto& r : critical_fibers(h, opt)) fibers.push_back(fiber_json(r));
  Json j{{"foliation", foliation_json(h)},
         {"gauss_map", map_json(f)},
         {"legendre", legendre_polynomial(h).str()},
         {"critical_values", fibers},
         {"galois", galois_json(f, opt)}};
  if (h.d >= 3)
    j["flatness"] = flatness_json(flatness_decision(h, opt));
  else
    j["flatness"] = nullptr;
  return j;
}

Json cmd_galois(const Request& req, const Inputs& in) {
  const HomogeneousFoliation h = read_foliation(req, in);
  const RationalSphereMap f = gauss_map(h);
  Json j{{"map", map_json(f)}};
  j.update(galois_json(f, options(req)));
  return j;
}

Json cmd_klein(const Request& req, const Inputs& in) {
  ensure(req.klein_type >= 1 && req.klein_type <= 5, ErrorCode::kInput, "klein needs --type 1..5");
  unsigned n = 0;
  if (req.klein_type == 1) n = req.k.value_or(3);
  if (req.klein_type == 2) n = req.k.value_or(2);
  const RationalSphereMap f = klein_map(req.klein_type, n, in.ctx.field);
  Json j{{"type", req.klein_type}};
  if (n) j["k"] = n;
  j["map"] = map_json(f);
  j["foliation"] = foliation_json(associated_foliation(f));
  return j;
}

Json cmd_lemma47(const Request& req, const Inputs& in) {
  const HomogeneousFoliation h = read_foliation(req, in);
  const RationalSphereMap f = gauss_map(h);
  std::vector<PValue> values;
  if (req.p0.empty()) {
    for (const auto& r : critical_fibers(h, options(req))) values.push_back(r.value);
  } else {
    for (const auto& s : req.p0) values.push_back(parse_value(in, s));
  }
  Json entries = Json::array();
  for (const auto& v : values) {
    Json e{{"value", v.str()}};
    try {
      const Lemma47Result r = lemma47_sums(f, v);
      e["applicable"] = true;
      e["nu"] = r.nu;
      e["unconditional"] = r.unconditional;
      if (r.sums) e["sums"] = Json::array({(*r.sums)[0].str(), (*r.sums)[1].str(), (*r.sums)[2].str()});
      e["holomorphic_for_all_postcompositions"] = r.holomorphic;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kInput || !req.p0.empty()) throw;
      e["applicable"] = false;
      e["reason"] = err.what();
    }
    entries.push_back(std::move(e));
  }
  return Json{{"map", map_json(f)}, {"values", entries}};
}

Json request_echo(const Request& req) {
  Json inputs = Json::object();
  for (const auto& [k, v] : req.inputs) inputs[k] = v;
  if (!req.slopes.empty()) inputs["slopes"] = req.slopes;
  if (!req.p0.empty()) inputs["p0"] = req.p0;
  Json j{{"command", req.command}, {"inputs", inputs}, {"field", req.field}, {"params", req.params}};
  if (!req.subs.empty()) {
    Json s = Json::object();
    for (const auto& [k, v] : req.subs) s[k] = v;
    j["subs"] = s;
  }
  j["mode"] = mode_name(req.mode);
  j["prec"] = req.prec;
  j["tol"] = req.tol;
  j["seed"] = req.seed;
  if (req.map) j["map"] = true;
  if (req.command == "klein") {
    j["type"] = req.klein_type;
    if (req.k) j["k"] = *req.k;
  }
  return j;
}

int exit_code(ErrorCode c) { return static_cast<int>(c); }

Json error_json(ErrorCode code, const std::string& message) {
  Json e{{"code", error_code_name(code)}, {"exit_code", exit_code(code)}, {"message", message}};
  static const std::regex offset("offset ([0-9]+)");
  std::smatch m;
  if (std::regex_search(message, m, offset)) e["offset"] = std::stoul(m[1].str());
  return e;
}

void render(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render(out, v, indent + 1);
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !v.empty()) {
        out << pad << "-\n";
        render(out, v, indent + 1);
      } else {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"discriminant", "smooth", "criterion", "eta3",   "etafull",  "legendre",
                                          "analyze",      "flat",   "galois",    "klein",  "lemma47", "selftest"};
  return c;
}

Inputs make_inputs(const Request& req) {
  Inputs in;
  in.ctx.field = parse_field(req.field);
  in.ctx.params = req.params;
  ParseContext constants = in.ctx;
  constants.variables = {"~none"};
  for (const auto& [name, value] : req.subs) {
    ensure(std::find(req.params.begin(), req.params.end(), name) != req.params.end(), ErrorCode::kInput,
           "--subs names an undeclared parameter '" + name + "'");
    in.subs[name] = parse_rational(value, constants);
  }
  return in;
}

Frac parse_input_rational(const Inputs& in, const std::string& src, const std::vector<Symbol>& variables) {
  ParseContext ctx = in.ctx;
  ctx.variables = variables.empty() ? std::vector<Symbol>{"~none"} : variables;
  Frac f = parse_rational(src, ctx);
  if (!in.subs.empty()) f = f.substitute(in.subs);
  return f;
}

MPoly parse_input(const Inputs& in, const std::string& src, const std::vector<Symbol>& variables) {
  ParseContext ctx = in.ctx;
  ctx.variables = variables.empty() ? std::vector<Symbol>{"~none"} : variables;
  if (in.subs.empty()) return parse_polynomial(src, ctx);
  const Frac f = parse_rational(src, ctx).substitute(in.subs);
  ensure(f.is_polynomial(), ErrorCode::kInput, "input is not a polynomial");
  return f.num().scaled(f.den().constant_value().inverse());
}

Outcome run(const Request& raw) {
  const Request req = with_piped_field(raw);
  Outcome out;
  Json& rep = out.report;
  rep["schema"] = kSchema;
  rep["version"] = WEBCURV_VERSION;
  rep["command"] = req.command;
  rep["request"] = request_echo(req);
  rep["mode"] = mode_name(req.mode);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Inputs in = make_inputs(req);
    ensure(req.prec >= 64 && req.prec <= (1L << 20), ErrorCode::kInput, "--prec must lie in [64, 2^20]");
    ensure(req.tol > 0, ErrorCode::kInput, "--tol must be positive");
    const std::string& c = req.command;
    Json result;
    if (c == "discriminant") result = cmd_discriminant(req, in);
    else if (c == "smooth") result = cmd_smooth(req, in);
    else if (c == "criterion") result = cmd_criterion(req, in);
    else if (c == "eta3") result = cmd_eta(req, in, true);
    else if (c == "etafull") result = cmd_eta(req, in, false);
    else if (c == "legendre") result = cmd_legendre(req, in);
    else if (c == "analyze") result = cmd_analyze(req, in);
    else if (c == "flat") result = cmd_flat(req, in);
    else if (c == "galois") result = cmd_galois(req, in);
    else if (c == "klein") result = cmd_klein(req, in);
    else if (c == "lemma47") result = cmd_lemma47(req, in);
    else if (c == "selftest") {
      result = selftest();
      if (result["failed"].get<int>() > 0) out.exit_code = exit_code(ErrorCode::kInternal);
    } else raise(ErrorCode::kInput, "unknown command '" + c + "'");
    rep["result"] = std::move(result);
  } catch (const Error& e) {
    rep["error"] = error_json(e.code(), e.what());
    out.exit_code = exit_code(e.code());
  } catch (const Json::exception& e) {
    rep["error"] = error_json(ErrorCode::kInput, std::string("malformed report: ") + e.what());
    out.exit_code = exit_code(ErrorCode::kInput);
  } catch (const std::exception& e) {
    rep["error"] = error_json(ErrorCode::kInternal, e.what());
    out.exit_code = exit_code(ErrorCode::kInternal);
  }
  if (req.timing)
    rep["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  return out;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  render(out, report, 0);
  return out.str();
}

}  // namespace webcurv::app
