#pragma once

// Command layer shared by the webcurv executable and its tests: a parsed
// request goes in, a JSON report and an exit code come out.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "webcurv/foliation.hpp"
#include "webcurv/parse.hpp"

namespace webcurv::app {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "webcurv.report/1";

struct Request {
  std::string command;
  // Expression inputs by flag name: A, B, F, line, p0; slopes separately.
  std::map<std::string, std::string> inputs;
  std::vector<std::string> slopes;
  std::vector<std::string> p0;  // lemma47 values, "inf" allowed
  std::string field = "t";
  std::vector<std::string> params;
  // Parameter specializations applied to every parsed input.
  std::vector<std::pair<std::string, std::string>> subs;
  Mode mode = Mode::kExact;
  long prec = 256;
  int tol = 20;
  std::uint64_t seed = 0;
  bool text = false;
  bool timing = false;
  // --A/--B give the map [A:B] instead of a foliation (galois, lemma47).
  bool map = false;
  int klein_type = 0;
  std::optional<unsigned> k;
  // JSON report read from standard input (used when --A/--B are absent).
  std::optional<Json> piped;
};

struct Outcome {
  Json report;
  int exit_code = 0;
};

const std::vector<std::string>& commands();

// Never throws: failures become an "error" member and a nonzero exit code.
Outcome run(const Request& req);

// Human-readable rendering of a report.
std::string render_text(const Json& report);

// Checks of every worked example; each entry has name, pass and detail.
Json selftest();

// Parser entry points shared with run(), exposed for tests.
struct Inputs {
  ParseContext ctx;
  std::map<Symbol, Frac> subs;
};
Inputs make_inputs(const Request& req);
MPoly parse_input(const Inputs& in, const std::string& src, const std::vector<Symbol>& variables);
Frac parse_input_rational(const Inputs& in, const std::string& src, const std::vector<Symbol>& variables);

}  // namespace webcurv::app
