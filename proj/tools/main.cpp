#include <unistd.h>

#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <set>

#include "app/app.hpp"

namespace {

using webcurv::app::Json;
using webcurv::app::Request;

// Expression values may start with '-' ("--B -x^3"), which a generic option
// parser would take for a flag, so such pairs are glued into "--B=-x^3".
std::vector<std::string> glue_expression_flags(int argc, char** argv) {
  static const std::set<std::string> kExpr{"--A", "--B", "--F", "--slopes", "--line", "--p0", "--subs"};
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (kExpr.count(a) && i + 1 < argc) {
      out.push_back(a + "=" + argv[++i]);
    } else {
      out.push_back(a);
    }
  }
  std::reverse(out.begin(), out.end());  // CLI11 consumes the vector from the back
  return out;
}

bool reads_foliation(const std::string& command) {
  static const std::set<std::string> kCommands{"legendre", "analyze", "flat", "galois", "lemma47"};
  return kCommands.count(command) > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Curvature of planar webs and flatness of Legendre transforms of homogeneous foliations"};
  cli.set_version_flag("--version", WEBCURV_VERSION);
  Request req;
  std::string mode = "exact", subs;
  std::string a, b, f, line;
  bool json = false;
  cli.add_option("command", req.command, "Command to run")->required()->check(CLI::IsMember(webcurv::app::commands()));
  cli.add_option("--mode", mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
  cli.add_option("--prec", req.prec, "Working precision in bits (numeric mode)")->default_val(256);
  cli.add_option("--tol", req.tol, "Zero threshold 10^-tol (numeric mode)")->default_val(20);
  cli.add_option("--field", req.field, "Minimal polynomial of theta in t; 't' means Q")->default_val("t");
  cli.add_option("--params", req.params, "Comma-separated parameter names")->delimiter(',');
  cli.add_option("--subs", subs, "Parameter values, e.g. l=2,m=1/2");
  cli.add_option("--seed", req.seed, "Seed for numeric starting points")->default_val(0);
  cli.add_option("--A", a, "Coefficient A(x, y) of the foliation A dx + B dy");
  cli.add_option("--B", b, "Coefficient B(x, y)");
  cli.add_option("--F", f, "Implicit web F(x, y, p) with p = dy/dx");
  cli.add_option("--line", line, "Discriminant component, a line in x and y (default y)");
  cli.add_option("--slopes", req.slopes, "Comma-separated slopes of a decomposable web")->delimiter(',');
  cli.add_option("--p0", req.p0, "Comma-separated slope values, 'inf' allowed")->delimiter(',');
  cli.add_option("--type", req.klein_type, "Klein type 1..5");
  cli.add_option("--k", req.k, "Degree (type 1) or half degree (type 2)");
  cli.add_flag("--map", req.map, "--A/--B give the map [A:B] instead of a foliation");
  auto* json_flag = cli.add_flag("--json", json, "JSON output (default)");
  cli.add_flag("--text", req.text, "Plain-text output")->excludes(json_flag);
  cli.add_flag("--timing", req.timing, "Include wall-clock timing in the report");

  try {
    std::vector<std::string> args = glue_expression_flags(argc, argv);
    cli.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return 1;
  }

  req.mode = mode == "numeric" ? webcurv::Mode::kNumeric : webcurv::Mode::kExact;
  if (!a.empty()) req.inputs["A"] = a;
  if (!b.empty()) req.inputs["B"] = b;
  if (!f.empty()) req.inputs["F"] = f;
  if (!line.empty()) req.inputs["line"] = line;
  if (!subs.empty()) {
    std::size_t start = 0;
    while (start <= subs.size()) {
      const std::size_t end = std::min(subs.find(',', start), subs.size());
      const std::string item = subs.substr(start, end - start);
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) {
        std::cerr << "--subs expects name=value pairs\n";
        return 1;
      }
      req.subs.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      start = end + 1;
    }
  }
  if (reads_foliation(req.command) && a.empty() && b.empty() && !isatty(STDIN_FILENO)) {
    const std::string piped{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    if (piped.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        req.piped = Json::parse(piped);
      } catch (const Json::parse_error& e) {
        std::cerr << "standard input is not a JSON report: " << e.what() << "\n";
        return 1;
      }
    }
  }

  const webcurv::app::Outcome out = webcurv::app::run(req);
  if (req.text)
    std::cout << webcurv::app::render_text(out.report);
  else
    std::cout << out.report.dump(2) << "\n";
  return out.exit_code;
}
