#pragma once

#include <functional>
#include <string>
#include <vector>

namespace criteria {

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;  // seconds allowed, 0 when the check is untimed
};

// Scale < 1 shrinks the random instance counts (used by the unit tests).
struct Options {
  double scale = 1.0;
};

Outcome discriminants(const Options& = {});
Outcome smoothness(const Options& = {});
Outcome eta_golden(const Options& = {});
Outcome full_criterion_consistency(const Options& = {});
Outcome barycenter_equivalence(const Options& = {});
Outcome two_line_example(const Options& = {});
Outcome galois_suite(const Options& = {});
Outcome cyclic_case(const Options& = {});
Outcome exact_numeric_agreement(const Options& = {});
Outcome trace_properties(const Options& = {});
Outcome naturality(const Options& = {});

struct Entry {
  int number;
  std::string name;
  std::function<Outcome(const Options&)> run;
};
const std::vector<Entry>& all();

}  // namespace criteria
