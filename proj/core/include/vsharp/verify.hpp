#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vsharp/functor.hpp"

namespace vsharp {

enum class Suite { Functor, Prediction, Isotypic, Automorphisms, All };

// CLI tokens: thm216, pred214, s215, thm217, all. The role names functor,
// prediction, isotypic and automorphisms are accepted as aliases.
std::string_view suite_token(Suite s);
Suite suite_from_token(std::string_view token);  // throws InputError

enum class Metric {
  MaxResidual,  // passes when value < threshold
  MinRatio,     // passes when value > threshold
  Mismatches,   // passes when value == 0
};

std::string_view to_string(Metric m);

struct CheckResult {
  std::string section;   // "structure" or a suite token
  std::string name;      // short invariant name, e.g. "*^2 = -1"
  std::string identity;  // the statement being checked
  Metric metric = Metric::MaxResidual;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = true;
  std::size_t cases = 0;
  bool vacuous = false;
  std::string detail;  // worst case, or the exception text
};

struct Report {
  std::string group;
  std::vector<std::string> selected;
  double tolerance = 0.0;
  bool zero_functor = false;
  std::vector<Suite> suites;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::vector<const CheckResult*> failures() const;
  // Schema "vsharp.report", version 1.
  std::string to_json() const;
  // Numbers are rendered exactly as in to_json().
  std::string to_text() const;
};

// Runs the structural checks plus the requested suite(s). Never throws for
// mathematical failures; they are recorded in the report.
Report verify(const FunctorInstance& f, Suite suite = Suite::All);

}  // namespace vsharp
