#include <sstream>

#include "json.hpp"
#include "vsharp/verify.hpp"

namespace vsharp {

using nlohmann::json;

namespace {

json check_json(const CheckResult& c) {
  return json{{"section", c.section},
              {"name", c.name},
              {"identity", c.identity},
              {"metric", std::string(to_string(c.metric))},
              {"value", c.value},
              {"threshold", c.threshold},
              {"passed", c.passed},
              {"cases", c.cases},
              {"vacuous", c.vacuous},
              {"detail", c.detail}};
}

const char* comparison(Metric m) {
  switch (m) {
    case Metric::MaxResidual: return "<";
    case Metric::MinRatio: return ">";
    case Metric::Mismatches: return "==";
  }
  return "<";
}

}  // namespace

std::string Report::to_json() const {
  json suites_json = json::array();
  for (auto s : suites) suites_json.push_back(std::string(suite_token(s)));
  json checks_json = json::array();
  for (const auto& c : checks) checks_json.push_back(check_json(c));
  json doc{{"schema", "vsharp.report"},
           {"version", 1},
           {"group", group},
           {"selected", selected},
           {"tolerance", tolerance},
           {"zero_functor", zero_functor},
           {"suites", std::move(suites_json)},
           {"passed", passed()},
           {"checks", std::move(checks_json)}};
  return doc.dump(2);
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "group " << group << ", selected {";
  for (std::size_t k = 0; k < selected.size(); ++k) out << (k ? ", " : "") << selected[k];
  out << "}, tolerance " << json(tolerance).dump() << "\n";
  if (zero_functor) out << "zero functor: no irrep has indicator -1 and root number -1; all checks are vacuous\n";
  std::string section;
  for (const auto& c : checks) {
    if (c.section != section) {
      section = c.section;
      out << "\n[" << section << "]\n";
    }
    out << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << ": " << to_string(c.metric) << " " << json(c.value).dump() << " "
        << comparison(c.metric) << " " << json(c.threshold).dump() << ", cases " << c.cases;
    if (c.vacuous) out << " (vacuous)";
    if (!c.detail.empty()) out << "; " << c.detail;
    out << "\n";
  }
  const auto failed = failures();
  out << "\n" << (failed.empty() ? "all checks passed" : std::to_string(failed.size()) + " check(s) failed") << " ("
      << checks.size() << " total)\n";
  for (const auto* c : failed) out << "  violated: " << c->name << " [" << c->section << "]\n";
  return out.str();
}

}  // namespace vsharp
