#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "json.hpp"
#include "support.hpp"
#include "vsharp/bundle.hpp"
#include "vsharp/error.hpp"
#include "vsharp/verify.hpp"

using namespace vsharp;
using nlohmann::json;
using vsharp::testing::bundled_keys;
using vsharp::testing::functor_for;

namespace {

// Multiplies every [re, im] entry of a JSON matrix by `factor`.
void scale_matrix(json& m, double factor) {
  for (auto& row : m) {
    for (auto& entry : row) {
      entry[0] = entry[0].get<double>() * factor;
      entry[1] = entry[1].get<double>() * factor;
    }
  }
}

const CheckResult* find_check(const Report& r, const std::string& name) {
  const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == name; });
  return it == r.checks.end() ? nullptr : &*it;
}

}  // namespace

TEST(Verify, EveryBundledGroupPasses) {
  for (const auto& key : bundled_keys()) {
    const auto report = verify(functor_for(key));
    EXPECT_TRUE(report.passed()) << key << "\n" << report.to_text();
    EXPECT_EQ(report.suites.size(), 4u);
    for (const auto& c : report.checks) {
      if (c.metric == Metric::MaxResidual) {
        EXPECT_LT(c.value, 1e-9) << key << ": " << c.name;
      }
    }
  }
}

TEST(Verify, ZeroFunctorPassesVacuously) {
  const auto report = verify(functor_for("s3"));
  EXPECT_TRUE(report.passed());
  EXPECT_TRUE(report.zero_functor);
  for (const auto& c : report.checks) EXPECT_TRUE(c.vacuous) << c.name;
}

TEST(Verify, SingleSuiteRunsStructureAndThatSuite) {
  const auto report = verify(functor_for("q8"), Suite::Automorphisms);
  ASSERT_EQ(report.suites.size(), 1u);
  for (const auto& c : report.checks) EXPECT_TRUE(c.section == "structure" || c.section == "thm217") << c.section;
  const auto* count = find_check(report, "automorphism count");
  ASSERT_NE(count, nullptr);
  EXPECT_TRUE(count->passed);
}

TEST(Verify, SuiteTokens) {
  EXPECT_EQ(suite_from_token("thm216"), Suite::Functor);
  EXPECT_EQ(suite_from_token("pred214"), Suite::Prediction);
  EXPECT_EQ(suite_from_token("s215"), Suite::Isotypic);
  EXPECT_EQ(suite_from_token("thm217"), Suite::Automorphisms);
  EXPECT_EQ(suite_from_token("all"), Suite::All);
  EXPECT_EQ(suite_from_token("prediction"), Suite::Prediction);
  EXPECT_THROW(suite_from_token("everything"), InputError);
  for (auto s : {Suite::Functor, Suite::Prediction, Suite::Isotypic, Suite::Automorphisms, Suite::All}) {
    EXPECT_EQ(suite_from_token(suite_token(s)), s);
  }
}

TEST(Verify, CorruptedStarIsReported) {
  auto doc = json::parse(bundle_to_json(functor_for("q8")));
  scale_matrix(doc["symplectic"][0]["star"], 2.0);
  const auto f = parse_bundle(doc.dump());
  const auto report = verify(f);
  EXPECT_FALSE(report.passed());
  const auto* star = find_check(report, "*^2 = -1");
  ASSERT_NE(star, nullptr);
  EXPECT_FALSE(star->passed);
  EXPECT_GT(star->value, 1.0);
  EXPECT_NE(report.to_text().find("violated: *^2 = -1"), std::string::npos);
}

TEST(Verify, CorruptedSubspaceIsReported) {
  auto doc = json::parse(bundle_to_json(functor_for("q8")));
  // H0 = {1}: V is the whole ambient space; halve its stored form.
  scale_matrix(doc["subgroups"][0]["form"], 0.5);
  const auto report = verify(parse_bundle(doc.dump()));
  EXPECT_FALSE(report.passed());
  const auto* form = find_check(report, "form is the restricted cup");
  ASSERT_NE(form, nullptr);
  EXPECT_FALSE(form->passed);
}

TEST(Verify, BundleRoundTripIsStable) {
  for (const auto* key : {"q8", "c2xq8", "s3"}) {
    const auto f = functor_for(key);
    const auto text = bundle_to_json(f);
    const auto g = parse_bundle(text);
    EXPECT_EQ(bundle_to_json(g), text) << key;
    EXPECT_EQ(g.lattice().size(), f.lattice().size());
    EXPECT_EQ(g.selected_count(), f.selected_count());
    for (std::size_t i = 0; i < f.lattice().size(); ++i) {
      EXPECT_LT(max_abs_diff(g.space_at(i).basis, f.space_at(i).basis), 1e-15);
      EXPECT_LT(max_abs_diff(g.space_at(i).star, f.space_at(i).star), 1e-15);
    }
    EXPECT_TRUE(verify(g).passed()) << key;
  }
}

TEST(Verify, BundleFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "vsharp_verify_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "q8.bundle.json";
  const auto f = functor_for("q8");
  save_bundle(path, f);
  EXPECT_EQ(bundle_to_json(load_bundle(path)), bundle_to_json(f));
  EXPECT_DOUBLE_EQ(load_bundle(path, 1e-6).tolerances().tau, 1e-6);
  std::filesystem::remove_all(dir);
}

TEST(Verify, MalformedBundlesAreInputErrors) {
  EXPECT_THROW(parse_bundle("{"), InputError);
  EXPECT_THROW(parse_bundle("{\"format\": \"something else\"}"), InputError);
  auto doc = json::parse(bundle_to_json(functor_for("q8")));
  doc["subgroups"][1]["members"] = {0, 2};
  EXPECT_THROW(parse_bundle(doc.dump()), InputError);
  EXPECT_THROW(load_bundle("/nonexistent/bundle.json"), InputError);
}

TEST(Verify, TextAndJsonAgree) {
  const auto report = verify(functor_for("q8"));
  const auto doc = json::parse(report.to_json());
  EXPECT_EQ(doc["passed"], true);
  ASSERT_EQ(doc["checks"].size(), report.checks.size());
  const auto text = report.to_text();
  for (const auto& c : doc["checks"]) {
    // Each value appears in the text rendering with the same digits.
    EXPECT_NE(text.find(c["name"].get<std::string>() + ": "), std::string::npos);
    EXPECT_NE(text.find(c["value"].dump()), std::string::npos) << c["name"];
  }
  EXPECT_NE(text.find("all checks passed"), std::string::npos);
}
