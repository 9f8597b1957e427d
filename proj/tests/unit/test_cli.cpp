#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "support.hpp"

using nlohmann::json;
using vsharp::testing::catalog_path;
using vsharp::testing::fixture_dir;
using vsharp::testing::weights_path;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "vsharp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = vsharp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Exit status of the real executable, output discarded.
int exit_status(const std::string& args) {
  const std::string cmd = std::string("\"") + VSHARP_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("vsharp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string bundle(const std::string& key) {
    const auto path = (dir_ / (key + ".bundle.json")).string();
    const auto r = run_cli({"build", "--irreps", catalog_path(key).string(), "--weights", weights_path(key).string(), "--bundle", path});
    EXPECT_EQ(r.code, 0) << r.err;
    return path;
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, AnalyzeReportsIndicators) {
  const auto r = run_cli({"analyze", "--irreps", catalog_path("q8").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("symplectic"), std::string::npos);
  EXPECT_NE(r.out.find("catalog complete"), std::string::npos);
  EXPECT_NE(r.out.find("#{g : g^2 = e} = 2, sum FS(pi) deg(pi) = 2"), std::string::npos);
}

TEST_F(CliTest, AnalyzeJson) {
  const auto r = run_cli({"analyze", "--irreps", catalog_path("c2xq8").string(), "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["order"], 16);
  EXPECT_EQ(doc["subgroups"], 19);
  EXPECT_EQ(doc["indicator_degree_sum"], doc["square_roots_of_identity"]);
}

TEST_F(CliTest, AnalyzeIncompleteCatalogExitsTwo) {
  const auto r = run_cli({"analyze", "--irreps", (fixture_dir() / "q8_missing_1d.json").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("INCOMPLETE"), std::string::npos);
}

TEST_F(CliTest, BuildVerifyPredict) {
  const auto path = bundle("q8");
  const auto v = run_cli({"verify", "--bundle", path});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("all checks passed"), std::string::npos);

  const auto p = run_cli({"predict", "--bundle", path, "--subgroup", "H0"});
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("dim V_K = 2"), std::string::npos);

  const auto pj = run_cli({"predict", "--bundle", path, "--subgroup", "1,-1,i,-i", "--output", "json"});
  ASSERT_EQ(pj.code, 0) << pj.err;
  EXPECT_EQ(json::parse(pj.out)["predicted_order"], 0);
  EXPECT_EQ(json::parse(pj.out)["field_degree"], 2);
}

TEST_F(CliTest, VerifySingleSuiteAsJson) {
  const auto path = bundle("c2xq8");
  const auto r = run_cli({"verify", "--bundle", path, "--suite", "thm217", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["passed"], true);
  EXPECT_EQ(doc["suites"], json::array({"thm217"}));
}

TEST_F(CliTest, VerifyBuildsFromCatalog) {
  const auto r = run_cli({"verify", "--irreps", catalog_path("q12").string(), "--weights", weights_path("q12").string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(CliTest, ZeroFunctorWarns) {
  const auto path = (dir_ / "s3.json").string();
  const auto r = run_cli({"build", "--irreps", catalog_path("s3").string(), "--bundle", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("zero functor"), std::string::npos);
}

TEST_F(CliTest, CorruptedBundleExitsOne) {
  const auto path = bundle("q8");
  auto doc = json::parse(vsharp::read_text_file(path));
  for (auto& row : doc["symplectic"][0]["star"]) {
    for (auto& entry : row) entry[0] = entry[0].get<double>() * 3.0;
  }
  vsharp::write_file_atomically(path, doc.dump());
  const auto r = run_cli({"verify", "--bundle", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("violated: *^2 = -1"), std::string::npos);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(run_cli({"verify", "--bundle", (dir_ / "missing.json").string()}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--bundle", bundle("q8"), "--suite", "nope"}).code, 2);
  EXPECT_EQ(run_cli({"predict", "--bundle", bundle("q8"), "--subgroup", "1,i"}).code, 2);
  EXPECT_EQ(run_cli({"predict", "--bundle", bundle("q8"), "--subgroup", "H99"}).code, 2);
  EXPECT_EQ(run_cli({"build", "--irreps", catalog_path("s3").string(), "--weights",
                     (fixture_dir() / "s3_orthogonal_weights.json").string(), "--bundle", (dir_ / "x.json").string()})
                .code,
            2);
  EXPECT_EQ(run_cli({"build", "--irreps", catalog_path("q8").string()}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--bundle", bundle("q8"), "--tolerance", "-1"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

TEST_F(CliTest, FetchFromCache) {
  std::filesystem::copy_file(fixture_dir() / "lmfdb" / "2.163.8t5.1c1.json", dir_ / "2.163.8t5.1c1.json");
  const auto r = run_cli({"fetch", "2.163.8t5.1c1", "--cache-dir", dir_.string(), "--offline"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("W = -1"), std::string::npos);
  EXPECT_EQ(run_cli({"fetch", "2.1.1t1.1c1", "--cache-dir", dir_.string(), "--offline"}).code, 2);
}

TEST_F(CliTest, ExecutableExitCodes) {
  const auto q8 = bundle("q8");
  EXPECT_EQ(exit_status("verify --bundle \"" + q8 + "\""), 0);
  EXPECT_EQ(exit_status("verify --bundle \"" + (dir_ / "none.json").string() + "\""), 2);
  auto doc = json::parse(vsharp::read_text_file(q8));
  for (auto& row : doc["symplectic"][0]["star"]) {
    for (auto& entry : row) entry[0] = entry[0].get<double>() * 3.0;
  }
  const auto bad = (dir_ / "bad.json").string();
  vsharp::write_file_atomically(bad, doc.dump());
  EXPECT_EQ(exit_status("verify --bundle \"" + bad + "\""), 1);
}
