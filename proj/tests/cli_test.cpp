#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "support.hpp"

using pitheory::io::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pitheory_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const std::string cmd = std::string("\"") + PITHEORY_CLI + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                            (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str()};
  }

  std::string corpus(const std::string& file) const { return "\"" + (oracle::corpus_dir() / file).string() + "\""; }

  fs::path dir_;
};

std::multiset<std::uint64_t> k_orders(const json& j) {
  std::multiset<std::uint64_t> out;
  for (const auto& r : j.at("reports")) out.insert(r.at("K_order").get<std::uint64_t>());
  return out;
}

}  // namespace

TEST_F(Cli, TableOfSymmetricGroup) {
  const auto r = run("table " + corpus("s3.json"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  std::vector<pitheory::Cyclotomic> degrees;
  for (const auto& row : j.at("chars")) degrees.push_back(pitheory::io::cyclotomic_from_json(row[0]));
  EXPECT_EQ(degrees, (std::vector<pitheory::Cyclotomic>{1, 1, 2}));
  EXPECT_EQ(j.at("chars")[2][0], json::parse(R"({"n": 1, "coeffs": [[2, 1]]})"));
}

TEST_F(Cli, TableRoundTripAndPerturbedIngest) {
  const fs::path table = dir_ / "s4.table.json";
  ASSERT_EQ(run("table " + corpus("s4.json") + " --out \"" + table.string() + "\"").exit_code, 0);
  const auto again = run("table " + corpus("s4.json") + " --ingest \"" + table.string() + "\"");
  ASSERT_EQ(again.exit_code, 0);
  std::ifstream in(table);
  EXPECT_EQ(json::parse(in), json::parse(again.out));

  json j;
  {
    std::ifstream f(table);
    j = json::parse(f);
  }
  j["chars"][1][1] = 7;
  {
    std::ofstream f(table);
    f << j.dump();
  }
  EXPECT_EQ(run("table " + corpus("s4.json") + " --ingest \"" + table.string() + "\"").exit_code, 3);
}

TEST_F(Cli, KernelsExamples) {
  const auto s3 = run("kernels " + corpus("s3.json") + " --pi \"p'3\"");
  ASSERT_EQ(s3.exit_code, 0);
  EXPECT_EQ(k_orders(json::parse(s3.out)), (std::multiset<std::uint64_t>{6, 3}));

  const auto c6 = run("kernels " + corpus("c6.json") + " --pi 3");
  ASSERT_EQ(c6.exit_code, 0);
  EXPECT_EQ(k_orders(json::parse(c6.out)), (std::multiset<std::uint64_t>{6, 2, 2}));

  const auto p3 = run("kernels " + corpus("s3.json") + " --p 3");
  ASSERT_EQ(p3.exit_code, 0);
  EXPECT_EQ(json::parse(p3.out), json::parse(s3.out));
}

TEST_F(Cli, KernelsOnIngestedBrauerTable) {
  const auto r = run("kernels " + corpus("a5.json") + " --ingest " + corpus("a5.brauer2.table.json"));
  ASSERT_EQ(r.exit_code, 0);
  // A5 is simple: the principal character has K = G, the others are faithful.
  EXPECT_EQ(k_orders(json::parse(r.out)), (std::multiset<std::uint64_t>{60, 1, 1, 1}));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("kernels " + corpus("a5.json") + " --pi 2,3").exit_code, 2);
  EXPECT_EQ(run("partial " + corpus("a5.json") + " --p 2").exit_code, 2);
  EXPECT_EQ(run("table \"" + (dir_ / "missing.json").string() + "\"").exit_code, 1);
  EXPECT_EQ(run("kernels " + corpus("s3.json")).exit_code, 1);
  EXPECT_EQ(run("kernels " + corpus("s3.json") + " --pi 4").exit_code, 1);
  EXPECT_EQ(run("counterexample --c-order 2 --h c3").exit_code, 1);
  EXPECT_NE(run("frobnicate").exit_code, 0);
}

TEST_F(Cli, PartialTable) {
  const auto r = run("partial " + corpus("s3.json") + " --pi 2");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("mode"), "partial");
  EXPECT_EQ(j.at("chars").size(), 2u);
  EXPECT_EQ(j.at("decomposition").size(), 3u);
}

TEST_F(Cli, Counterexamples) {
  for (const auto& [c, h, k, lift] : std::vector<std::tuple<int, std::string, int, int>>{
           {3, "c2", 2, 1}, {3, "v4", 4, 2}, {5, "c3", 3, 1}}) {
    const auto r = run("counterexample --c-order " + std::to_string(c) + " --h " + h);
    ASSERT_EQ(r.exit_code, 0) << h;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("L_order"), 1);
    EXPECT_EQ(j.at("K_order"), k);
    EXPECT_EQ(j.at("strict_lift").at("kernel_order"), lift);
  }
}

TEST_F(Cli, VerifyRecordsSeparabilitySkips) {
  fs::copy_file(oracle::corpus_dir() / "a5.json", dir_ / "a5.json");
  const auto r = run("verify \"" + dir_.string() + "\" --pi 2,3 --pi \"p'5\"");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  const auto& entry = j.at("entries").at(0);
  ASSERT_EQ(entry.at("pi_runs").size(), 2u);
  EXPECT_FALSE(entry.at("pi_runs")[0].at("separable").get<bool>());
  EXPECT_EQ(entry.at("pi_runs")[0].at("checks")[0].at("status"), "skipped");
  bool table_checked = false;
  for (const auto& c : entry.at("checks")) table_checked = table_checked || (c.at("name") == "row_orthogonality" && c.at("status") == "pass");
  EXPECT_TRUE(table_checked);
}

TEST_F(Cli, VerifyIsDeterministicAcrossJobCounts) {
  for (const auto* name : {"s3.json", "d8.json", "q8.json", "a4.json"}) fs::copy_file(oracle::corpus_dir() / name, dir_ / name);
  const auto one = run("verify \"" + dir_.string() + "\" --jobs 1");
  const auto three = run("verify \"" + dir_.string() + "\" --jobs 3");
  ASSERT_EQ(one.exit_code, 0);
  EXPECT_EQ(one.out, three.out);
}

TEST_F(Cli, VerifyFailsOnBrokenTable) {
  fs::copy_file(oracle::corpus_dir() / "a5.json", dir_ / "a5.json");
  std::ifstream in(oracle::corpus_dir() / "a5.brauer2.table.json");
  json j = json::parse(in);
  j["chars"][3][0] = 3;
  std::ofstream(dir_ / "a5.bad.table.json") << j.dump();
  const auto r = run("verify \"" + dir_.string() + "\" --pi 2");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_FALSE(r.out.empty());
}
