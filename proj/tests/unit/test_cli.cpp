#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"pdk"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = pdk::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(PDK_CONFIG_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("pdk_cli_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(CliEval, OriginValue) {
  auto spec = json::parse(std::ifstream(config("example1_critical.json")));
  const json cfg{{"model", spec}, {"grid", {{0.0}, {0.0}, {0.0}}}};
  const auto r = run({"eval", "--config", write_temp("origin.json", cfg.dump())});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "t,u,v,value");
  EXPECT_EQ(rows[1], "0,0,0,0.5");
}

TEST(CliEval, FullGrid) {
  const auto r = run({"eval", "--config", config("example1_eval.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 1u + 11 * 11 * 11);
  const auto j = run({"eval", "--config", config("example1_eval.json"), "--format", "json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(json::parse(j.out).size(), 1331u);
}

TEST(CliErrors, ExitCodes) {
  EXPECT_EQ(run({"eval", "--config", write_temp("bad.json", "{\"variant\": ")}).code, 2);
  EXPECT_EQ(run({"eval", "--config", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"certify", "--config", config("example1_spd.json"), "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"certify", "--config", config("example1_spd.json"), "--mode", "maybe"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--config", config("example1_spd.json")}).code, 2);

  auto spec = json::parse(std::ifstream(config("example1_spd.json")));
  spec["r"] = 0.5;
  const auto low = run({"report", "--config", write_temp("low_r.json", spec.dump())});
  EXPECT_EQ(low.code, 2);
  EXPECT_FALSE(low.err.empty());
}

TEST(CliEval, NegativeDistanceIsADomainError) {
  auto spec = json::parse(std::ifstream(config("example1_spd.json")));
  const json cfg{{"model", spec}, {"grid", {{0.0}, {0.0}, {-3.0}}}};
  const auto r = run({"eval", "--config", write_temp("negative.json", cfg.dump())});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NE(r.err.find("distance v"), std::string::npos);
}

TEST(CliCertify, SpdFixturePasses) {
  const auto r = run({"certify", "--config", config("example1_spd.json"), "--mode", "spd", "--trials", "5",
                      "--n", "20", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(json::parse(rows[0]).at("verdict"), "SPD_pass");
  const json summary = json::parse(rows.back()).at("summary");
  EXPECT_EQ(summary.at("passed"), 5);
  EXPECT_TRUE(summary.at("pass").get<bool>());
}

TEST(CliCertify, EmbeddedCounterexampleFails) {
  const auto r = run({"certify", "--config", config("example1_critical.json"), "--mode", "spd", "--trials", "3",
                      "--embed-counterexample"});
  EXPECT_EQ(r.code, 1) << r.err;
  const json summary = json::parse(lines(r.out).back()).at("summary");
  EXPECT_EQ(summary.at("embedded_clause"), "constant_in_yz");
  EXPECT_FALSE(summary.at("pass").get<bool>());
}

TEST(CliCertify, OutputFileAndCsv) {
  const fs::path out = fs::temp_directory_path() / "pdk_cli_test_certify.csv";
  const auto r = run({"certify", "--config", config("product.json"), "--trials", "4", "--format", "csv",
                      "--output", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = lines(buf.str());
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "trial,seed,n,min_eig,max_eig,scale,symmetry_residual,verdict");
  EXPECT_EQ(rows.back().rfind("# ", 0), 0u);
}

TEST(CliReport, VerdictsFromConfigs) {
  const auto spd = run({"report", "--config", config("example1_spd.json")});
  ASSERT_EQ(spd.code, 0);
  EXPECT_EQ(json::parse(spd.out).at("verdict"), "SPD_guaranteed");
  const auto open = run({"report", "--config", config("open_case.json")});
  EXPECT_EQ(json::parse(open.out).at("verdict"), "open_case");
  const auto ex2 = run({"report", "--config", config("example2.json")});
  EXPECT_EQ(json::parse(ex2.out).at("verdict"), "SPD_guaranteed");
}

TEST(CliCounterexample, SingularPair) {
  const auto r = run({"counterexample", "--config", config("example1_critical.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json cx = json::parse(r.out);
  EXPECT_EQ(cx.at("clause"), "constant_in_yz");
  EXPECT_LE(cx.at("abs_det").get<double>(), 1e-12 * cx.at("scale").get<double>() * cx.at("scale").get<double>());
}

TEST(CliGram, CsvHeaderAndSize) {
  const auto r = run({"gram", "--config", config("example2.json"), "--n", "7", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], "# n=7");
}

TEST(CliSuite, FilterAndDeterminism) {
  const auto cnd = run({"suite", "--filter", "cnd", "--format", "json"});
  ASSERT_EQ(cnd.code, 0) << cnd.out << cnd.err;
  const json j = json::parse(cnd.out);
  ASSERT_EQ(j.at("criteria").size(), 1u);
  EXPECT_EQ(j.at("criteria")[0].at("group"), "cnd");

  const auto a = run({"suite", "--filter", "pd", "--seed", "7"});
  const auto b = run({"suite", "--filter", "pd", "--seed", "7"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"suite", "--filter", "nothing"}).code, 2);
}
