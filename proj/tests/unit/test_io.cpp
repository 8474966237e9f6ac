#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pdk/errors.hpp"
#include "pdk/io.hpp"

using namespace pdk;
using pdk::io::json;

namespace {

json ex1_spec(double r) {
  json spec = json::parse(R"({
    "variant": "G_r",
    "f": {"class": "stieltjes", "lambda": 1, "constants": {"C": 0, "D": 1}},
    "g": {"op": "minus_cos", "offset": 3},
    "h": {"op": "shift", "c": 1,
          "arg": {"op": "bernstein_compose",
                  "f": {"class": "bernstein", "constants": {"b": 1}},
                  "g": {"op": "sine"},
                  "h": {"op": "power", "exponent": 1.5}}},
    "spaces": [{"kind": "sphere", "param": 2},
               {"kind": "interval", "param": 1.5707963267948966},
               {"kind": "euclidean", "param": 2}]
  })");
  spec["r"] = r;
  return spec;
}

}  // namespace

TEST(ParseSpace, Kinds) {
  EXPECT_TRUE(std::holds_alternative<Euclidean>(io::parse_space(json{{"kind", "euclidean"}})));
  const auto e = std::get<Euclidean>(io::parse_space(json{{"kind", "euclidean"}, {"param", 3}, {"extent", 2.5}}));
  EXPECT_EQ(e.dim, 3);
  EXPECT_EQ(e.extent, 2.5);
  EXPECT_EQ(std::get<SphereGeodesic>(io::parse_space(json{{"kind", "sphere"}})).dim, 2);
  EXPECT_EQ(std::get<Interval>(io::parse_space(json{{"kind", "interval"}, {"param", 0.5}})).length, 0.5);
  EXPECT_TRUE(std::holds_alternative<Circle>(io::parse_space(json{{"kind", "circle"}})));
  const auto d = std::get<Discrete>(io::parse_space(json::parse(R"({"kind": "discrete", "param": ["x", "y"]})")));
  EXPECT_EQ(d.labels.size(), 2u);
}

TEST(ParseSpace, Errors) {
  EXPECT_THROW(io::parse_space(json{{"kind", "torus"}}), ConfigError);
  EXPECT_THROW(io::parse_space(json{{"param", 2}}), ConfigError);
  EXPECT_THROW(io::parse_space(json{{"kind", "interval"}}), ConfigError);
  EXPECT_THROW(io::parse_space(json{{"kind", "sphere"}, {"param", 1.5}}), ConfigError);
  EXPECT_THROW(io::parse_space(json::parse(R"({"kind": "discrete", "param": [1, 2]})")), ConfigError);
  EXPECT_THROW(io::parse_space(json{{"kind", "interval"}, {"param", -1.0}}), ParameterError);
  EXPECT_THROW(io::parse_spaces(json{{"kind", "circle"}}), ConfigError);
}

TEST(ParseFunctions, Stieltjes) {
  const auto f = io::parse_stieltjes(json::parse(
      R"({"class": "stieltjes", "lambda": 0.5, "constants": {"C": 1, "D": 2},
          "atoms": [[1, 3], {"location": 2, "weight": 0.5}]})"));
  const double w = 1.7;
  const double expected = 1 + 2 * std::pow(w, -0.5) + 3 * std::pow(w + 1, -0.5) + 0.5 * std::pow(w + 2, -0.5);
  EXPECT_NEAR(eval_stieltjes(f, w), expected, 1e-15 * expected);
  EXPECT_EQ(f.order(), 0.5);
}

TEST(ParseFunctions, CompleteBernsteinAndBernstein) {
  const auto b = io::parse_complete_bernstein(
      json::parse(R"({"class": "complete_bernstein", "lambda": 1, "constants": {"A": 1, "B": 2}, "atoms": [[1, 1]]})"));
  EXPECT_NEAR(eval_complete_bernstein(b, 1.0), 1 + 2 + 0.5, 1e-15);
  const auto bern = io::parse_bernstein(json::parse(R"({"class": "bernstein", "constants": {"a": 1, "b": 2}, "atoms": [[1, 1]]})"));
  EXPECT_NEAR(eval_bernstein(bern, 1.0), 1 + 2 + (1 - std::exp(-1.0)), 1e-15);
}

TEST(ParseFunctions, CompletelyMonotone) {
  const auto cm = io::parse_completely_monotone(json::parse(R"({"class": "cm_mixture", "atoms": [[0, 1], [1, 2]]})"));
  EXPECT_NEAR(eval_completely_monotone(cm, 1.0), 1 + 2 * std::exp(-1.0), 1e-15);
  const auto st = io::parse_completely_monotone(json::parse(R"({"class": "stieltjes", "lambda": 1, "constants": {"D": 1}})"));
  EXPECT_NEAR(eval_completely_monotone(st, 4.0), 0.25, 1e-16);
}

TEST(ParseFunctions, Errors) {
  EXPECT_THROW(io::parse_stieltjes(json::parse(R"({"class": "bernstein"})")), ConfigError);
  EXPECT_THROW(io::parse_stieltjes(json::parse(R"({"class": "stieltjes"})")), ConfigError);
  EXPECT_THROW(io::parse_stieltjes(json::parse(R"({"class": "stieltjes", "lambda": "one"})")), ConfigError);
  EXPECT_THROW(io::parse_stieltjes(json::parse(R"({"class": "stieltjes", "lambda": 1, "atoms": [[1]]})")),
               ConfigError);
  EXPECT_THROW(io::parse_stieltjes(json::parse(R"({"class": "stieltjes", "lambda": 1, "atoms": [[0, 1]]})")),
               ParameterError);
  EXPECT_THROW(io::parse_completely_monotone(json::parse(R"({"class": "gaussian"})")), ConfigError);
}

TEST(ParseCnd, OpsMatchDirectConstruction) {
  const json spec = json::parse(R"({"op": "bernstein_compose",
      "f": {"class": "bernstein", "constants": {"b": 1}},
      "g": {"op": "power", "exponent": 1.0},
      "h": {"op": "shift", "c": 0.5, "arg": {"op": "linear"}}})");
  const CNDFunction parsed = io::parse_cnd(spec);
  const CNDFunction direct = bernstein_compose(BernsteinFunction::identity(), power(1.0), shift(0.5, linear()));
  for (double a = 0; a < 2; a += 0.4)
    for (double b = 0; b < 2; b += 0.4) {
      const double d[] = {a, b};
      EXPECT_EQ(parsed(d), direct(d));
    }
  EXPECT_EQ(parsed.arity(), 2u);
  EXPECT_THROW(io::parse_cnd(json{{"op", "cosh"}}), ConfigError);
  EXPECT_THROW(io::parse_cnd(json{{"op", "power"}}), ConfigError);
  EXPECT_THROW(io::parse_cnd(json{{"op", "power"}, {"exponent", 3.0}}), ParameterError);
}

TEST(ParseModel, FirstExample) {
  const KernelModel m = io::parse_model(ex1_spec(1.0));
  EXPECT_EQ(m.name(), "G_r");
  EXPECT_DOUBLE_EQ(m.at_origin(), 0.5);
  EXPECT_EQ(spd_report(m).verdict, SpdVerdict::NecessaryConditionViolated);
  EXPECT_EQ(spd_report(io::parse_model(ex1_spec(2.0))).verdict, SpdVerdict::SpdGuaranteed);
}

TEST(ParseModel, Errors) {
  json spec = ex1_spec(1.0);
  spec["variant"] = "K_r";
  EXPECT_THROW(io::parse_model(spec), ConfigError);
  spec = ex1_spec(1.0);
  spec.erase("h");
  EXPECT_THROW(io::parse_model(spec), ConfigError);
  EXPECT_THROW(io::parse_model(ex1_spec(0.5)), ParameterError);
  spec = ex1_spec(1.0);
  spec["spaces"].erase(2);
  EXPECT_THROW(io::parse_model(spec), ConstructionError);
}

TEST(ParseJson, MalformedText) {
  EXPECT_THROW(io::parse_json_text("{\"variant\": "), ConfigError);
  EXPECT_THROW(io::read_json_file("/nonexistent/model.json"), ConfigError);
  EXPECT_EQ(io::parse_json_text("[1, 2]").size(), 2u);
}

TEST(ToJson, Points) {
  Eigen::VectorXd v(2);
  v << 1.0, NAN;
  EXPECT_EQ(io::to_json(Point{v}).dump(), "[1.0,null]");
  EXPECT_EQ(io::to_json(Point{0.25}).dump(), "0.25");
  EXPECT_EQ(io::to_json(Point{Label{2}}).dump(), R"({"label":2})");
}

TEST(ToJson, ReportsAndCounterexamples) {
  const KernelModel m = io::parse_model(ex1_spec(1.0));
  const json report = io::to_json(spd_report(m));
  EXPECT_EQ(report.at("verdict"), "necessary_condition_violated");
  EXPECT_EQ(report.at("violated"), "constant_in_yz");
  EXPECT_EQ(report.at("deciding_condition"), "critical_order_pure_power_necessary");
  EXPECT_TRUE(report.at("conditions").is_array());
  EXPECT_FALSE(report.contains("note"));

  const json cx = io::to_json(counterexample_2x2(m, ViolatedClause::ConstantInYZ));
  EXPECT_EQ(cx.at("clause"), "constant_in_yz");
  EXPECT_EQ(cx.at("gram").size(), 2u);
  EXPECT_GE(cx.at("abs_det").get<double>(), 0.0);

  json open_spec = ex1_spec(1.0);
  open_spec["f"]["constants"] = json{{"C", 1}, {"D", 1}};
  const json open = io::to_json(spd_report(io::parse_model(open_spec)));
  EXPECT_EQ(open.at("verdict"), "open_case");
  EXPECT_EQ(open.at("note"), "remains an open question");

  GramReport g;
  g.min_eig = -INFINITY;
  g.verdict = GramVerdict::SpdPass;
  const json gj = io::to_json(g);
  EXPECT_TRUE(gj.at("min_eig").is_null());
  EXPECT_EQ(gj.at("verdict"), "SPD_pass");
}
