#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "sumlab/exponents.hpp"
#include "sumlab/io.hpp"

namespace {

using namespace sumlab;

// ---------------------------------------------------------------------------
// Rational parsing
// ---------------------------------------------------------------------------

TEST(RationalParsing, JsonValuesAcceptIntegersAndStrings) {
  EXPECT_EQ(rational_from_json(Json(3)), ExtRational(3));
  EXPECT_EQ(rational_from_json(Json("3/2")), ExtRational(3, 2));
  EXPECT_TRUE(rational_from_json(Json("inf")).is_infinite());
  EXPECT_THROW(rational_from_json(Json(1.5)), std::invalid_argument);
  EXPECT_THROW(rational_from_json(Json::array()), std::invalid_argument);
}

TEST(RationalParsing, LenientGrammarConvertsDecimalsExactly) {
  EXPECT_EQ(parse_rational_lenient("1.5"), ExtRational(3, 2));
  EXPECT_EQ(parse_rational_lenient("0.1"), ExtRational(1, 10));
  EXPECT_EQ(parse_rational_lenient(".25"), ExtRational(1, 4));
  EXPECT_EQ(parse_rational_lenient("-2.75"), ExtRational(-11, 4));
  EXPECT_EQ(parse_rational_lenient("2"), ExtRational(2));
  EXPECT_EQ(parse_rational_lenient("4/3"), ExtRational(4, 3));
  EXPECT_TRUE(parse_rational_lenient("inf").is_infinite());
  EXPECT_THROW(parse_rational_lenient("1."), std::invalid_argument);
  EXPECT_THROW(parse_rational_lenient("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_rational_lenient("a.b"), std::invalid_argument);
}

TEST(RationalParsing, ListsSplitOnCommas) {
  auto xs = parse_rational_list("1,3/2,inf");
  ASSERT_EQ(xs.size(), 3u);
  EXPECT_EQ(xs[0], ExtRational(1));
  EXPECT_EQ(xs[1], ExtRational(3, 2));
  EXPECT_TRUE(xs[2].is_infinite());

  // Strict mode rejects decimals; lenient mode accepts them.
  EXPECT_THROW(parse_rational_list("1.5,1"), std::invalid_argument);
  auto ys = parse_rational_list("1.5,1", /*lenient=*/true);
  EXPECT_EQ(ys[0], ExtRational(3, 2));

  EXPECT_THROW(parse_rational_list(""), std::invalid_argument);
  EXPECT_THROW(parse_rational_list("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_rational_list("1,2,"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Scenario files
// ---------------------------------------------------------------------------

TEST(ScenarioJson, ParsesTheSingletonSchema) {
  Json j = Json::parse(R"({
    "m": 3,
    "blocks": [[1], [2], [3]],
    "q": "2",
    "r": ["1", "1", "1"],
    "p": ["1", "1", "1"]
  })");
  PartitionScenario sc = scenario_from_json(j);
  EXPECT_EQ(sc.m, 3);
  EXPECT_EQ(sc.n(), 3);
  EXPECT_EQ(sc.q, ExtRational(2));
  // This is the classical trilinear scenario: best exponent 3/2.
  ExponentResult res = best_exponent(sc);
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(*res.s, ExtRational(3, 2));
}

TEST(ScenarioJson, AcceptsIntegerValuesAndCoarserBlocks) {
  Json j = Json::parse(R"({
    "m": 4,
    "blocks": [[1, 3], [2, 4]],
    "q": 2,
    "r": [1, "3/2"],
    "p": ["1", 2]
  })");
  PartitionScenario sc = scenario_from_json(j);
  EXPECT_EQ(sc.n(), 2);
  EXPECT_EQ(sc.block_size(0), 2);
  EXPECT_EQ(sc.r[1], ExtRational(3, 2));
  EXPECT_EQ(sc.p[1], ExtRational(2));
}

TEST(ScenarioJson, RejectsMalformedInput) {
  EXPECT_THROW(scenario_from_json(Json::parse("[]")), std::invalid_argument);
  EXPECT_THROW(scenario_from_json(Json::parse(R"({"m": 2})")), std::invalid_argument);
  // Decimal exponent: the exact grammar must refuse it.
  EXPECT_THROW(scenario_from_json(Json::parse(
                   R"({"m": 1, "blocks": [[1]], "q": "2", "r": ["1.5"], "p": ["1"]})")),
               std::invalid_argument);
  // Blocks that do not partition 1..m fail scenario validation.
  EXPECT_THROW(scenario_from_json(Json::parse(
                   R"({"m": 2, "blocks": [[1]], "q": "2", "r": ["1"], "p": ["1"]})")),
               std::invalid_argument);
}

TEST(ScenarioJson, LoadsFromDiskAndReportsMissingFiles) {
  const std::string path = "io_test_scenario.json";
  {
    std::ofstream out(path);
    out << R"({"m": 2, "blocks": [[1], [2]], "q": "2", "r": ["1", "1"], "p": ["1", "1"]})";
  }
  PartitionScenario sc = load_scenario(path);
  EXPECT_EQ(sc.m, 2);
  ExponentResult res = best_exponent(sc);
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(*res.s, ExtRational(4, 3));
  std::remove(path.c_str());

  EXPECT_THROW(load_scenario("no_such_file.json"), std::runtime_error);

  const std::string bad = "io_test_bad.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  EXPECT_THROW(load_scenario(bad), std::runtime_error);
  std::remove(bad.c_str());
}

// ---------------------------------------------------------------------------
// JSON writers
// ---------------------------------------------------------------------------

TEST(ResultJson, ExponentResultCarriesExactAndDecimalForms) {
  PartitionScenario sc = PartitionScenario::singletons(
      3, ExtRational(2), {ExtRational(1), ExtRational(1), ExtRational(1)},
      {ExtRational(1), ExtRational(1), ExtRational(1)});
  Json j = to_json(best_exponent(sc));
  EXPECT_EQ(j["s"], "3/2");
  EXPECT_DOUBLE_EQ(j["s_decimal"].get<double>(), 1.5);
  EXPECT_EQ(j["theorem"], "MAIN1");
  ASSERT_TRUE(j["conditions"].is_array());
  ASSERT_FALSE(j["conditions"].empty());
  for (const auto& c : j["conditions"]) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("lhs"));
    EXPECT_TRUE(c.contains("rel"));
    EXPECT_TRUE(c.contains("rhs"));
    EXPECT_TRUE(c["pass"].is_boolean());
  }
}

TEST(ResultJson, EmptyExponentSerializesAsNull) {
  ExponentResult res;
  res.warnings.push_back("nothing applies");
  Json j = to_json(res);
  EXPECT_TRUE(j["s"].is_null());
  EXPECT_TRUE(j["s_decimal"].is_null());
  EXPECT_EQ(j["theorem"], "NONE");
  EXPECT_EQ(j["warnings"][0], "nothing applies");
}

TEST(ResultJson, CheckReportRoundsTrip) {
  NonnegTensor t(Tensor({2, 2}, {1.0, 1.0, 1.0, 1.0}));
  CheckReport rep = popa_check(t, ExtRational(2), {ExtRational(1), ExtRational(1)});
  Json j = to_json(rep);
  EXPECT_TRUE(j["holds"].get<bool>());
  EXPECT_TRUE(j["rhs_certified"].get<bool>());
  EXPECT_EQ(j["verdict"], "HOLDS");
  EXPECT_NEAR(j["ratio"].get<double>(), 1.0, 1e-12);
}

TEST(ResultJson, CampaignSummaryUsesTheContractedKeys) {
  auto dims = DimsProvider::fixed_dims({3, 3});
  CampaignResult res =
      popa_campaign(10, dims, ExtRational(2), {ExtRational(1), ExtRational(1)}, 99);
  Json j = to_json(res);
  ASSERT_TRUE(j.contains("summary"));
  EXPECT_EQ(j["summary"]["trials"], 10);
  EXPECT_EQ(j["summary"]["violations"], 0);
  EXPECT_FALSE(j.contains("rows"));
  // The verify subcommand greps for this exact fragment.
  EXPECT_NE(j.dump(2).find("\"violations\": 0"), std::string::npos);

  Json with_rows = to_json(res, /*include_rows=*/true);
  ASSERT_TRUE(with_rows.contains("rows"));
  EXPECT_EQ(with_rows["rows"].size(), 10u);
  EXPECT_EQ(with_rows["rows"][0]["trial"], 0);
}

TEST(ResultJson, WitnessReportPrintsIntegerInnerProduct) {
  LambdaSpec spec(1, 1, 2);
  WitnessReport rep = witness_report(2, spec, spec, ExtRational(4, 3));
  Json j = to_json(rep);
  EXPECT_TRUE(j["inner_product"].is_number_integer());
  EXPECT_EQ(j["inner_product"], 4);
  EXPECT_EQ(j["margin"], "0");
  EXPECT_NE(j.dump(2).find("\"inner_product\": 4"), std::string::npos);
}

TEST(ResultJson, WitnessSeriesSerializesFits) {
  WitnessSeries series = opti2_witness_experiment({16, 32, 64}, 2.0, 2.0);
  Json j = to_json(series);
  EXPECT_EQ(j["n"].size(), 3u);
  EXPECT_NEAR(j["lhs_fit"]["slope"].get<double>(), 0.5, 1e-9);
}

// ---------------------------------------------------------------------------
// CSV writers and determinism
// ---------------------------------------------------------------------------

TEST(Csv, CampaignRowsAreOnePerTrial) {
  auto dims = DimsProvider::fixed_dims({2, 2});
  CampaignResult res =
      popa_campaign(3, dims, ExtRational(2), {ExtRational(1), ExtRational(1)}, 1234);
  std::string csv = campaign_csv(res);
  EXPECT_EQ(csv.rfind("trial,seed,lhs,rhs,ratio,holds\n", 0), 0u);
  // Header plus one line per trial, each ending in the verdict column.
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  EXPECT_EQ(lines, 4);
  EXPECT_NE(csv.find(",true\n"), std::string::npos);
}

TEST(Csv, DoubleFormattingRoundTrips) {
  EXPECT_EQ(csv_double(1.5), "1.5");
  EXPECT_EQ(csv_double(32.0), "32.0");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(csv_double(third)), third);
}

TEST(Determinism, SameInputsGiveByteIdenticalJson) {
  auto dims = DimsProvider::fixed_dims({3, 3, 3});
  auto run = [&] {
    CampaignResult res = popa_campaign(
        5, dims, ExtRational(2), {ExtRational(1), ExtRational(1), ExtRational(1)}, 777);
    return to_json(res, true).dump(2) + campaign_csv(res);
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
