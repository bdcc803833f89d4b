#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "spq/report.hpp"
#include "spq/suite.hpp"

using namespace spq;
using json = nlohmann::json;

TEST(Report, GatingRules) {
  VerificationReport r("x");
  r.residual("a", 1e-12, 1e-9);
  r.info("b", 5.0);
  r.at_least("c", 1e-3, 1e-4);
  r.integer("d", 3, 3);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.count(Status::info), 1u);
  EXPECT_DOUBLE_EQ(r.max_residual(), 1e-12);
  r.at_least("e", 1e-6, 1e-4);
  EXPECT_FALSE(r.passed());
  VerificationReport s("y");
  s.flag("f", false);
  EXPECT_FALSE(s.passed());
}

TEST(Report, AppendPrefixesKeys) {
  VerificationReport a("a"), b("b");
  b.flag("z", true);
  a.append(b, "k=2");
  ASSERT_EQ(a.records.size(), 1u);
  EXPECT_EQ(a.records[0].key, "k=2/z");
}

TEST(Report, JsonShape) {
  VerificationReport r("demo");
  r.echo("n", "2");
  r.residual("a", 0.5, 1.0, "note");
  r.integer("b", 1, 2);
  auto j = json::parse(r.to_json());
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_EQ(j["summary"]["passed"], false);
  ASSERT_TRUE(j["records"].is_array());
  EXPECT_EQ(j["records"].size(), 2u);
  EXPECT_EQ(j["records"][0]["key"], "a");
  EXPECT_EQ(j["records"][1]["status"], "fail");
}

TEST(Report, SchemaCoversReportFields) {
  auto schema = json::parse(report_schema());
  EXPECT_TRUE(schema.contains("$schema"));
  VerificationReport r("demo");
  r.residual("a", 0.5, 1.0);
  auto j = json::parse(r.to_json());
  for (const auto& req : schema["required"]) EXPECT_TRUE(j.contains(req.get<std::string>())) << req;
}

TEST(Suite, NamesAndValidation) {
  const auto& names = suite_names();
  EXPECT_EQ(names.size(), 12u);
  SuiteConfig c;
  EXPECT_THROW(run_suite(c, "nope"), std::invalid_argument);
  c.q = 1.0;
  EXPECT_THROW(run_suite(c, "weyl"), std::invalid_argument);
  c = {};
  c.n = 1;
  EXPECT_THROW(run_suite(c, "weyl"), std::invalid_argument);
  c = {};
  c.words = {"1,5"};
  EXPECT_THROW(run_suite(c, "rtt"), std::invalid_argument);
}

TEST(Suite, DeterministicJson) {
  SuiteConfig c;
  c.n = 3;
  for (const std::string s : {"weyl", "branching", "t1"}) {
    auto a = run_suite(c, s).to_json(), b = run_suite(c, s).to_json();
    EXPECT_EQ(a, b) << s;
    EXPECT_TRUE(json::parse(a)["summary"]["passed"].get<bool>()) << s;
  }
}

TEST(Suite, SampledRunsAreSeedDeterministic) {
  SuiteConfig c;
  c.cutoff = 6;
  c.max_vectors = 20;
  c.seed = 9;
  c.tsamples = 2;
  EXPECT_EQ(run_suite(c, "unitarity").to_json(), run_suite(c, "unitarity").to_json());
}

TEST(Suite, EchoesConfiguration) {
  SuiteConfig c;
  auto j = json::parse(run_suite(c, "t1").to_json());
  EXPECT_EQ(j["config"]["n"], "2");
  EXPECT_EQ(j["config"]["cutoff"], "8");
}

TEST(Suite, BranchingWithPartitions) {
  SuiteConfig c;
  c.lambda = "2,1";
  auto r = run_suite(c, "branching");
  EXPECT_TRUE(r.passed());
  bool found = false;
  for (const auto& rec : r.records)
    if (rec.key.rfind("multiplicity", 0) == 0) {
      found = true;
      EXPECT_EQ(rec.value.value_or(-1), 2);
    }
  EXPECT_TRUE(found);
}
