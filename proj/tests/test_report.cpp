#include <gtest/gtest.h>

#include "report.hpp"

using namespace modp;
using nlohmann::json;

namespace {

Scenario make(json j) { return Scenario::from_json(j); }

}  // namespace

TEST(Report, EmptyReportIsEmptyArray) {
  Report r;
  EXPECT_EQ(emit(r, Format::Json), "[]\n");
}

TEST(Report, CsvLayout) {
  Report r;
  r.add_eq("b.second", 2, 3);
  r.add("a.first", "x,y", "x,y", true);
  r.series["d1.growth"] = {{2, 2}, {3, 2}};
  r.finalize();
  std::string csv = emit(r, Format::Csv);
  EXPECT_EQ(csv,
            "statement_id,expected,got,pass\n"
            "a.first,\"x,y\",\"x,y\",true\n"
            "b.second,2,3,false\n"
            "\nseries,radius,dim\n"
            "d1.growth,2,2\n"
            "d1.growth,3,2\n");
  EXPECT_FALSE(r.passed());
}

TEST(Report, TableHasFixedColumns) {
  Report r;
  r.add_true("x.ok", true);
  std::string t = emit(r, Format::Table);
  auto nl = t.find('\n');
  ASSERT_NE(nl, std::string::npos);
  std::string second = t.substr(nl + 1, t.find('\n', nl + 1) - nl - 1);
  EXPECT_EQ(second.substr(0, 4), "x.ok");
  EXPECT_EQ(second.substr(41, 4), "true");
  EXPECT_EQ(second.substr(second.size() - 4), "PASS");
}

TEST(Report, JsonSchema) {
  Report r = run_suite("d1-dims", make({{"p", 3}, {"weight", "r=1"}, {"poly", "T-1"}, {"N", 4}}));
  json j = json::parse(emit(r, Format::Json));
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["suite"], "d1-dims");
  EXPECT_TRUE(j["passed"].get<bool>());
  ASSERT_TRUE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("statement_id"));
    EXPECT_TRUE(c.contains("expected"));
    EXPECT_TRUE(c.contains("got"));
    EXPECT_TRUE(c.contains("pass"));
  }
  EXPECT_TRUE(j["series"].contains("d1.growth"));
  EXPECT_EQ(j["scenario"]["weight"], "p=3,f=1,r=1,a=0,z=1");
}

TEST(Report, SameSeedSameBytes) {
  Scenario s = make({{"p", 2}, {"f", 2}, {"weight", "r=1:0"}, {"poly", "T-1"}, {"N", 4}, {"samples", 50}, {"seed", 9}});
  for (const char* suite : {"decompositions", "hecke"}) {
    std::string a = emit(run_suite(suite, s), Format::Json);
    std::string b = emit(run_suite(suite, s), Format::Json);
    EXPECT_EQ(a, b) << suite;
  }
}

TEST(Report, ScenarioRoundTrip) {
  Scenario s = make({{"backend", "mixed"}, {"p", 5}, {"weight", "r=3,a=1"}, {"poly", "T^2-1"}, {"N", 4}});
  Scenario t = Scenario::from_json(s.to_json());
  EXPECT_EQ(s.to_json(), t.to_json());
  EXPECT_EQ(t.precision(), 12u);
  EXPECT_EQ(t.weight.r, std::vector<unsigned>{3});
}

TEST(Report, ConfigErrors) {
  EXPECT_THROW(make({{"p", 4}}).validate(), ConfigError);
  EXPECT_THROW(make({{"backend", "mixed"}, {"p", 3}, {"f", 2}, {"weight", "r=0:0"}}).validate(), ConfigError);
  EXPECT_THROW(make({{"backend", "adic"}}), ConfigError);
  EXPECT_THROW(make({{"p", 3}, {"N", 5}, {"prec", 4}}).validate(), ConfigError);
  EXPECT_THROW(make({{"p", 3}, {"m", 3}, {"f", 2}, {"weight", "r=0:0"}}).validate(), ConfigError);
  EXPECT_THROW(run_suite("nonsense", make({{"p", 3}})), ConfigError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Report, ElementJsonRoundTrip) {
  Model M(make({{"p", 3}, {"weight", "r=2"}, {"N", 3}}));
  Induced f = M.H->T(M.H->pi_v0());
  sv_axpy(M.V->F(), f, 2, M.H->id_v0());
  json j = element_to_json(*M.V, f);
  EXPECT_EQ(element_from_json(*M.V, j), f);
  EXPECT_THROW(element_from_json(*M.V, json::parse(R"([{"side":"+","n":0,"b":0,"vector":[1,2]}])")),
               std::exception);
}

TEST(Report, CommandHecke) {
  Scenario s = make({{"p", 3}, {"weight", "r=0"}, {"N", 3}});
  Model M(s);
  json args{{"element", element_to_json(*M.V, M.H->id_v0())}};
  Report r = run_command("cind", "T", s, args);
  Induced got = element_from_json(*M.V, r.data["result"]);
  EXPECT_EQ(got, M.H->T(M.H->id_v0()));
}

TEST(Report, CommandQuotientAndDiagram) {
  Scenario s = make({{"p", 3}, {"weight", "r=1"}, {"poly", "T-1"}, {"N", 4}});
  Report q = run_command("quotient", "make", s, json::object());
  ASSERT_TRUE(q.data.contains("kernel_dim_by_radius"));
  EXPECT_EQ(q.data["kernel_dim_by_radius"].size(), 5u);
  Report d = run_command("diagram", "d1", s, json{{"n", 3}});
  EXPECT_EQ(d.data["dim"], 2);
  EXPECT_THROW(run_command("diagram", "d7", s, json::object()), ConfigError);
}

TEST(Report, FailingChecksAreReported) {
  // cInd/T in characteristic p is not of finite length; the ball-2 S-power
  // check fails honestly.
  Report r = run_suite("char-p-nilpotence", make({{"p", 2}, {"weight", "r=0"}, {"poly", "T"}, {"N", 6}}));
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.checks.empty());
}
