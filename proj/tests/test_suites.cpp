#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include <json.hpp>

#include "statgeo/suites.hpp"

using namespace statgeo;

namespace {

RunConfig small(const std::string& suite = "all", int points = 4) {
  RunConfig c;
  c.suite = suite;
  c.points = points;
  return c;
}

std::set<std::string> ids_of(const CheckReport& report) {
  std::set<std::string> out;
  for (const auto& r : report.rows) out.insert(r.id);
  return out;
}

}  // namespace

TEST(Suites, JsonIsByteIdenticalAcrossRuns) {
  for (const char* name : {"ex3_graph", "hyp_x2y2"}) {
    const auto model = load_fixture(name);
    EXPECT_EQ(to_json(run_suites(*model, small())), to_json(run_suites(*model, small()))) << name;
    // A fresh model compiles to the same report.
    EXPECT_EQ(to_json(run_suites(*model, small())), to_json(run_suites(*load_fixture(name), small()))) << name;
  }
}

TEST(Suites, SeedMovesSamplesButNotRows) {
  const auto model = load_fixture("ctrl_sasaki_indef");
  RunConfig other = small();
  other.seed = 7;
  const CheckReport a = run_suites(*model, small());
  const CheckReport b = run_suites(*model, other);
  EXPECT_EQ(ids_of(a), ids_of(b));
  EXPECT_NE(a.samples.front().points.front(), b.samples.front().points.front());
}

TEST(Suites, RowsAreSortedAndUnique) {
  const CheckReport report = run_suites(*load_fixture("hyp_x1y2"), small());
  EXPECT_TRUE(std::is_sorted(report.rows.begin(), report.rows.end(),
                             [](const CheckRow& a, const CheckRow& b) { return a.id < b.id; }));
  EXPECT_EQ(ids_of(report).size(), report.rows.size());
}

TEST(Suites, AllRunsOnlyApplicableSuites) {
  const CheckReport report = run_suites(*load_fixture("ctrl_sasaki"), small());
  std::set<std::string> suites;
  for (const auto& r : report.rows) suites.insert(r.suite);
  EXPECT_EQ(suites, (std::set<std::string>{"contact", "section3"}));
  EXPECT_EQ(report.samples.size(), 1u);
}

TEST(Suites, ConfigurationErrors) {
  const auto graph = load_fixture("ex3_graph");
  EXPECT_THROW(run_suites(*graph, small("section9")), ConfigError);
  EXPECT_THROW(run_suites(*graph, small("contact")), ConfigError);
  EXPECT_THROW(run_suites(*graph, small("ssi")), ConfigError);
  EXPECT_THROW(run_suites(*graph, small("section3", 0)), ConfigError);
  RunConfig bad_tol = small();
  bad_tol.tolerance = 0;
  EXPECT_THROW(run_suites(*graph, bad_tol), ConfigError);
  EXPECT_THROW(run_suites(*load_fixture("ctrl_sasaki"), small("section2")), ConfigError);
}

TEST(Suites, SuspectClaimsAreComputedRows) {
  const CheckReport graph = run_suites(*load_fixture("ex3_graph"), small("section3"));
  for (const char* id : {"section3.ambient.metric_defect", "section3.ambient.difference_self_adjoint"}) {
    const CheckRow* r = graph.find(id);
    ASSERT_NE(r, nullptr) << id;
    EXPECT_EQ(r->expected, Expectation::ReportOnly) << id;
    EXPECT_TRUE(r->finite) << id;
    EXPECT_GT(r->samples, 0) << id;
  }
  const CheckReport flat = run_suites(*load_fixture("ex4_flat_contact"), small("contact"));
  const CheckRow* nu = flat.find("contact.sasakian.nu_derivative");
  ASSERT_NE(nu, nullptr);
  EXPECT_EQ(nu->status, Status::ReportOnly);
  EXPECT_TRUE(nu->finite);
}

TEST(Suites, EveryRegistryFixturePassesItsAnnotations) {
  for (const auto& name : registry_names()) {
    const CheckReport report = run_suites(*load_fixture(name), small("all", 8));
    for (const CheckRow* r : report.failures()) ADD_FAILURE() << name << ": " << r->id << " = " << r->max_residual;
  }
}

TEST(Report, JsonSchemaFields) {
  const auto j = nlohmann::json::parse(to_json(run_suites(*load_fixture("ctrl_totally_geodesic"), small())));
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("fixture"), "ctrl_totally_geodesic");
  EXPECT_EQ(j.at("config").at("points"), 4);
  EXPECT_EQ(j.at("domains").size(), 2u);
  EXPECT_EQ(j.at("summary").at("failed"), 0);
  ASSERT_FALSE(j.at("rows").empty());
  for (const auto& row : j.at("rows")) {
    for (const char* key :
         {"id", "suite", "reference", "domain", "status", "expected", "max_residual", "argmax", "within_tolerance",
          "samples", "tolerance"}) {
      EXPECT_TRUE(row.contains(key)) << key;
    }
  }
}

TEST(Report, NotEvaluatedRowsHaveNullResidual) {
  const auto j = nlohmann::json::parse(to_json(run_suites(*load_fixture("ctrl_sasaki_indef"), small("ssi"))));
  int seen = 0;
  for (const auto& row : j.at("rows")) {
    if (row.at("status") != "not-evaluated") continue;
    ++seen;
    EXPECT_TRUE(row.at("max_residual").is_null());
    EXPECT_FALSE(row.at("within_tolerance").get<bool>());
  }
  EXPECT_GT(seen, 0);
}
