#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "dlap/errors.hpp"
#include "dlap/verify.hpp"

using namespace dlap;

namespace {

const CheckReport& find(const std::vector<CheckReport>& reports, const std::string& id) {
  for (const auto& r : reports) {
    if (r.check_id == id) return r;
  }
  FAIL("missing report " << id);
  return reports.front();
}

}  // namespace

TEST_CASE("every registered check passes on its default grid") {
  for (const auto& id : check_ids()) {
    CAPTURE(id);
    const std::vector<CheckReport> reports = run_check(id);
    REQUIRE(!reports.empty());
    const CheckReport& r = reports.front();
    CHECK(r.check_id == id);
    CHECK(r.passed);
    CHECK(!r.grid.empty());
    CHECK(r.max_rel_error <= registered_tolerance(id));
  }
}

TEST_CASE("THM1 separates the two exponent variants") {
  const std::vector<CheckReport> reports = run_check("THM1");
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].passed);
  CHECK(reports[1].check_id == "THM1_PRINTED");
  CHECK(reports[1].informational);
  CHECK_FALSE(reports[1].passed);
  CHECK(reports[1].notes.find("informational") != std::string::npos);
  // Exponent s-1 is off by (1-lambda)^2: 1 - 0.9^2 = 0.19 at lambda = 0.1.
  const std::vector<CheckReport> one = run_check("THM1", [] {
    CheckParams p;
    p.lambdas = {0.1};
    p.s_values = {1.5};
    return p;
  }());
  CHECK(one[1].max_rel_error == doctest::Approx(0.19).epsilon(1e-8));
}

TEST_CASE("run_all merges in registration order") {
  const std::vector<CheckReport> reports = run_all();
  std::vector<std::string> ids;
  for (const auto& r : reports) ids.push_back(r.check_id);
  std::vector<std::string> expected;
  for (const auto& id : check_ids()) {
    expected.push_back(id);
    if (id == "THM1") expected.push_back("THM1_PRINTED");
  }
  CHECK(ids == expected);
  CHECK(all_passed(reports));
}

TEST_CASE("a loose tolerance passes everything adjudicated") {
  for (const auto& r : run_all(1e-2)) {
    CAPTURE(r.check_id);
    CHECK((r.passed || r.informational));
  }
}

TEST_CASE("a corrupted rule is caught by the table check") {
  RuleSet broken = default_rules();
  broken.sin_l = [](double a, Lambda lambda) { return -1.0 * default_rules().sin_l(a, lambda); };
  const std::vector<CheckReport> reports = run_all(std::nullopt, &broken);
  const CheckReport& table = find(reports, "TABLE");
  CHECK_FALSE(table.passed);
  CHECK(table.notes.find("sin") != std::string::npos);
  CHECK_FALSE(all_passed(reports));
  CHECK(find(reports, "BETA").passed);
}

TEST_CASE("unknown ids and out-of-domain parameters") {
  CHECK_THROWS_AS(run_check("NOPE"), UnknownCheckId);
  CHECK_THROWS_AS(registered_tolerance("NOPE"), UnknownCheckId);
  CheckParams p;
  p.orders = {3};
  p.lambdas = {0.3};
  CHECK_THROWS_AS(run_check("THM2", p), ParameterOutOfDomain);
  CheckParams q;
  q.shift_a = 5.0;
  CHECK_THROWS_AS(run_check("EQ52", q), ParameterOutOfDomain);
  CheckParams b;
  b.lambdas = {0.5};
  b.s_values = {2.5};
  CHECK_THROWS_AS(run_check("BETA", b), ParameterOutOfDomain);
}

TEST_CASE("EQ52 with explicit parameters") {
  CheckParams p;
  p.exprs = {"1"};
  p.lambdas = {0.2};
  p.s_values = {2.0};
  p.shift_a = 0.3;
  const CheckReport r = run_check("EQ52", p).front();
  CHECK(r.passed);
  CHECK(r.grid.size() == 1);
}

TEST_CASE("JSON serialization") {
  CheckReport r;
  r.check_id = "X";
  r.grid = {{{"lambda", 0.1}, {"s", 1.0 / 3.0}}};
  r.max_rel_error = 1.234567890123e-9;
  r.passed = true;
  r.notes = "ok";
  CHECK(to_json(r).dump() ==
        R"({"check_id":"X","grid":[{"lambda":0.1,"s":0.333333333}],"max_rel_error":1.23456789e-09,"passed":true,"notes":"ok"})");
  CHECK(round9(2.0 / 3.0) == 0.666666667);
}
