#include "doctest.h"

#include <algorithm>

#include "flatsym/suite.hpp"

using namespace flatsym;

TEST_SUITE("suite") {
  TEST_CASE("sample scaling") {
    RunConfig c;
    CHECK(scaled_samples(c, 30) == 30);
    c.samples = 0;
    CHECK(scaled_samples(c, 30) == 0);
    c.samples = 1;
    CHECK(scaled_samples(c, 30) == 1);
    c.samples = 200;
    CHECK(scaled_samples(c, 30) == 60);
  }

  TEST_CASE("config validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.group = 5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.genus = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.fd_step = -1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("check ids depend on the configuration") {
    RunConfig c;
    const auto ids = check_ids(c);
    CHECK(std::count(ids.begin(), ids.end(), "ext.gram") == 1);
    CHECK(std::count(ids.begin(), ids.end(), "bar.su3.d_lambda") == 1);
    c.beta_index = 0;
    const auto trivial = check_ids(c);
    CHECK(std::count(trivial.begin(), trivial.end(), "ext.gram") == 0);
    CHECK(std::count(trivial.begin(), trivial.end(), "coh.pairing") == 0);
    c.group = 3;
    const auto su3 = check_ids(c);
    CHECK(std::count(su3.begin(), su3.end(), "bar.su3.d_lambda") == 0);
  }

  TEST_CASE("single checks and unknown ids") {
    RunConfig c;
    c.samples = 5;
    const VerificationReport r = run_check(c, "rep.invariance");
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].id == "rep.invariance");
    CHECK(exit_code(r) == 0);
    CHECK_THROWS_AS(run_check(c, "no.such.check"), std::invalid_argument);
  }

  TEST_CASE("tolerance overrides") {
    RunConfig c;
    c.samples = 5;
    c.tolerances["rep.invariance"] = 0.0;
    const VerificationReport r = run_check(c, "rep.invariance");
    CHECK(r.checks[0].tolerance == 0.0);
    CHECK(exit_code(r) == 2);
    c.tolerances = {{"bogus", 1.0}};
    CHECK_THROWS_AS(run_check(c, "rep.invariance"), std::invalid_argument);
  }

  TEST_CASE("empty run") {
    RunConfig c;
    c.samples = 0;
    const VerificationReport r = run_all(c);
    CHECK(r.checks.empty());
    CHECK(exit_code(r) == 0);
    const std::string json = report_json(r, c, 0.0);
    CHECK(json.find("\"checks\": []") != std::string::npos);
  }

  TEST_CASE("reports are deterministic") {
    RunConfig c;
    c.samples = 3;
    CHECK(report_json(run_all(c), c, 1.0) == report_json(run_all(c), c, 1.0));
    RunConfig d = c;
    d.seed += 1;
    CHECK(report_json(run_all(c), c, 1.0) != report_json(run_all(d), d, 1.0));
  }

  TEST_CASE("point JSON round trip") {
    Rng rng(51);
    const RepPoint h = random_rep_point(3, 2, rng);
    const RepPoint back = parse_point_json(point_json(h, relator_value(h)));
    REQUIRE(back.components.size() == h.components.size());
    for (std::size_t i = 0; i < h.components.size(); ++i)
      CHECK((back.components[i].matrix() - h.components[i].matrix()).norm() < 1e-15);
    CHECK_THROWS_AS(parse_point_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point_json("not json"), std::invalid_argument);
  }

  TEST_CASE("targets") {
    RunConfig c;
    const GroupPoint t = parse_target("central:1", c);
    CHECK((t.matrix() + Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);
    const GroupPoint w = parse_target("word:[x1,x2]", c);
    CHECK(w.unitarity_defect() < 1e-13);
    CHECK((parse_target("word:[x1,x2]", c).matrix() - w.matrix()).norm() == 0.0);
    CHECK_THROWS_AS(parse_target("central:x", c), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("central:7", c), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("word:x9", c), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("elsewhere", c), std::invalid_argument);
  }

  TEST_CASE("dims output") {
    RunConfig c;
    const std::vector<DimsRow> rows = {{"identity", summary(RepPoint::identity(2, 2))}};
    CHECK(dims_table(rows).find("identity") != std::string::npos);
    CHECK(dims_json(rows, c).find("\"h1_free\": 12") != std::string::npos);
  }
}
