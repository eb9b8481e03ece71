#include <doctest.h>

#include <json.hpp>

#include "disclab/bmo.hpp"
#include "disclab/bounds.hpp"
#include "disclab/discrepancy.hpp"
#include "disclab/json_io.hpp"
#include "disclab/pointset.hpp"
#include "disclab/verify.hpp"

using namespace disclab;
using nlohmann::json;

TEST_SUITE("json") {

TEST_CASE("discrepancy result fields") {
  auto ps = gen_random(8, 2, 3);
  json closed = star_l2(ps);
  CHECK(closed["schema"] == "disclab/discrepancy/v1");
  CHECK(closed["measure"] == "star-l2");
  CHECK(closed["method"] == "closed-form");
  CHECK(closed["value"].get<double>() == star_l2(ps).value);
  CHECK(closed["squared"].get<double>() == star_l2(ps).squared);
  CHECK_FALSE(closed.contains("truncation_order"));
  CHECK_FALSE(closed.contains("tail_bound"));

  json series = extreme_l2_haar(ps, 6);
  CHECK(series["method"] == "haar-truncated");
  CHECK(series["truncation_order"] == 6);
  CHECK(series["tail_bound"].get<double>() > 0.0);

  auto parsed = json::parse(series.dump());
  CHECK(parsed == series);
}

TEST_CASE("localized estimate fields") {
  auto ps = gen_random(10, 2, 9);
  auto est = bmo_discrepancy(ps, 8, 2);
  json j = est;
  CHECK(j["schema"] == "disclab/bmo-estimate/v1");
  CHECK(j["measure"] == "bmo-lower");
  CHECK(j["value"].get<double>() == est.value);
  CHECK(j["squared"].get<double>() == est.squared);
  CHECK(j["truncation_order"] == 8);
  CHECK(j["search_level"] == 2);
  CHECK(j["global_term_squared"].get<double>() == est.global_term_squared);
  CHECK(j["tail_bound"].get<double>() == est.tail_bound);
  REQUIRE(j.contains("candidate_u"));
  CHECK(j["candidate_u"]["kind"] == to_string(est.candidate.kind));
  if (est.candidate.kind == BmoCandidate::Kind::CellUnion) {
    CHECK(j["candidate_u"]["cells"].size() == est.candidate.cells.size());
  }
  if (est.candidate.kind == BmoCandidate::Kind::DyadicBox) {
    CHECK(j["candidate_u"]["box"]["levels"].size() == est.candidate.box.levels.size());
  }
}

TEST_CASE("inverse report null handling") {
  InverseSearchConfig cfg;
  cfg.epsilon = 0.9;
  cfg.dim = 1;
  cfg.n_max = 32;
  cfg.restarts = 0;
  json feasible = empirical_inverse(cfg);
  CHECK(feasible["schema"] == "disclab/inverse-report/v1");
  CHECK(feasible["empirical_upper"].is_number_integer());
  CHECK(feasible["measure"] == "extreme-l2");
  CHECK(feasible["family"] == "hammersley");
  CHECK(feasible["notes"].is_string());

  cfg.epsilon = 0.05;
  cfg.dim = 2;
  cfg.n_max = 2;
  json exhausted = empirical_inverse(cfg);
  CHECK(exhausted["empirical_upper"].is_null());
}

TEST_CASE("point set round-trip") {
  auto ps = gen_random(5, 3, 21);
  json j = pointset_json(ps);
  CHECK(j["schema"] == "disclab/pointset/v1");
  CHECK(j["dim"] == 3);
  REQUIRE(j["points"].size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    auto p = ps.point(i);
    for (int k = 0; k < 3; ++k) {
      CHECK(j["points"][i][static_cast<std::size_t>(k)].get<double>() ==
            p[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("tables") {
  json curse = curse_table_json(0.5, 6);
  CHECK(curse["schema"] == "disclab/curse-table/v1");
  CHECK(curse["epsilon"] == 0.5);
  REQUIRE(curse["rows"].size() == 6);
  CHECK(curse["rows"][0]["dim"] == 1);
  CHECK(curse["rows"][5]["dim"] == 6);
  CHECK(curse["rows"][5]["bmo_lower"].get<double>() ==
        curse_lower_bound_bmo(0.5, 6));
  CHECK(curse["rows"][5]["extreme_lower"].get<double>() ==
        curse_lower_bound_extreme(0.5, 6));

  auto rows = roth_curve(1, {8, 16}, 8, 2);
  json roth = roth_table_json(1, rows);
  CHECK(roth["schema"] == "disclab/roth-curve/v1");
  CHECK(roth["dim"] == 1);
  REQUIRE(roth["rows"].size() == 2);
  CHECK(roth["rows"][1]["n"] == 16);
  CHECK(roth["rows"][1]["shape"].get<double>() == rows[1].shape);
}

TEST_CASE("verify report") {
  auto ps = gen_random(12, 2, 11);
  VerifyOptions opts;
  auto checks = run_checks(ps, opts);
  json j = verify_report_json(checks);
  CHECK(j["schema"] == "disclab/verify/v1");
  CHECK(j["passed"] == true);
  REQUIRE(j["checks"].size() == checks.size());
  CHECK(j["checks"][0]["name"] == checks[0].name);
  CHECK(j["checks"][0]["status"] == "PASS");
  CHECK(j["checks"][0].contains("detail"));

  opts.tamper_localized = true;
  json bad = verify_report_json(run_checks(ps, opts));
  CHECK(bad["passed"] == false);
}

}  // TEST_SUITE
