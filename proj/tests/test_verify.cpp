#include <doctest.h>

#include <string>
#include <vector>

#include "disclab/pointset.hpp"
#include "disclab/verify.hpp"

using namespace disclab;

namespace {

const CheckResult* find_check(const std::vector<CheckResult>& checks,
                              const std::string& name) {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("status names") {
  CHECK(to_string(CheckStatus::Pass) == "PASS");
  CHECK(to_string(CheckStatus::Fail) == "FAIL");
  CHECK(to_string(CheckStatus::Skipped) == "SKIPPED");
}

TEST_CASE("all checks pass on a small planar set") {
  auto ps = gen_random(16, 2, 42);
  VerifyOptions opts;
  auto checks = run_checks(ps, opts);
  REQUIRE_FALSE(checks.empty());
  for (const auto& c : checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.status != CheckStatus::Fail);
  }
  CHECK(all_passed(checks));
}

TEST_CASE("every oracle engages in one dimension") {
  auto ps = gen_random(12, 1, 7);
  VerifyOptions opts;
  auto checks = run_checks(ps, opts);
  for (const char* name : {"oracle-haar", "oracle-star-1d", "oracle-extreme-1d"}) {
    const auto* c = find_check(checks, name);
    REQUIRE(c != nullptr);
    INFO(name, ": ", c->detail);
    CHECK(c->status == CheckStatus::Pass);
  }
  CHECK(all_passed(checks));
}

TEST_CASE("guarded oracles skip cleanly in high dimension") {
  auto ps = gen_random(10, 5, 3);
  VerifyOptions opts;
  auto checks = run_checks(ps, opts);
  for (const char* name :
       {"oracle-haar", "oracle-star-1d", "oracle-extreme-1d", "oracle-extreme-mc"}) {
    const auto* c = find_check(checks, name);
    REQUIRE(c != nullptr);
    CHECK(c->status == CheckStatus::Skipped);
  }
  for (const char* name :
       {"domination", "truncation-extreme", "truncation-star", "localized-bound",
        "tail-monotone"}) {
    const auto* c = find_check(checks, name);
    REQUIRE(c != nullptr);
    INFO(name, ": ", c->detail);
    CHECK(c->status == CheckStatus::Pass);
  }
  CHECK(all_passed(checks));
}

TEST_CASE("a misreported localized bound is caught") {
  auto ps = gen_random(16, 2, 42);
  VerifyOptions opts;
  opts.tamper_localized = true;
  auto checks = run_checks(ps, opts);
  int failures = 0;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) {
      ++failures;
      CHECK(c.name == "localized-bound");
    }
  }
  CHECK(failures == 1);
  CHECK_FALSE(all_passed(checks));
}

}  // TEST_SUITE
