#include <doctest.h>

#include <cmath>
#include <vector>

#include "disclab/discrepancy.hpp"
#include "disclab/errors.hpp"
#include "disclab/haar.hpp"
#include "disclab/oracle.hpp"
#include "disclab/pointset.hpp"

using namespace disclab;

TEST_SUITE("oracle") {

TEST_CASE("local discrepancy counts points against volume") {
  PointSet half(1, std::vector<double>{0.5});
  std::vector<double> lo{0.0}, hi{0.6};
  CHECK(oracle::local_discrepancy(half, lo, hi) == doctest::Approx(0.4).epsilon(1e-15));
  hi[0] = 0.5;  // half-open box misses the point
  CHECK(oracle::local_discrepancy(half, lo, hi) == doctest::Approx(-0.5).epsilon(1e-15));

  PointSet empty(2);
  std::vector<double> lo2{0.25, 0.0}, hi2{0.75, 0.5};
  CHECK(oracle::local_discrepancy(empty, lo2, hi2) ==
        doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("local discrepancy validates the box") {
  PointSet empty(2);
  std::vector<double> lo{0.5, 0.0}, hi{0.25, 1.0};
  CHECK_THROWS_AS(oracle::local_discrepancy(empty, lo, hi), DomainViolation);
  std::vector<double> lo2{0.0, 0.0}, hi2{0.5, 1.5};
  CHECK_THROWS_AS(oracle::local_discrepancy(empty, lo2, hi2), DomainViolation);
}

TEST_CASE("exact coefficient oracle enforces its size guards") {
  PointSet big(4);
  DyadicIndex idx4;
  idx4.levels = {0, 0, 0, 0};
  idx4.positions = {0, 0, 0, 0};
  CHECK_THROWS_AS(oracle::exact_haar_coefficient(big, idx4), SizeGuardError);

  auto crowded = gen_random(17, 2, 5);
  DyadicIndex idx2;
  idx2.levels = {0, 0};
  idx2.positions = {0, 0};
  CHECK_THROWS_AS(oracle::exact_haar_coefficient(crowded, idx2), SizeGuardError);

  PointSet empty(1);
  DyadicIndex deep;
  deep.levels = {13};
  deep.positions = {0};
  CHECK_THROWS_AS(oracle::exact_haar_coefficient(empty, deep), SizeGuardError);
}

TEST_CASE("midpoint set has the initial one-dimensional discrepancies") {
  PointSet mid(1, std::vector<double>{0.5});
  CHECK(oracle::star_l2_exact_1d(mid) == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-15));
  CHECK(oracle::extreme_l2_exact_1d(mid) ==
        doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-15));
}

TEST_CASE("one-dimensional oracles match the closed forms on random sets") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    auto ps = gen_random(5 + 3 * seed, 1, 1000 + seed);
    CHECK(star_l2(ps).value == doctest::Approx(oracle::star_l2_exact_1d(ps)).epsilon(1e-12));
    CHECK(extreme_l2(ps).value ==
          doctest::Approx(oracle::extreme_l2_exact_1d(ps)).epsilon(1e-12));
  }
}

TEST_CASE("ordered-corner sampler is unbiased on the empty set") {
  PointSet empty(2);
  auto mc = oracle::extreme_l2_mc(empty, 40000, 7);
  CHECK(mc.std_error > 0.0);
  CHECK(std::fabs(mc.estimate - 1.0 / 144.0) <= 4.0 * mc.std_error);
}

TEST_CASE("sampler is deterministic for a fixed seed") {
  auto ps = gen_random(6, 2, 77);
  auto a = oracle::extreme_l2_mc(ps, 2000, 9);
  auto b = oracle::extreme_l2_mc(ps, 2000, 9);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  auto c = oracle::extreme_l2_mc(ps, 2000, 10);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("sampler agrees with the closed form on a small set") {
  auto ps = gen_random(8, 2, 31);
  auto mc = oracle::extreme_l2_mc(ps, 60000, 11);
  CHECK(std::fabs(mc.estimate - extreme_l2(ps).squared) <= 4.0 * mc.std_error);
}

TEST_CASE("sampler rejects tiny sample counts") {
  PointSet empty(1);
  CHECK_THROWS_AS(oracle::extreme_l2_mc(empty, 999, 0), DomainViolation);
}

}  // TEST_SUITE
