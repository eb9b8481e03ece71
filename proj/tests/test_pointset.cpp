#include <doctest.h>

#include <sstream>
#include <vector>

#include "disclab/errors.hpp"
#include "disclab/pointset.hpp"

using namespace disclab;

TEST_SUITE("pointset") {

TEST_CASE("loader accepts comments, commas, and blank lines") {
  std::istringstream in("# two points\n0.25, 0.5\n0.75 0.125\n\n");
  auto ps = load_pointset(in);
  CHECK(ps.dim() == 2);
  CHECK(ps.size() == 2);
  CHECK(ps.coord(0, 0) == 0.25);
  CHECK(ps.coord(0, 1) == 0.5);
  CHECK(ps.coord(1, 0) == 0.75);
  CHECK(ps.coord(1, 1) == 0.125);
}

TEST_CASE("ragged rows are format errors that name the line") {
  std::istringstream in("0.1 0.2\n0.3\n");
  CHECK_THROWS_WITH_AS(load_pointset(in), doctest::Contains("line 2"), FormatError);
}

TEST_CASE("non-numeric tokens are format errors") {
  std::istringstream in("0.1 oops\n");
  CHECK_THROWS_AS(load_pointset(in), FormatError);
}

TEST_CASE("coordinates outside the half-open cube are rejected") {
  std::istringstream upper("0.5 1.0\n");
  CHECK_THROWS_AS(load_pointset(upper), DomainViolation);
  std::istringstream lower("-0.1 0.5\n");
  CHECK_THROWS_AS(load_pointset(lower), DomainViolation);
  std::istringstream edge("0.0 0.999\n");
  CHECK_NOTHROW(load_pointset(edge));
}

TEST_CASE("empty stream needs a dimension hint") {
  std::istringstream no_hint("# nothing\n");
  CHECK_THROWS_AS(load_pointset(no_hint), AmbiguityError);
  std::istringstream with_hint("");
  auto ps = load_pointset(with_hint, 3);
  CHECK(ps.dim() == 3);
  CHECK(ps.empty());
}

TEST_CASE("dimension hint conflicts are format errors") {
  std::istringstream in("0.1 0.2\n");
  CHECK_THROWS_AS(load_pointset(in, 3), FormatError);
}

TEST_CASE("write and load round-trip bit for bit") {
  auto original = gen_random(19, 3, 7);
  std::ostringstream out;
  write_pointset(out, original);
  std::istringstream in(out.str());
  auto reloaded = load_pointset(in);
  REQUIRE(reloaded.size() == original.size());
  REQUIRE(reloaded.dim() == original.dim());
  CHECK(reloaded.coords() == original.coords());
}

TEST_CASE("random generation is reproducible and seed-sensitive") {
  auto a = gen_random(16, 3, 42);
  auto b = gen_random(16, 3, 42);
  auto c = gen_random(16, 3, 43);
  CHECK(a.coords() == b.coords());
  CHECK(a.coords() != c.coords());
  for (double x : a.coords()) {
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("radical inverse base 2 starts 0.5, 0.25, 0.75") {
  CHECK(radical_inverse(1, 2) == 0.5);
  CHECK(radical_inverse(2, 2) == 0.25);
  CHECK(radical_inverse(3, 2) == 0.75);
  CHECK(radical_inverse(0, 2) == 0.0);
}

TEST_CASE("hammersley set uses i/n then successive prime bases") {
  auto ps = gen_hammersley(4, 3);
  REQUIRE(ps.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(ps.coord(i, 0) == static_cast<double>(i) / 4.0);
    CHECK(ps.coord(i, 1) == radical_inverse(i, 2));
    CHECK(ps.coord(i, 2) == radical_inverse(i, 3));
  }
}

TEST_CASE("one-dimensional hammersley is the left-anchored grid") {
  auto ps = gen_hammersley(5, 1);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(ps.coord(i, 0) == static_cast<double>(i) / 5.0);
  }
}

TEST_CASE("corner set stacks every point at the origin") {
  auto ps = gen_corner(6, 2);
  CHECK(ps.size() == 6);
  for (double x : ps.coords()) CHECK(x == 0.0);
}

TEST_CASE("first primes") {
  CHECK(first_primes(5) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
}

}  // TEST_SUITE
