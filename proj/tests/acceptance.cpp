// Acceptance checks for the whole toolkit: exact golden values, certified
// truncation brackets, oracle agreement, analytic-bound consistency, and
// runtime budgets.  One line per criterion; the exit code is nonzero when
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "disclab/bmo.hpp"
#include "disclab/bounds.hpp"
#include "disclab/discrepancy.hpp"
#include "disclab/haar.hpp"
#include "disclab/oracle.hpp"
#include "disclab/parallel.hpp"
#include "disclab/pointset.hpp"

using namespace disclab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& msg) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = msg;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shared corpus: 50 seeded random sets with d <= 4 and N <= 64.
std::vector<PointSet> corpus() {
  std::vector<PointSet> sets;
  sets.reserve(50);
  for (int i = 0; i < 50; ++i) {
    int d = 1 + i % 4;
    std::size_t n = 1 + static_cast<std::size_t>((7 * i + 3) % 64);
    sets.push_back(gen_random(n, d, 1000 + static_cast<std::uint64_t>(i)));
  }
  return sets;
}

Outcome criterion1() {
  Outcome o;
  for (int d = 1; d <= 8; ++d) {
    double expected = std::pow(12.0, -0.5 * d);
    double rel = std::fabs(bmo_initial(d) - expected) / expected;
    expect(o, rel <= 1e-12, "initial value off at d=" + std::to_string(d));
  }
  for (int d = 1; d <= 3; ++d) {
    auto est = bmo_discrepancy(PointSet(d), 20, 2);
    double limit = std::pow(12.0, -d);
    expect(o, est.squared <= limit,
           "empty-set estimate exceeds its limit at d=" + std::to_string(d));
    expect(o, est.squared >= limit - est.tail_bound,
           "empty-set estimate below limit - tail at d=" + std::to_string(d));
  }
  return o;
}

Outcome criterion2(const std::vector<PointSet>& sets) {
  Outcome o;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& ps = sets[i];
    auto series = extreme_l2_haar(ps, 20);
    double tb = *series.tail_bound;
    double gap = std::fabs(extreme_l2(ps).squared - series.squared);
    expect(o, gap <= tb,
           "set " + std::to_string(i) + ": gap " + fmt(gap) + " > tail " + fmt(tb));
    expect(o, tb < 1e-6, "set " + std::to_string(i) + ": tail " + fmt(tb) + " >= 1e-6");
  }
  return o;
}

Outcome criterion3(const std::vector<PointSet>& sets) {
  Outcome o;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& ps = sets[i];
    double localized = bmo_discrepancy(ps, 20, 2).value;
    double series = extreme_l2_haar(ps, 20).value;
    expect(o, localized >= series,
           "set " + std::to_string(i) + ": " + fmt(localized) + " < " + fmt(series));
  }
  return o;
}

Outcome criterion4(const std::vector<PointSet>& sets) {
  Outcome o;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& ps = sets[i];
    auto series = star_l2_haar(ps, 20);
    double star_sq = star_l2(ps).squared;
    double gap = std::fabs(star_sq - series.squared);
    expect(o, gap <= *series.tail_bound,
           "set " + std::to_string(i) + ": star gap exceeds the tail");
    double extreme_sq = extreme_l2(ps).squared;
    expect(o, star_sq >= extreme_sq - 1e-12 * (1.0 + star_sq),
           "set " + std::to_string(i) + ": star below extreme");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (int d = 1; d <= 8; ++d) {
    PointSet empty(d);
    double extreme_init = extreme_l2(empty).value;
    expect(o, extreme_init == bmo_initial(d),
           "extreme and localized initial values differ at d=" + std::to_string(d));
    double rel_e = std::fabs(extreme_init - std::pow(12.0, -0.5 * d)) /
                   std::pow(12.0, -0.5 * d);
    expect(o, rel_e <= 1e-12, "extreme initial off at d=" + std::to_string(d));
    double star_init = star_l2(empty).value;
    double rel_s =
        std::fabs(star_init - std::pow(3.0, -0.5 * d)) / std::pow(3.0, -0.5 * d);
    expect(o, rel_s <= 1e-12, "star initial off at d=" + std::to_string(d));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int i = 0; i < 100; ++i) {
    auto ps = gen_random(1 + static_cast<std::size_t>(i % 32), 1,
                         3000 + static_cast<std::uint64_t>(i));
    double ds = std::fabs(star_l2(ps).value - oracle::star_l2_exact_1d(ps));
    double de = std::fabs(extreme_l2(ps).value - oracle::extreme_l2_exact_1d(ps));
    expect(o, ds <= 1e-12, "set " + std::to_string(i) + ": star oracle gap " + fmt(ds));
    expect(o, de <= 1e-12,
           "set " + std::to_string(i) + ": extreme oracle gap " + fmt(de));
  }
  for (int d = 2; d <= 3; ++d) {
    for (int i = 0; i < 10; ++i) {
      auto ps = gen_random(4 + static_cast<std::size_t>(3 * i), d,
                           4000 + static_cast<std::uint64_t>(100 * d + i));
      auto mc = oracle::extreme_l2_mc(ps, 100000,
                                      777000 + static_cast<std::uint64_t>(10 * d + i));
      double gap = std::fabs(extreme_l2(ps).squared - mc.estimate);
      expect(o, gap <= 3.0 * mc.std_error,
             "d=" + std::to_string(d) + " set " + std::to_string(i) + ": |closed - mc| " +
                 fmt(gap) + " > 3 se " + fmt(3.0 * mc.std_error));
    }
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  double bmo_ref = std::pow(4.0 / 3.0, 10) * 0.75;
  expect(o, std::fabs(curse_lower_bound_bmo(0.5, 10) - bmo_ref) <= 1e-3,
         "localized bound at (0.5, 10) off: " + fmt(curse_lower_bound_bmo(0.5, 10)));
  double extreme_ref = std::pow(9.0 / 4.0, 10) * 0.75;
  expect(o, std::fabs(curse_lower_bound_extreme(0.5, 10) - extreme_ref) <= 1e-3 * extreme_ref,
         "extreme bound at (0.5, 10) off");
  for (int d = 1; d <= 20; ++d) {
    double r_bmo = curse_lower_bound_bmo(0.5, d + 1) / curse_lower_bound_bmo(0.5, d);
    expect(o, std::fabs(r_bmo - 4.0 / 3.0) <= 1e-12 * (4.0 / 3.0),
           "localized growth ratio off at d=" + std::to_string(d));
    double r_ext =
        curse_lower_bound_extreme(0.5, d + 1) / curse_lower_bound_extreme(0.5, d);
    expect(o, std::fabs(r_ext - 9.0 / 4.0) <= 1e-12 * (9.0 / 4.0),
           "extreme growth ratio off at d=" + std::to_string(d));
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (int d = 1; d <= 2; ++d) {
    for (double eps : {0.3, 0.5}) {
      InverseSearchConfig cfg;
      cfg.epsilon = eps;
      cfg.dim = d;
      cfg.measure = Measure::ExtremeL2;
      cfg.family = Family::Hammersley;
      cfg.n_max = 4096;
      cfg.restarts = 8;
      cfg.seed = 20240801;
      auto report = empirical_inverse(cfg);
      std::string where = "d=" + std::to_string(d) + " eps=" + fmt(eps);
      if (!report.empirical_upper) {
        expect(o, false, where + ": search exhausted its budget");
        continue;
      }
      double floor_val = std::ceil(std::pow(9.0 / 4.0, d) * (1.0 - eps * eps));
      expect(o, static_cast<double>(*report.empirical_upper) >= floor_val,
             where + ": found " + std::to_string(*report.empirical_upper) +
                 " below the analytic floor " + fmt(floor_val));
    }
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  using clock = std::chrono::steady_clock;
  auto ps = gen_random(1024, 10, 99);

  auto t0 = clock::now();
  volatile double s = star_l2(ps).value;
  auto t1 = clock::now();
  volatile double e = extreme_l2(ps).value;
  auto t2 = clock::now();
  (void)s;
  (void)e;
  double star_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  double extreme_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  expect(o, star_ms < 2000.0, "anchored closed form took " + fmt(star_ms) + " ms");
  expect(o, extreme_ms < 2000.0,
         "unanchored closed form took " + fmt(extreme_ms) + " ms");

  auto ps2 = gen_random(256, 2, 7);
  auto t3 = clock::now();
  volatile double b = bmo_discrepancy(ps2, 12, 2).value;
  auto t4 = clock::now();
  (void)b;
  double bmo_ms = std::chrono::duration<double, std::milli>(t4 - t3).count();
  expect(o, bmo_ms < 10000.0, "localized estimate took " + fmt(bmo_ms) + " ms");
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::mt19937_64 rng(20240801);
  for (int t = 0; t < 500; ++t) {
    int d = 1 + static_cast<int>(rng() % 3);
    std::size_t n = 1 + static_cast<std::size_t>(rng() % 16);
    auto ps = gen_random(n, d, rng());
    DyadicIndex index;
    index.levels.resize(static_cast<std::size_t>(d));
    index.positions.resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      int lv = static_cast<int>(rng() % 6) - 1;  // -1..4
      index.levels[static_cast<std::size_t>(k)] = lv;
      std::int64_t count = lv <= 0 ? 1 : (std::int64_t{1} << lv);
      index.positions[static_cast<std::size_t>(k)] =
          static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(count));
    }
    double engine = haar_coefficient(ps, index).value;
    double exact = oracle::exact_haar_coefficient(ps, index);
    double gap = std::fabs(engine - exact);
    expect(o, gap <= 1e-12, "tuple " + std::to_string(t) + ": gap " + fmt(gap));
  }
  return o;
}

}  // namespace

int main() {
  unsigned hw = std::thread::hardware_concurrency();
  set_max_threads(hw == 0 ? 1 : static_cast<int>(hw > 8 ? 8 : hw));

  auto sets = corpus();

  struct Row {
    int id;
    const char* label;
    Outcome outcome;
  };
  auto guarded = [](auto&& fn) -> Outcome {
    try {
      return fn();
    } catch (const std::exception& e) {
      Outcome o;
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
      return o;
    }
  };
  std::vector<Row> rows;
  rows.push_back({1, "empty-set localized values and bracket", guarded(criterion1)});
  rows.push_back({2, "truncated series matches the closed form within the tail",
                  guarded([&] { return criterion2(sets); })});
  rows.push_back({3, "localized estimate dominates the truncated series",
                  guarded([&] { return criterion3(sets); })});
  rows.push_back({4, "anchored bracket and star-over-extreme domination",
                  guarded([&] { return criterion4(sets); })});
  rows.push_back({5, "initial closed forms across dimensions", guarded(criterion5)});
  rows.push_back(
      {6, "closed forms agree with the independent oracles", guarded(criterion6)});
  rows.push_back(
      {7, "inverse lower-bound calculator and growth ratios", guarded(criterion7)});
  rows.push_back(
      {8, "empirical inverse stays above the analytic floor", guarded(criterion8)});
  rows.push_back({9, "runtime budgets", guarded(criterion9)});
  rows.push_back(
      {10, "coefficient engine matches the exact oracle", guarded(criterion10)});

  bool all_ok = true;
  for (const auto& row : rows) {
    if (row.outcome.ok) {
      std::printf("[PASS] criterion %d: %s\n", row.id, row.label);
    } else {
      all_ok = false;
      std::printf("[FAIL] criterion %d: %s -- %s\n", row.id, row.label,
                  row.outcome.detail.c_str());
    }
  }
  return all_ok ? 0 : 1;
}
