#include "disclab/haar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

#include "disclab/errors.hpp"
#include "disclab/kahan.hpp"
#include "disclab/parallel.hpp"

namespace disclab {

void validate_index(const DyadicIndex& index) {
  if (index.levels.empty()) throw DomainViolation("index has no coordinates");
  if (index.levels.size() != index.positions.size()) {
    throw DomainViolation("index level and position vectors differ in length");
  }
  for (std::size_t k = 0; k < index.levels.size(); ++k) {
    int level = index.levels[k];
    std::int64_t pos = index.positions[k];
    if (level < -1) {
      std::ostringstream msg;
      msg << "level " << level << " in coordinate " << (k + 1) << " is below -1";
      throw DomainViolation(msg.str());
    }
    if (level > kMaxCoordLevel) {
      std::ostringstream msg;
      msg << "level " << level << " in coordinate " << (k + 1)
          << " exceeds the exact-arithmetic guard " << kMaxCoordLevel;
      throw SizeGuardError(msg.str());
    }
    std::int64_t count = level < 0 ? 1 : (std::int64_t{1} << level);
    if (pos < 0 || pos >= count) {
      std::ostringstream msg;
      msg << "position " << pos << " in coordinate " << (k + 1)
          << " is outside [0, " << count << ")";
      throw DomainViolation(msg.str());
    }
  }
  if (level_order(index.levels) > kMaxTotalOrder) {
    std::ostringstream msg;
    msg << "index order " << level_order(index.levels) << " exceeds the position-key guard "
        << kMaxTotalOrder;
    throw SizeGuardError(msg.str());
  }
}

int level_order(std::span<const int> levels) {
  int order = 0;
  for (int j : levels) order += j > 0 ? j : 0;
  return order;
}

int index_order(const DyadicIndex& index) { return level_order(index.levels); }

Box dyadic_interval(const DyadicIndex& index) {
  validate_index(index);
  Box box;
  box.lower.reserve(index.levels.size());
  box.upper.reserve(index.levels.size());
  for (std::size_t k = 0; k < index.levels.size(); ++k) {
    int level = index.levels[k];
    if (level < 0) {
      box.lower.push_back(0.0);
      box.upper.push_back(1.0);
    } else {
      box.lower.push_back(std::ldexp(static_cast<double>(index.positions[k]), -level));
      box.upper.push_back(std::ldexp(static_cast<double>(index.positions[k] + 1), -level));
    }
  }
  return box;
}

int haar_eval(const DyadicIndex& index, std::span<const double> x) {
  validate_index(index);
  if (x.size() != index.levels.size()) {
    throw DomainViolation("point dimension does not match the index");
  }
  int sign = 1;
  for (std::size_t k = 0; k < index.levels.size(); ++k) {
    int level = index.levels[k];
    if (level < 0) continue;
    double c = x[k];
    if (!(c >= 0.0 && c < 1.0)) throw DomainViolation("point is outside [0,1)^d");
    double t = std::ldexp(c, level);
    double fl = std::floor(t);
    if (static_cast<std::int64_t>(fl) != index.positions[k]) return 0;
    if (t - fl >= 0.5) sign = -sign;
  }
  return sign;
}

double volume_factor(int level) {
  return level < 0 ? 0.5 : -std::ldexp(1.0, -2 * (level + 1));
}

double volume_part_coefficient(const DyadicIndex& index) {
  validate_index(index);
  double prod = 1.0;
  for (int level : index.levels) prod *= volume_factor(level);
  return prod;
}

double counting_factor(double x, int level, std::int64_t pos) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainViolation("coordinate is outside [0,1)");
  if (level < -1) throw DomainViolation("level is below -1");
  if (level > kMaxCoordLevel) throw SizeGuardError("level exceeds the exact-arithmetic guard");
  if (level < 0) {
    if (pos != 0) throw DomainViolation("level -1 has the single position 0");
    return 1.0 - x;
  }
  if (pos < 0 || pos >= (std::int64_t{1} << level)) {
    throw DomainViolation("position is out of range for the level");
  }
  double t = std::ldexp(x, level);
  double fl = std::floor(t);
  if (static_cast<std::int64_t>(fl) != pos) return 0.0;
  // Inside its interval the factor is the negated distance from x to the
  // nearest interval endpoint, i.e. to the nearest multiple of 2^-level.
  double frac = t - fl;
  double dist = std::min(frac, 1.0 - frac);
  return dist == 0.0 ? 0.0 : -std::ldexp(dist, -level);
}

double counting_part_coefficient(std::span<const double> x, const DyadicIndex& index) {
  validate_index(index);
  if (x.size() != index.levels.size()) {
    throw DomainViolation("point dimension does not match the index");
  }
  double prod = 1.0;
  for (std::size_t k = 0; k < index.levels.size(); ++k) {
    prod *= counting_factor(x[k], index.levels[k], index.positions[k]);
    if (prod == 0.0) return 0.0;
  }
  return prod;
}

HaarCoefficient haar_coefficient(const PointSet& ps, const DyadicIndex& index) {
  validate_index(index);
  if (index.levels.size() != static_cast<std::size_t>(ps.dim())) {
    throw DomainViolation("index dimension does not match the point set");
  }
  HaarCoefficient out;
  out.index = index;
  out.volume_part = volume_part_coefficient(index);
  if (ps.empty()) {
    out.counting_part = 0.0;
  } else {
    KahanSum sum;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      sum += counting_part_coefficient(ps.point(i), index);
    }
    out.counting_part = sum.value() / static_cast<double>(ps.size());
  }
  out.value = out.counting_part - out.volume_part;
  return out;
}

namespace {

struct LevelSpec {
  std::span<const int> levels;
  // Enclosing dyadic box; levels must dominate it componentwise.  The whole
  // cube is the level-0 box in every coordinate.
  std::span<const int> outer_levels;
  std::span<const std::int64_t> outer_positions;
};

void validate_levels(const PointSet& ps, std::span<const int> levels) {
  if (levels.size() != static_cast<std::size_t>(ps.dim())) {
    throw DomainViolation("level vector dimension does not match the point set");
  }
  int order = 0;
  for (int j : levels) {
    if (j < -1) throw DomainViolation("level is below -1");
    if (j > kMaxCoordLevel) {
      throw SizeGuardError("level exceeds the exact-arithmetic guard");
    }
    order += j > 0 ? j : 0;
  }
  if (order > kMaxTotalOrder) {
    throw SizeGuardError("level order exceeds the 64-bit position-key guard");
  }
}

// Shared core: sum over positions inside the outer box of
// 2^order (a_m - b)^2 where a_m is the per-box average of counting products
// and b the volume coefficient.  Points land in at most n boxes; all other
// contained boxes contribute b^2, summed in closed form.
double level_sum_impl(const PointSet& ps, const LevelSpec& spec) {
  int d = ps.dim();
  int order = level_order(spec.levels);
  int outer_order = level_order(spec.outer_levels);

  double b = 1.0;
  for (int j : spec.levels) b *= volume_factor(j);
  double contained = std::ldexp(1.0, order - outer_order);

  if (ps.empty()) {
    return std::ldexp(contained * (b * b), order);
  }

  std::vector<std::pair<std::uint64_t, double>> contrib;
  contrib.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps.point(i);
    std::uint64_t key = 0;
    double prod = 1.0;
    for (int k = 0; k < d; ++k) {
      double x = p[static_cast<std::size_t>(k)];
      int j = spec.levels[static_cast<std::size_t>(k)];
      if (j < 0) {
        prod *= 1.0 - x;
        if (prod == 0.0) break;
        continue;
      }
      double t = std::ldexp(x, j);
      double fl = std::floor(t);
      auto m = static_cast<std::int64_t>(fl);
      int uj = spec.outer_levels[static_cast<std::size_t>(k)];
      if ((m >> (j - uj)) != spec.outer_positions[static_cast<std::size_t>(k)]) {
        prod = 0.0;
        break;
      }
      key = (key << j) | static_cast<std::uint64_t>(m);
      double frac = t - fl;
      double dist = std::min(frac, 1.0 - frac);
      if (dist == 0.0) {
        prod = 0.0;
        break;
      }
      prod *= -std::ldexp(dist, -j);
    }
    if (prod != 0.0) contrib.emplace_back(key, prod);
  }

  std::sort(contrib.begin(), contrib.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  double inv_n = 1.0 / static_cast<double>(ps.size());
  KahanSum sq, lin;
  std::size_t i = 0;
  while (i < contrib.size()) {
    std::uint64_t key = contrib[i].first;
    KahanSum run;
    while (i < contrib.size() && contrib[i].first == key) {
      run += contrib[i].second;
      ++i;
    }
    double a = run.value() * inv_n;
    sq += a * a;
    lin += a;
  }
  double s = sq.value() - 2.0 * b * lin.value() + contained * (b * b);
  return std::ldexp(s, order);
}

}  // namespace

double level_sum(const PointSet& ps, std::span<const int> levels) {
  validate_levels(ps, levels);
  static thread_local std::vector<int> zero_levels;
  static thread_local std::vector<std::int64_t> zero_positions;
  zero_levels.assign(static_cast<std::size_t>(ps.dim()), 0);
  zero_positions.assign(static_cast<std::size_t>(ps.dim()), 0);
  return level_sum_impl(ps, {levels, zero_levels, zero_positions});
}

double level_sum_in_box(const PointSet& ps, std::span<const int> levels,
                        const DyadicIndex& outer) {
  validate_levels(ps, levels);
  validate_index(outer);
  if (outer.levels.size() != static_cast<std::size_t>(ps.dim())) {
    throw DomainViolation("outer box dimension does not match the point set");
  }
  for (std::size_t k = 0; k < outer.levels.size(); ++k) {
    if (outer.levels[k] < 0) {
      throw DomainViolation("the outer box must have levels >= 0 (level 0 is the full axis)");
    }
    int j = levels[k];
    if (j >= 0 && j < outer.levels[k]) {
      throw DomainViolation("levels must dominate the outer box componentwise");
    }
    if (j < 0 && (outer.levels[k] != 0 || outer.positions[k] != 0)) {
      throw DomainViolation("a level--1 coordinate needs the full axis in the outer box");
    }
  }
  return level_sum_impl(ps, {levels, outer.levels, outer.positions});
}

std::vector<std::vector<int>> enumerate_levels(int dim, int max_order,
                                               bool include_constant_level) {
  if (dim < 1) throw DomainViolation("dimension must be at least 1");
  if (max_order < 0) throw DomainViolation("the truncation order must be nonnegative");

  // Projected count: C(max_order + dim, dim) level vectors, doubled per
  // coordinate when the constant level joins in.
  double projected = 1.0;
  for (int k = 1; k <= dim; ++k) {
    projected *= static_cast<double>(max_order + k) / static_cast<double>(k);
  }
  if (include_constant_level) projected *= std::ldexp(1.0, dim);
  if (projected > 8e7) {
    throw SizeGuardError("level enumeration would exceed the size guard");
  }

  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(dim));
  auto emit = [&]() { out.push_back(current); };
  // Exact-order recursion; the constant level -1 spends no order and sorts
  // before level 0, giving the fixed order-major, lexicographic traversal.
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == dim - 1) {
      if (include_constant_level && left == 0) {
        current[static_cast<std::size_t>(k)] = -1;
        emit();
      }
      current[static_cast<std::size_t>(k)] = left;
      emit();
      return;
    }
    if (include_constant_level) {
      current[static_cast<std::size_t>(k)] = -1;
      self(self, k + 1, left);
    }
    for (int j = 0; j <= left; ++j) {
      current[static_cast<std::size_t>(k)] = j;
      self(self, k + 1, left - j);
    }
  };
  for (int order = 0; order <= max_order; ++order) rec(rec, 0, order);
  return out;
}

double truncated_energy(const PointSet& ps, int max_order, bool include_constant_level) {
  auto levels = enumerate_levels(ps.dim(), max_order, include_constant_level);
  std::vector<double> terms(levels.size());
  parallel_for(levels.size(),
               [&](std::size_t i) { terms[i] = level_sum(ps, levels[i]); });
  KahanSum total;
  for (double t : terms) total += t;
  return total.value();
}

namespace {

// Energy series of one coordinate: entry l is 2^l dist(x, 2^-l Z)^2.  Every
// double is a dyadic rational, so the series terminates and is exact.
std::vector<double> grid_energy_series(double x) {
  std::vector<double> phi;
  for (int l = 0; l <= 1100; ++l) {
    double t = std::ldexp(x, l);
    double fl = std::floor(t);
    double frac = t - fl;
    if (frac == 0.0) break;
    double dist = std::min(frac, 1.0 - frac);
    phi.push_back(std::ldexp(dist * dist, -l));
  }
  return phi;
}

// Upper bound on the mass above max_order of a tensor series with the given
// per-coordinate order buckets and full per-coordinate totals: the truncated
// knapsack convolution is subtracted from the product of totals.
double tensor_tail(const std::vector<std::vector<double>>& buckets,
                   const std::vector<double>& totals, int max_order) {
  std::size_t d = buckets.size();
  auto width = static_cast<std::size_t>(max_order) + 1;
  std::vector<double> dp(width, 0.0), next(width);
  for (std::size_t t = 0; t < width && t < buckets[0].size(); ++t) dp[t] = buckets[0][t];
  for (std::size_t k = 1; k < d; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t t1 = 0; t1 < width; ++t1) {
      if (dp[t1] == 0.0) continue;
      std::size_t cap = width - t1;
      for (std::size_t t2 = 0; t2 < cap && t2 < buckets[k].size(); ++t2) {
        next[t1 + t2] += dp[t1] * buckets[k][t2];
      }
    }
    dp.swap(next);
  }
  KahanSum partial;
  for (double v : dp) partial += v;
  double total = 1.0;
  for (double v : totals) total *= v;
  double raw = total - partial.value();
  return std::max(raw, 0.0) + 16.0 * std::numeric_limits<double>::epsilon() * total;
}

double tail_bound_impl(const PointSet& ps, int max_order, bool include_constant_level) {
  if (max_order < 0) throw DomainViolation("the truncation order must be nonnegative");
  int d = ps.dim();
  auto width = static_cast<std::size_t>(max_order) + 1;

  // Volume part: per coordinate the level-l entry is 2^-2l-4, total 1/12; the
  // constant level adds 1/4 at order zero.
  std::vector<double> vol_bucket(width);
  for (std::size_t t = 0; t < width; ++t) {
    vol_bucket[t] = std::ldexp(1.0, -2 * static_cast<int>(t) - 4);
  }
  double vol_total = 1.0 / 12.0;
  if (include_constant_level) {
    vol_bucket[0] += 0.25;
    vol_total += 0.25;
  }
  std::vector<std::vector<double>> vol_buckets(static_cast<std::size_t>(d), vol_bucket);
  std::vector<double> vol_totals(static_cast<std::size_t>(d), vol_total);
  double vol_tail = tensor_tail(vol_buckets, vol_totals, max_order);

  double count_tail = 0.0;
  if (!ps.empty()) {
    // Worst case over all point sets: the level-l entry is at most 2^-l-2
    // (distance at most half the interval), total 1/2; the constant level's
    // step factor is at most 1.
    std::vector<double> worst_bucket(width);
    for (std::size_t t = 0; t < width; ++t) {
      worst_bucket[t] = std::ldexp(1.0, -static_cast<int>(t) - 2);
    }
    double worst_total = 0.5;
    if (include_constant_level) {
      worst_bucket[0] += 1.0;
      worst_total += 1.0;
    }
    std::vector<std::vector<double>> worst_buckets(static_cast<std::size_t>(d),
                                                   worst_bucket);
    std::vector<double> worst_totals(static_cast<std::size_t>(d), worst_total);
    double worst = tensor_tail(worst_buckets, worst_totals, max_order);

    // Per point: exact coordinate series, averaged over the set.
    std::vector<double> point_tails(ps.size());
    parallel_for(ps.size(), [&](std::size_t i) {
      auto p = ps.point(i);
      std::vector<std::vector<double>> buckets(static_cast<std::size_t>(d));
      std::vector<double> totals(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) {
        double x = p[static_cast<std::size_t>(k)];
        auto phi = grid_energy_series(x);
        KahanSum total;
        for (double v : phi) total += v;
        phi.resize(std::min(phi.size(), width));
        if (phi.empty()) phi.push_back(0.0);
        if (include_constant_level) {
          double step = (1.0 - x) * (1.0 - x);
          phi[0] += step;
          total += step;
        }
        buckets[static_cast<std::size_t>(k)] = std::move(phi);
        totals[static_cast<std::size_t>(k)] = total.value();
      }
      point_tails[i] = tensor_tail(buckets, totals, max_order);
    });
    KahanSum avg;
    for (double v : point_tails) avg += v;
    double per_point = avg.value() / static_cast<double>(ps.size());

    count_tail = std::min(worst, per_point);
  }
  return (count_tail + vol_tail) * (1.0 + 1e-9);
}

}  // namespace

double tail_bound(const PointSet& ps, int max_order) {
  return tail_bound_impl(ps, max_order, false);
}

double tail_bound_star(const PointSet& ps, int max_order) {
  return tail_bound_impl(ps, max_order, true);
}

}  // namespace disclab
