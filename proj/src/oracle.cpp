#include "disclab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "disclab/errors.hpp"
#include "disclab/haar.hpp"
#include "disclab/kahan.hpp"
#include "disclab/rng.hpp"

namespace disclab {
namespace oracle {

double local_discrepancy(const PointSet& ps, std::span<const double> lower,
                         std::span<const double> upper) {
  int d = ps.dim();
  if (lower.size() != static_cast<std::size_t>(d) ||
      upper.size() != static_cast<std::size_t>(d)) {
    throw DomainViolation("box corner dimension does not match the point set");
  }
  double vol = 1.0;
  for (int k = 0; k < d; ++k) {
    double lo = lower[static_cast<std::size_t>(k)];
    double hi = upper[static_cast<std::size_t>(k)];
    if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
      std::ostringstream msg;
      msg << "box edge [" << lo << ", " << hi << ") in coordinate " << (k + 1)
          << " is not a subinterval of [0,1]";
      throw DomainViolation(msg.str());
    }
    vol *= hi - lo;
  }
  if (ps.empty()) return -vol;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps.point(i);
    bool inside = true;
    for (int k = 0; k < d && inside; ++k) {
      double c = p[static_cast<std::size_t>(k)];
      inside = c >= lower[static_cast<std::size_t>(k)] &&
               c < upper[static_cast<std::size_t>(k)];
    }
    if (inside) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(ps.size()) - vol;
}

namespace {

constexpr int kMaxDim = 3;
constexpr std::size_t kMaxPoints = 16;
constexpr int kMaxOrder = 12;

// Deliberately self-contained checks: this module shares only the index type
// with the coefficient engine it cross-checks, not its code.
void check_index(const PointSet& ps, const DyadicIndex& index) {
  if (index.levels.size() != static_cast<std::size_t>(ps.dim()) ||
      index.positions.size() != index.levels.size()) {
    throw DomainViolation("index dimension does not match the point set");
  }
  int order = 0;
  for (std::size_t k = 0; k < index.levels.size(); ++k) {
    int level = index.levels[k];
    std::int64_t pos = index.positions[k];
    if (level < -1 || level > 52) throw DomainViolation("level outside [-1, 52]");
    std::int64_t count = level < 0 ? 1 : (std::int64_t{1} << level);
    if (pos < 0 || pos >= count) throw DomainViolation("position out of range");
    order += level > 0 ? level : 0;
  }
  if (ps.dim() > kMaxDim || ps.size() > kMaxPoints || order > kMaxOrder) {
    throw SizeGuardError(
        "exact cell decomposition is guarded to dim <= 3, n <= 16, order <= 12");
  }
}

}  // namespace

double exact_haar_coefficient(const PointSet& ps, const DyadicIndex& index) {
  check_index(ps, index);
  int d = ps.dim();

  // Per-coordinate breakpoints: support endpoints and midpoint of the Haar
  // interval plus every point coordinate strictly inside.  Between
  // breakpoints the counting indicator of each point is constant and the
  // Haar sign is constant, so the integrand is affine in each variable.
  std::vector<std::vector<double>> breaks(static_cast<std::size_t>(d));
  std::vector<double> support_mid(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    auto& b = breaks[static_cast<std::size_t>(k)];
    int level = index.levels[static_cast<std::size_t>(k)];
    if (level < 0) {
      b = {0.0, 1.0};
      support_mid[static_cast<std::size_t>(k)] = 2.0;  // never reached: sign +1
    } else {
      double lo = std::ldexp(
          static_cast<double>(index.positions[static_cast<std::size_t>(k)]), -level);
      double width = std::ldexp(1.0, -level);
      b = {lo, lo + width / 2.0, lo + width};
      support_mid[static_cast<std::size_t>(k)] = lo + width / 2.0;
    }
    double support_lo = b.front();
    double support_hi = b.back();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      double c = ps.coord(i, k);
      if (c > support_lo && c < support_hi) b.push_back(c);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }

  std::vector<std::size_t> cell(static_cast<std::size_t>(d), 0);
  KahanSum total;
  for (;;) {
    int sign = 1;
    double cell_vol = 1.0;
    double moment = 1.0;  // integral over the cell of prod t_i
    std::size_t counted = 0;
    {
      for (int k = 0; k < d; ++k) {
        const auto& b = breaks[static_cast<std::size_t>(k)];
        double lo = b[cell[static_cast<std::size_t>(k)]];
        double hi = b[cell[static_cast<std::size_t>(k)] + 1];
        if (lo >= support_mid[static_cast<std::size_t>(k)]) sign = -sign;
        cell_vol *= hi - lo;
        moment *= 0.5 * (hi * hi - lo * lo);
      }
      // Points counted by every anchored box [0,t) with t in the open cell:
      // those with all coordinates at or below the cell's lower corner.
      for (std::size_t i = 0; i < ps.size(); ++i) {
        auto p = ps.point(i);
        bool below = true;
        for (int k = 0; k < d && below; ++k) {
          below = p[static_cast<std::size_t>(k)] <=
                  breaks[static_cast<std::size_t>(k)][cell[static_cast<std::size_t>(k)]];
        }
        if (below) ++counted;
      }
    }
    double counting =
        ps.empty() ? 0.0
                   : static_cast<double>(counted) / static_cast<double>(ps.size()) *
                         cell_vol;
    total += sign * (counting - moment);

    int k = 0;
    for (; k < d; ++k) {
      if (++cell[static_cast<std::size_t>(k)] <
          breaks[static_cast<std::size_t>(k)].size() - 1) {
        break;
      }
      cell[static_cast<std::size_t>(k)] = 0;
    }
    if (k == d) break;
  }
  return total.value();
}

double star_l2_exact_1d(const PointSet& ps) {
  if (ps.dim() != 1) throw DomainViolation("this oracle handles dimension 1 only");
  std::vector<double> x(ps.coords());
  std::sort(x.begin(), x.end());
  std::size_t n = x.size();
  KahanSum total;
  // On (x_(k), x_(k+1)) the local discrepancy is k/n - t; its square has the
  // antiderivative -(k/n - t)^3 / 3.
  auto piece = [](double c, double a, double b) {
    double da = c - a, db = c - b;
    return (da * da * da - db * db * db) / 3.0;
  };
  double prev = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    double next = (k == n) ? 1.0 : x[k];
    double c = ps.empty() ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
    if (next > prev) total += piece(c, prev, next);
    prev = next;
  }
  return std::sqrt(total.value());
}

double extreme_l2_exact_1d(const PointSet& ps) {
  if (ps.dim() != 1) throw DomainViolation("this oracle handles dimension 1 only");
  std::vector<double> x(ps.coords());
  std::sort(x.begin(), x.end());
  std::size_t n = x.size();
  std::vector<double> g;
  g.reserve(n + 2);
  g.push_back(0.0);
  g.insert(g.end(), x.begin(), x.end());
  g.push_back(1.0);

  auto count_between = [&](double lo, double hi) {
    auto first = std::lower_bound(x.begin(), x.end(), lo);
    auto last = std::upper_bound(x.begin(), x.end(), hi);
    return static_cast<double>(last - first);
  };

  KahanSum total;
  std::size_t cells = g.size() - 1;
  for (std::size_t a = 0; a < cells; ++a) {
    double a0 = g[a], a1 = g[a + 1];
    if (a1 <= a0) continue;
    {
      // Diagonal piece: no point lies in [s,t) when both ends stay in one
      // cell, so the integrand is (t-s)^2 over the triangle s <= t.
      double w = a1 - a0;
      total += w * w * w * w / 12.0;
    }
    for (std::size_t b = a + 1; b < cells; ++b) {
      double b0 = g[b], b1 = g[b + 1];
      if (b1 <= b0) continue;
      // Points between the cells are exactly those counted by every [s,t):
      // integrate (u + s - t)^2 over the rectangle in closed form.
      double u = n == 0 ? 0.0 : count_between(a1, b0) / static_cast<double>(n);
      auto quart = [](double s) { return s * s * s * s; };
      total += (quart(u + a1 - b0) - quart(u + a0 - b0) - quart(u + a1 - b1) +
                quart(u + a0 - b1)) /
               12.0;
    }
  }
  return std::sqrt(total.value());
}

McEstimate extreme_l2_mc(const PointSet& ps, std::size_t samples, std::uint64_t seed) {
  if (samples < 1000) {
    throw DomainViolation("the sampling error model needs at least 1000 samples");
  }
  int d = ps.dim();
  Xoshiro256pp rng(seed);
  std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  double weight = std::ldexp(1.0, -d);  // measure of the ordered-corner region
  KahanSum sum, sum_sq;
  for (std::size_t s = 0; s < samples; ++s) {
    for (int k = 0; k < d; ++k) {
      double u = rng.next_double();
      double v = rng.next_double();
      lo[static_cast<std::size_t>(k)] = std::min(u, v);
      hi[static_cast<std::size_t>(k)] = std::max(u, v);
    }
    double delta = local_discrepancy(ps, lo, hi);
    double val = delta * delta;
    sum += val;
    sum_sq += val * val;
  }
  double inv = 1.0 / static_cast<double>(samples);
  double mean = sum.value() * inv;
  double var = std::max(0.0, sum_sq.value() * inv - mean * mean);
  double se = std::sqrt(var / static_cast<double>(samples));
  return {mean * weight, se * weight};
}

}  // namespace oracle
}  // namespace disclab
