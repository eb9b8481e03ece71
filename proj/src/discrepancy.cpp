#include "disclab/discrepancy.hpp"

#include <algorithm>
#include <cmath>

#include "disclab/errors.hpp"
#include "disclab/haar.hpp"
#include "disclab/kahan.hpp"

namespace disclab {

std::string to_string(Measure m) {
  switch (m) {
    case Measure::StarL2: return "star-l2";
    case Measure::ExtremeL2: return "extreme-l2";
    case Measure::BmoLower: return "bmo-lower";
  }
  return "?";
}

std::string to_string(EvalMethod m) {
  return m == EvalMethod::ClosedForm ? "closed-form" : "haar-truncated";
}

double initial_star_sq(int dim) {
  if (dim < 1) throw DomainViolation("dimension must be at least 1");
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= 1.0 / 3.0;
  return v;
}

double initial_extreme_sq(int dim) {
  if (dim < 1) throw DomainViolation("dimension must be at least 1");
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= 1.0 / 12.0;
  return v;
}

namespace {

// Shared quadratic evaluator: squared = const_term - (2/n) sum_i cross(p_i)
// + (1/n^2) sum_ij pair(p_i, p_j), with the off-diagonal pair terms counted
// once and doubled (the kernels are symmetric).
template <class Cross, class Pair>
double quadratic_form(const PointSet& ps, double const_term, Cross cross, Pair pair) {
  std::size_t n = ps.size();
  if (n == 0) return const_term;
  KahanSum cross_sum;
  for (std::size_t i = 0; i < n; ++i) cross_sum += cross(ps.point(i));
  KahanSum pair_sum;
  for (std::size_t i = 0; i < n; ++i) {
    pair_sum += pair(ps.point(i), ps.point(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_sum += 2.0 * pair(ps.point(i), ps.point(j));
    }
  }
  double inv_n = 1.0 / static_cast<double>(n);
  return const_term - 2.0 * inv_n * cross_sum.value() +
         inv_n * inv_n * pair_sum.value();
}

}  // namespace

DiscrepancyResult star_l2(const PointSet& ps) {
  double sq = quadratic_form(
      ps, initial_star_sq(ps.dim()),
      [](std::span<const double> p) {
        double prod = 1.0;
        for (double x : p) prod *= (1.0 - x * x) * 0.5;
        return prod;
      },
      [](std::span<const double> p, std::span<const double> q) {
        double prod = 1.0;
        for (std::size_t k = 0; k < p.size(); ++k) prod *= 1.0 - std::max(p[k], q[k]);
        return prod;
      });
  sq = std::max(sq, 0.0);
  return {Measure::StarL2, std::sqrt(sq), sq, EvalMethod::ClosedForm,
          std::nullopt, std::nullopt};
}

DiscrepancyResult extreme_l2(const PointSet& ps) {
  double sq = quadratic_form(
      ps, initial_extreme_sq(ps.dim()),
      [](std::span<const double> p) {
        double prod = 1.0;
        for (double x : p) prod *= x * (1.0 - x) * 0.5;
        return prod;
      },
      [](std::span<const double> p, std::span<const double> q) {
        double prod = 1.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
          prod *= std::min(p[k], q[k]) * (1.0 - std::max(p[k], q[k]));
        }
        return prod;
      });
  sq = std::max(sq, 0.0);
  return {Measure::ExtremeL2, std::sqrt(sq), sq, EvalMethod::ClosedForm,
          std::nullopt, std::nullopt};
}

DiscrepancyResult extreme_l2_haar(const PointSet& ps, int max_order) {
  double sq = truncated_energy(ps, max_order, false);
  return {Measure::ExtremeL2, std::sqrt(std::max(sq, 0.0)), sq,
          EvalMethod::HaarTruncated, max_order, tail_bound(ps, max_order)};
}

DiscrepancyResult star_l2_haar(const PointSet& ps, int max_order) {
  double sq = truncated_energy(ps, max_order, true);
  return {Measure::StarL2, std::sqrt(std::max(sq, 0.0)), sq,
          EvalMethod::HaarTruncated, max_order, tail_bound_star(ps, max_order)};
}

}  // namespace disclab
