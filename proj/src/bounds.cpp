#include "disclab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "disclab/bmo.hpp"
#include "disclab/errors.hpp"
#include "disclab/parallel.hpp"
#include "disclab/pointset.hpp"
#include "disclab/rng.hpp"

namespace disclab {

namespace {

void check_curse_args(double epsilon, int dim) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainViolation("epsilon must lie strictly between 0 and 1");
  }
  if (dim < 1) throw DomainViolation("dimension must be at least 1");
}

double curse_bound(double base, double epsilon, int dim) {
  return std::exp(static_cast<double>(dim) * std::log(base)) * (1.0 - epsilon * epsilon);
}

}  // namespace

double curse_lower_bound_bmo(double epsilon, int dim) {
  check_curse_args(epsilon, dim);
  return curse_bound(4.0 / 3.0, epsilon, dim);
}

double curse_lower_bound_extreme(double epsilon, int dim) {
  check_curse_args(epsilon, dim);
  return curse_bound(9.0 / 4.0, epsilon, dim);
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Hammersley: return "hammersley";
    case Family::Random: return "random";
  }
  throw DomainViolation("unknown point family");
}

Family parse_family(const std::string& name) {
  if (name == "hammersley") return Family::Hammersley;
  if (name == "random") return Family::Random;
  throw DomainViolation("unknown point family: " + name);
}

namespace {

int capped_cell_level(int requested, int dim) {
  int cap = 20 / dim;
  return std::max(0, std::min(requested, cap));
}

double measure_value(const PointSet& ps, Measure measure, const InverseSearchConfig& cfg) {
  switch (measure) {
    case Measure::StarL2: return star_l2(ps).value;
    case Measure::ExtremeL2: return extreme_l2(ps).value;
    case Measure::BmoLower:
      return bmo_discrepancy(ps, cfg.bmo_order, capped_cell_level(cfg.bmo_level, ps.dim()))
          .value;
  }
  throw DomainViolation("unknown measure");
}

double initial_value(Measure measure, int dim) {
  switch (measure) {
    case Measure::StarL2: return std::sqrt(initial_star_sq(dim));
    case Measure::ExtremeL2: return std::sqrt(initial_extreme_sq(dim));
    case Measure::BmoLower: return bmo_initial(dim);
  }
  throw DomainViolation("unknown measure");
}

// Best value over the family's set and the seeded random candidates.  Each
// candidate is evaluated into its own slot so threading never reorders the
// reduction.
double best_candidate_value(std::int64_t n, const InverseSearchConfig& cfg) {
  auto count = static_cast<std::size_t>(n);
  std::size_t candidates = static_cast<std::size_t>(cfg.restarts) + 1;
  std::vector<double> values(candidates);
  parallel_for(candidates, [&](std::size_t r) {
    PointSet ps = (r == 0 && cfg.family == Family::Hammersley)
                      ? gen_hammersley(count, cfg.dim)
                      : gen_random(count, cfg.dim,
                                   mix_seed(cfg.seed, static_cast<std::uint64_t>(n), r));
    values[r] = measure_value(ps, cfg.measure, cfg);
  });
  double best = values[0];
  for (double v : values) best = std::min(best, v);
  return best;
}

}  // namespace

InverseBoundReport empirical_inverse(const InverseSearchConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw DomainViolation("epsilon must lie strictly between 0 and 1");
  }
  if (cfg.dim < 1) throw DomainViolation("dimension must be at least 1");
  if (cfg.n_max < 1) throw DomainViolation("the search budget must be at least 1");
  if (cfg.restarts < 0) throw DomainViolation("restarts must be nonnegative");

  InverseBoundReport report;
  report.epsilon = cfg.epsilon;
  report.dim = cfg.dim;
  report.bmo_lower = curse_lower_bound_bmo(cfg.epsilon, cfg.dim);
  report.extreme_lower = curse_lower_bound_extreme(cfg.epsilon, cfg.dim);
  report.measure = cfg.measure;
  report.family = cfg.family;
  if (cfg.measure == Measure::BmoLower) {
    report.notes =
        "heuristic: the localized estimator is a lower bound, so feasibility "
        "against epsilon * initial cannot be certified";
  } else {
    report.notes = "upper bound on the inverse: feasibility witnessed by a concrete set";
  }

  double threshold = cfg.epsilon * initial_value(cfg.measure, cfg.dim);
  auto feasible = [&](std::int64_t n) { return best_candidate_value(n, cfg) <= threshold; };

  // Doubling to find a feasible count, then bisection on the last gap.  The
  // budget cap is tested itself before giving up.
  std::int64_t lo = 0;  // largest count known infeasible
  std::int64_t hi = -1;
  for (std::int64_t n = 1; n <= cfg.n_max; n *= 2) {
    if (feasible(n)) {
      hi = n;
      break;
    }
    lo = n;
    if (n > cfg.n_max / 2) break;  // next double would overflow the budget
  }
  if (hi < 0 && lo < cfg.n_max && feasible(cfg.n_max)) hi = cfg.n_max;
  if (hi < 0) return report;  // budget exhausted, empirical_upper stays absent

  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  report.empirical_upper = hi;
  return report;
}

std::vector<RothRow> roth_curve(int dim, const std::vector<std::int64_t>& n_list,
                                int max_order, int cell_level) {
  if (dim < 1) throw DomainViolation("dimension must be at least 1");
  std::vector<RothRow> rows;
  rows.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    if (n < 1) throw DomainViolation("point counts must be positive");
    PointSet ps = gen_hammersley(static_cast<std::size_t>(n), dim);
    RothRow row;
    row.n = n;
    row.extreme = extreme_l2(ps).value;
    row.bmo_lower = bmo_discrepancy(ps, max_order, capped_cell_level(cell_level, dim)).value;
    double logs = 1.0 + std::log(static_cast<double>(n));
    row.shape = std::pow(logs, 0.5 * static_cast<double>(dim - 1)) / static_cast<double>(n);
    row.ratio_extreme = row.extreme / row.shape;
    row.ratio_bmo = row.bmo_lower / row.shape;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace disclab
