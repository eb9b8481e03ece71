#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disclab/discrepancy.hpp"

namespace disclab {

// Analytic lower bounds on the inverse discrepancy N(epsilon, d): the point
// count needed to push the discrepancy below epsilon times its initial
// value.  Both grow exponentially in the dimension.  epsilon must lie in
// (0,1); computed as exp(d log base) for stability at large d.
double curse_lower_bound_bmo(double epsilon, int dim);      // (4/3)^d (1 - eps^2)
double curse_lower_bound_extreme(double epsilon, int dim);  // (9/4)^d (1 - eps^2)

enum class Family { Hammersley, Random };

std::string to_string(Family family);
Family parse_family(const std::string& name);

struct InverseSearchConfig {
  double epsilon = 0.5;
  int dim = 1;
  Measure measure = Measure::ExtremeL2;
  Family family = Family::Hammersley;
  std::int64_t n_max = 4096;
  int restarts = 8;          // extra random candidate sets per N
  std::uint64_t seed = 0;
  int bmo_order = 10;        // truncation order when the measure is BmoLower
  int bmo_level = 2;         // search level, capped so the cell guard holds
};

struct InverseBoundReport {
  double epsilon = 0.0;
  int dim = 0;
  double bmo_lower = 0.0;      // (4/3)^d (1 - eps^2)
  double extreme_lower = 0.0;  // (9/4)^d (1 - eps^2)
  std::optional<std::int64_t> empirical_upper;
  Measure measure = Measure::ExtremeL2;
  Family family = Family::Hammersley;
  std::string notes;
};

// Smallest tested N whose best candidate set (the family's set plus
// `restarts` seeded random sets) gets the measure under epsilon times the
// initial value; doubling finds a feasible N, bisection refines it.  Absent
// when the budget n_max is exhausted.  For star and extreme this is a true
// upper bound on the inverse; for the BMO measure only lower bounds on the
// value are computable, so feasibility there is heuristic and flagged in the
// notes.
InverseBoundReport empirical_inverse(const InverseSearchConfig& config);

struct RothRow {
  std::int64_t n = 0;
  double extreme = 0.0;        // extreme L2 of the Hammersley set
  double bmo_lower = 0.0;      // certified localized lower bound
  double shape = 0.0;          // (1 + log N)^{(d-1)/2} / N
  double ratio_extreme = 0.0;  // extreme / shape
  double ratio_bmo = 0.0;      // bmo_lower / shape
};

// Discrepancy decay of Hammersley sets against the conjectured-optimal shape
// function.  The ratios bound the shape constant empirically from above; no
// value of that constant is asserted.
std::vector<RothRow> roth_curve(int dim, const std::vector<std::int64_t>& n_list,
                                int max_order, int cell_level);

}  // namespace disclab
