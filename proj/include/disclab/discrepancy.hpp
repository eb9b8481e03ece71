#pragma once

#include <optional>
#include <string>

#include "disclab/pointset.hpp"

namespace disclab {

enum class Measure { StarL2, ExtremeL2, BmoLower };
enum class EvalMethod { ClosedForm, HaarTruncated };

std::string to_string(Measure m);
std::string to_string(EvalMethod m);

struct DiscrepancyResult {
  Measure measure;
  double value;    // unsquared
  double squared;
  EvalMethod method;
  std::optional<int> truncation_order;  // Haar variants only
  std::optional<double> tail_bound;     // certified series remainder
};

// Squared initial discrepancies (empty set), shared by every code path that
// reports them: 3^-d for anchored boxes, 12^-d for unanchored ones.
double initial_star_sq(int dim);
double initial_extreme_sq(int dim);

// Anchored (star) L2 discrepancy via the quadratic closed form
//   3^-d - (2/n) sum_i prod_k (1 - x_ik^2)/2
//        + (1/n^2) sum_ij prod_k (1 - max(x_ik, x_jk)).
// The empty set yields the initial value sqrt(3^-d).
DiscrepancyResult star_l2(const PointSet& ps);

// Unanchored (extreme) L2 discrepancy via
//   12^-d - (2/n) sum_i prod_k x_ik (1 - x_ik)/2
//         + (1/n^2) sum_ij prod_k min(x_ik, x_jk) (1 - max(x_ik, x_jk)).
// The empty set yields the initial value sqrt(12^-d).
DiscrepancyResult extreme_l2(const PointSet& ps);

// Haar-series evaluations, truncated at the given order with a certified
// remainder bound.  The extreme series runs over nonnegative levels only; the
// star series adds the constant level per coordinate and therefore dominates.
DiscrepancyResult extreme_l2_haar(const PointSet& ps, int max_order);
DiscrepancyResult star_l2_haar(const PointSet& ps, int max_order);

}  // namespace disclab
