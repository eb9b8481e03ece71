#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disclab/pointset.hpp"

namespace disclab {

// Index of a tensor-product dyadic Haar function.  Per coordinate: level -1 is
// the constant function 1 on [0,1) with the single position 0; level j >= 0
// selects the interval [m 2^-j, (m+1) 2^-j) with position m in [0, 2^j).
// Levels above 52 are rejected: below that, box membership floor(x 2^j) is
// exact in double precision, which the box-hashing code relies on.
struct DyadicIndex {
  std::vector<int> levels;
  std::vector<std::int64_t> positions;
};

inline constexpr int kMaxCoordLevel = 52;
// Cap on the order (sum of nonnegative levels) so box keys pack into 64 bits.
inline constexpr int kMaxTotalOrder = 62;

// Throws DomainViolation / SizeGuardError if the index is malformed.
void validate_index(const DyadicIndex& index);

// Sum of the nonnegative levels; the decay order of the coefficient.
int index_order(const DyadicIndex& index);
int level_order(std::span<const int> levels);

struct Box {
  std::vector<double> lower, upper;
};

// Supporting box of the indexed Haar function ([0,1) per level--1 coordinate).
Box dyadic_interval(const DyadicIndex& index);

// Value of the Haar function at x: product over coordinates of +-1 inside the
// support (left half +1, right half -1; level -1 contributes +1), 0 outside.
int haar_eval(const DyadicIndex& index, std::span<const double> x);

// Per-coordinate Haar coefficient of the volume term t: 1/2 at level -1,
// -2^-2(j+1) at level j >= 0.  Independent of the position.
double volume_factor(int level);

// Product of volume factors; the Haar coefficient of t -> prod t_i.
double volume_part_coefficient(const DyadicIndex& index);

// Per-coordinate Haar coefficient of the step t -> 1[x < t]: 1 - x at level
// -1; at level j >= 0 it vanishes off the support and equals the negated
// distance from x to the nearest endpoint of its level-j interval inside.
double counting_factor(double x, int level, std::int64_t pos);

// Product of counting factors over coordinates.
double counting_part_coefficient(std::span<const double> x, const DyadicIndex& index);

struct HaarCoefficient {
  DyadicIndex index;
  double counting_part;  // average of counting factors over the points
  double volume_part;    // coefficient of the volume term
  double value;          // counting_part - volume_part
};

// Haar coefficient of the local discrepancy of anchored boxes.  With no
// points the discrepancy is minus the volume term, so the value is
// -volume_part; this sign convention is used consistently everywhere.
HaarCoefficient haar_coefficient(const PointSet& ps, const DyadicIndex& index);

// Sum over all positions m at the given level vector of
// 2^order * coefficient(j, m)^2, computed exactly without enumerating the
// 2^order boxes: points occupy at most n boxes, the remaining boxes carry the
// squared volume part, which has a closed form.  Levels may include -1.
double level_sum(const PointSet& ps, std::span<const int> levels);

// Same sum restricted to positions whose interval lies inside the dyadic box
// `outer` (whose levels must be >= 0 and dominated by `levels` componentwise;
// level 0 with position 0 is the full axis).  Points outside `outer` cannot
// contribute to contained positions.  Used by the localized seminorm.
double level_sum_in_box(const PointSet& ps, std::span<const int> levels,
                        const DyadicIndex& outer);

// Level vectors with order <= max_order, order-major and lexicographic within
// an order (with -1 sorting before 0 when included).  This is the fixed
// traversal order of every truncated series in the library.
std::vector<std::vector<int>> enumerate_levels(int dim, int max_order,
                                               bool include_constant_level);

// Truncated series sum_{order <= max_order} level_sum.  With the constant
// level included this converges from below to the squared anchored (star) L2
// discrepancy; without it, to the squared unanchored (extreme) one.
double truncated_energy(const PointSet& ps, int max_order, bool include_constant_level);

// Proven upper bound on the series mass above max_order, i.e. on
// sum_{order > max_order} level_sum.  Two valid bounds are taken and the
// smaller returned:
//
//  * worst case: per coordinate and level j >= 0 the counting factor is at
//    most 2^-(j+1) in magnitude and the squared-position sum of the
//    per-box averages is at most 1, so a level of order k contributes at
//    most 2^-k-2d; the volume part contributes 16^-d 4^-k per level.
//    Because counting and volume parts share their sign pattern box by box,
//    (a-b)^2 <= max(a^2, b^2) and no cross term is needed.
//  * per point: the counting factor at level j equals the distance from the
//    coordinate to the nearest multiple of 2^-j, so each point carries the
//    convergent per-coordinate series sum_j 2^j dist(x, 2^-j Z)^2 and the
//    truncated remainder is evaluated by a knapsack convolution over
//    coordinates.  Every double is a dyadic rational, so the series is
//    finite and exact.
//
// Both are inflated by 1e-9 relative to absorb rounding.  The bound is
// monotone nonincreasing in max_order and tends to zero.
double tail_bound(const PointSet& ps, int max_order);

// Same certificate for the series that includes the constant level, where the
// per-coordinate step factor 1 - x (level -1, order zero) joins the series.
double tail_bound_star(const PointSet& ps, int max_order);

}  // namespace disclab
