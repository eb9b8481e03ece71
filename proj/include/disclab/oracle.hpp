#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disclab/pointset.hpp"

namespace disclab {

struct DyadicIndex;  // haar.hpp

namespace oracle {

// Local discrepancy of the box [lower, upper): counted fraction minus volume.
// For the empty set the counted fraction is zero, so the value is -volume.
double local_discrepancy(const PointSet& ps, std::span<const double> lower,
                         std::span<const double> upper);

// Haar coefficient of the local discrepancy of anchored boxes, computed by
// exact cell decomposition: the support of the Haar function is cut along
// every point coordinate, the integrand is an affine-in-each-variable
// polynomial on each cell, and the integral is evaluated in closed form.
// Slow by design; guarded to dim <= 3, n <= 16, order <= 12.
double exact_haar_coefficient(const PointSet& ps, const DyadicIndex& index);

// One-dimensional anchored (star) L2 discrepancy via order statistics:
// between consecutive points the integrand is quadratic, so the integral is a
// finite sum of exact pieces.  Returns the unsquared value.
double star_l2_exact_1d(const PointSet& ps);

// One-dimensional unanchored (extreme) L2 discrepancy by the same idea, over
// the triangle x <= y cut along point coordinates in both variables.
double extreme_l2_exact_1d(const PointSet& ps);

struct McEstimate {
  double estimate;   // estimate of the squared extreme L2 discrepancy
  double std_error;  // standard error of the estimate
};

// Monte Carlo estimate of the squared extreme L2 discrepancy: draw two
// uniform corners, order them per coordinate (min/max), and average the
// squared local discrepancy; the factor 2^-d converts the per-coordinate
// ordering back to the measure of the ordered-corner region.
McEstimate extreme_l2_mc(const PointSet& ps, std::size_t samples, std::uint64_t seed);

}  // namespace oracle
}  // namespace disclab
