#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disclab/haar.hpp"
#include "disclab/pointset.hpp"

namespace disclab {

// Region that realized the best localized ratio.  Cell ids for unions are the
// row-major encodings of the level-`search_level` cell digits, first
// coordinate most significant.
struct BmoCandidate {
  enum class Kind { FullCube, DyadicBox, CellUnion };
  Kind kind = Kind::FullCube;
  DyadicIndex box;                    // set for DyadicBox
  std::vector<std::uint64_t> cells;   // set for CellUnion
};

std::string to_string(BmoCandidate::Kind kind);

struct BmoEstimate {
  double value = 0.0;    // unsquared certified lower bound on the seminorm
  double squared = 0.0;
  BmoCandidate candidate;
  int truncation_order = 0;
  int search_level = 0;
  double global_term_squared = 0.0;  // full-cube term of the candidate max
  double tail_bound = 0.0;           // series remainder certificate at the order
};

// Seminorm of the empty set's discrepancy: 12^-d/2, on the same code path as
// the closed-form extreme initial value so the two agree bit for bit.
double bmo_initial(int dim);

// Full-cube term: identical, bit for bit, to the truncated extreme Haar
// series (the localized sum over the whole cube is that series).
double bmo_global(const PointSet& ps, int max_order);

// Unnormalized localized sum over Haar intervals inside `box` up to the
// truncation order: sum of 2^order coefficient^2 over contained intervals.
double box_energy(const PointSet& ps, const DyadicIndex& box, int max_order);

// Localized ratio for one dyadic box: box_energy divided by the box volume.
// Box levels must be >= 0 (level 0 in every coordinate is the full cube) and
// the truncation order must be at least the box order.
double bmo_dyadic_box(const PointSet& ps, const DyadicIndex& box, int max_order);

struct UnionSearchResult {
  std::vector<std::uint64_t> cells;
  double squared = 0.0;
  bool used_fallback = false;  // greedy path taken because the graph guard hit
  int iterations = 0;          // ratio-search rounds
};

// Best localized ratio over unions of level-`cell_level` cells, found by a
// Dinkelbach ratio search: each round solves max over unions of
// (energy(U) - lambda volume(U)) as a project-selection min-cut in which a
// Haar interval is bought only when every cell it meets is bought.  Intervals
// finer than the cell grid are folded into per-cell totals; coarser ones
// become group nodes, deduplicated by the set of cells they span.  Every
// returned ratio is a directly re-evaluated truncated sum, hence a certified
// lower bound.  Falls back to a greedy density scan when the graph would
// exceed its size guard.  Requires cell_level * dim <= 20.
UnionSearchResult bmo_union_search(const PointSet& ps, int cell_level, int max_order);

// Certified lower bound on the seminorm: the maximum of the full-cube term,
// the dyadic boxes whose per-coordinate levels stay within cell_level (the
// boxes that are unions of search cells; enumerated order-major within an
// internal work budget), and the union search.  Ties keep the earliest
// candidate in that sequence (boxes ordered by order, then lexicographic
// levels, then lexicographic positions).
BmoEstimate bmo_discrepancy(const PointSet& ps, int max_order, int cell_level);

}  // namespace disclab
