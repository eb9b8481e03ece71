#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace disclab {

// A finite multiset of points in [0,1)^d.  Coordinates are validated on
// construction and immutable afterwards; the empty set (n = 0) is a valid
// value and keeps its dimension.
class PointSet {
 public:
  explicit PointSet(int dim, std::string label = "");
  PointSet(int dim, std::vector<double> coords, std::string label = "");

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  double coord(std::size_t i, int axis) const {
    return coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }
  const std::vector<double>& coords() const { return coords_; }
  const std::string& label() const { return label_; }

 private:
  int dim_;
  std::vector<double> coords_;  // row-major, size() * dim_ entries
  std::string label_;
};

// Text format: one point per line, coordinates separated by commas and/or
// whitespace; '#' starts a comment; blank lines are ignored.  An empty stream
// needs dim_hint to fix the dimension of the empty set.
PointSet load_pointset(std::istream& in, std::optional<int> dim_hint = std::nullopt,
                       std::string label = "");
PointSet load_pointset_file(const std::string& path,
                            std::optional<int> dim_hint = std::nullopt);

void write_pointset(std::ostream& out, const PointSet& ps);

// n points from xoshiro256++ seeded with `seed`; coordinates are drawn
// row-major, so the sequence is part of the reproducibility contract.
PointSet gen_random(std::size_t n, int dim, std::uint64_t seed);

// Hammersley construction: point i is (i/n, phi_2(i), phi_3(i), phi_5(i), ...)
// with phi_b the base-b radical inverse; for d = 1 this is the grid {i/n}.
PointSet gen_hammersley(std::size_t n, int dim);

// n copies of the origin; the classic worst case for uniformity.
PointSet gen_corner(std::size_t n, int dim);

// Base-b van der Corput radical inverse of i.
double radical_inverse(std::uint64_t i, std::uint64_t base);

// First k primes (2, 3, 5, ...).
std::vector<std::uint64_t> first_primes(std::size_t k);

}  // namespace disclab
