#include "disclab/pointset.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "disclab/errors.hpp"
#include "disclab/rng.hpp"

namespace disclab {

namespace {

void check_dim(int dim) {
  if (dim < 1) throw DomainViolation("dimension must be at least 1");
}

void check_coords(const std::vector<double>& coords, int dim) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    double c = coords[i];
    if (!(c >= 0.0 && c < 1.0)) {
      std::ostringstream msg;
      msg << "coordinate " << c << " at point " << (i / dim + 1) << ", column "
          << (i % dim + 1) << " is outside [0,1)";
      throw DomainViolation(msg.str());
    }
  }
}

}  // namespace

PointSet::PointSet(int dim, std::string label) : dim_(dim), label_(std::move(label)) {
  check_dim(dim);
}

PointSet::PointSet(int dim, std::vector<double> coords, std::string label)
    : dim_(dim), coords_(std::move(coords)), label_(std::move(label)) {
  check_dim(dim);
  if (coords_.size() % static_cast<std::size_t>(dim) != 0) {
    throw FormatError("coordinate buffer length is not a multiple of the dimension");
  }
  check_coords(coords_, dim_);
}

PointSet load_pointset(std::istream& in, std::optional<int> dim_hint, std::string label) {
  std::vector<double> coords;
  int dim = 0;
  std::size_t line_no = 0;
  std::size_t row_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream row(line);
    std::vector<double> values;
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        std::ostringstream msg;
        msg << "line " << line_no << ": token '" << token << "' is not a number";
        throw FormatError(msg.str());
      }
      values.push_back(v);
    }
    if (values.empty()) continue;  // comment or blank line
    ++row_no;
    if (dim == 0) {
      dim = static_cast<int>(values.size());
      if (dim_hint && *dim_hint != dim) {
        std::ostringstream msg;
        msg << "line " << line_no << ": row has " << dim << " coordinates, expected "
            << *dim_hint;
        throw FormatError(msg.str());
      }
    } else if (values.size() != static_cast<std::size_t>(dim)) {
      std::ostringstream msg;
      msg << "line " << line_no << ": row has " << values.size()
          << " coordinates, previous rows had " << dim;
      throw FormatError(msg.str());
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      double c = values[k];
      if (!(c >= 0.0 && c < 1.0)) {
        std::ostringstream msg;
        msg << "coordinate " << c << " at row " << row_no << ", column " << (k + 1)
            << " is outside [0,1)";
        throw DomainViolation(msg.str());
      }
      coords.push_back(c);
    }
  }
  if (dim == 0) {
    if (!dim_hint) {
      throw AmbiguityError(
          "stream holds no points and no dimension hint was given; "
          "the empty set needs an explicit dimension");
    }
    return PointSet(*dim_hint, std::move(label));
  }
  return PointSet(dim, std::move(coords), std::move(label));
}

PointSet load_pointset_file(const std::string& path, std::optional<int> dim_hint) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  return load_pointset(in, dim_hint, path);
}

void write_pointset(std::ostream& out, const PointSet& ps) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps.point(i);
    for (int k = 0; k < ps.dim(); ++k) {
      if (k) out << ' ';
      out << p[static_cast<std::size_t>(k)];
    }
    out << '\n';
  }
}

PointSet gen_random(std::size_t n, int dim, std::uint64_t seed) {
  check_dim(dim);
  Xoshiro256pp rng(seed);
  std::vector<double> coords;
  coords.reserve(n * static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < n * static_cast<std::size_t>(dim); ++i) {
    coords.push_back(rng.next_double());
  }
  return PointSet(dim, std::move(coords));
}

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double place = inv;
  double value = 0.0;
  while (i != 0) {
    value += static_cast<double>(i % base) * place;
    i /= base;
    place *= inv;
  }
  return value;
}

std::vector<std::uint64_t> first_primes(std::size_t k) {
  std::vector<std::uint64_t> primes;
  primes.reserve(k);
  for (std::uint64_t c = 2; primes.size() < k; ++c) {
    bool prime = true;
    for (std::uint64_t p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

PointSet gen_hammersley(std::size_t n, int dim) {
  check_dim(dim);
  auto primes = first_primes(static_cast<std::size_t>(dim) - 1);
  std::vector<double> coords;
  coords.reserve(n * static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back(static_cast<double>(i) / static_cast<double>(n));
    for (int k = 1; k < dim; ++k) {
      coords.push_back(radical_inverse(i, primes[static_cast<std::size_t>(k) - 1]));
    }
  }
  return PointSet(dim, std::move(coords));
}

PointSet gen_corner(std::size_t n, int dim) {
  check_dim(dim);
  return PointSet(dim, std::vector<double>(n * static_cast<std::size_t>(dim), 0.0));
}

}  // namespace disclab
