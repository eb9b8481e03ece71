#pragma once

#include <stdexcept>
#include <string>

namespace disclab {

// Malformed input text: ragged rows, tokens that are not numbers, missing data.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Input that cannot be interpreted without more information, e.g. an empty
// stream when no dimension hint was supplied.
class AmbiguityError : public std::runtime_error {
 public:
  explicit AmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

// A value outside its mathematical domain (coordinate not in [0,1), a level
// below -1, epsilon outside (0,1), ...).
class DomainViolation : public std::domain_error {
 public:
  explicit DomainViolation(const std::string& what) : std::domain_error(what) {}
};

// A request that exceeds a documented size guard and would not complete in
// reasonable time or memory.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace disclab
