#pragma once

#include <cmath>

namespace disclab {

// Compensated accumulator (Neumaier's variant of Kahan summation).  All series
// in this library are accumulated through this class in a fixed traversal
// order so results are reproducible across runs and platforms.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace disclab
