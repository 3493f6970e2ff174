#pragma once

#include <utility>
#include <vector>

#include "hvp/geometry.hpp"

namespace hvp {

// Union of disjoint half-open intervals [lo, hi) inside [0, pi), kept sorted.
// Angles are a circle of circumference pi: exclusions wrap at the seam.
class AngleDomain {
  public:
    static AngleDomain full();
    // Intervals are normalized: clipped to [0, pi), sorted, merged.
    static AngleDomain from_intervals(std::vector<std::pair<double, double>> ivs);

    const std::vector<std::pair<double, double>>& intervals() const { return ivs_; }
    double total_length() const;
    bool contains(double theta) const;
    bool empty() const { return ivs_.empty(); }

  private:
    std::vector<std::pair<double, double>> ivs_;
};

// [0,pi) minus the open epsilon-balls (circle metric) around
//   theta0 + k*pi/4  for k not divisible by `modulus` (modulus 2 or 4):
//   modulus 4 removes theta0 + pi/4, pi/2, 3pi/4;
//   modulus 2 removes theta0 + pi/4, 3pi/4.
// epsilon = 0 removes nothing. Throws if the result is empty.
AngleDomain excluded_domain(Angle theta0, double epsilon, int modulus);

}  // namespace hvp
