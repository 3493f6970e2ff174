#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hvp/measure.hpp"

namespace hvp {

// Occupied-box count on the anisotropic grid anchored at the origin:
// cells [k d, (k+1) d) x [m d, (m+1) d) x [n d^2, (n+1) d^2). Each cell has
// group-metric diameter comparable to d.
std::int64_t box_count_h(std::span<const HPoint> points, double delta);

// Plane version with cells [k d, (k+1) d) x [n d^2, (n+1) d^2).
std::int64_t box_count_plane(std::span<const PlanarPoint> points, double delta);

struct DimensionEstimate {
    std::vector<double> deltas;        // full requested ladder, descending
    std::vector<std::int64_t> counts;  // counts for the full ladder
    double slope = 0.0;                // log count vs log(1/delta), usable scales only
    double r2 = 0.0;
    std::array<double, 2> window = {0.0, 0.0};  // [min,max] usable delta
    std::vector<std::string> flags;    // one entry per excluded scale, with reason
};

// Least-squares box dimension over the usable part of the ladder. A scale is
// excluded when the sample saturates it: count > n_points/4, or delta below
// 4x the (Euclidean) nearest-neighbor spacing of the cloud. Fewer than 3
// usable scales is an error.
DimensionEstimate dim_estimate(const std::function<std::int64_t(double)>& counter,
                               std::vector<double> deltas, std::size_t n_points,
                               double nn_spacing);

// Convenience wrappers that bind the box counters and compute the spacing.
DimensionEstimate dim_estimate_h(std::span<const HPoint> points,
                                 std::vector<double> deltas);
DimensionEstimate dim_estimate_plane(std::span<const PlanarPoint> points,
                                     std::vector<double> deltas);

// Box dimension of the projected measure for each angle.
std::vector<std::pair<double, DimensionEstimate>> projected_dimension_profile(
    const DiscreteMeasure& mu, const std::vector<Angle>& thetas,
    const std::vector<double>& deltas);

}  // namespace hvp
