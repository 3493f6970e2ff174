#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hvp/geometry.hpp"

namespace hvp {

struct MeasureMetadata {
    std::string generator;                  // "parabola", "cantor", "file", ...
    std::map<std::string, double> params;   // generator parameters, by name
    std::uint64_t seed = 0;
};

// Finite weighted point set in the group. Weights are positive; mass is the
// weight total. Generators are deterministic functions of (params, seed).
struct DiscreteMeasure {
    std::vector<HPoint> points;
    std::vector<double> weights;
    MeasureMetadata meta;

    std::size_t size() const { return points.size(); }
    double mass() const;
};

// Same, in the (v,t) coordinates of some vertical plane.
struct PlanarMeasure {
    std::vector<PlanarPoint> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
    double mass() const;
};

// Weighted points on the curve (x, 0, x^2/4), total mass 1.
//   beta = 1: n uniformly spaced x in [1,2], endpoints included.
//   beta in (0,1): x runs over the midpoints of the level-ceil(log2 n)
//     intervals of the two-map self-similar construction on [1,2] with
//     contraction ratio 2^(-1/beta); the point count rounds up to that
//     power of two. Graph dimension in the group metric is 2*beta.
DiscreteMeasure parabola_measure(int n, double beta);

// Product of two self-similar sets laid out in the plane V_theta0^perp:
// v-marginal of Euclidean dimension a centered at v = center_radius with
// unit diameter, t-marginal of dimension b on [0,1]. Group dimension of the
// product is a + 2b. depth levels give (2^depth)^2 points (a or b equal to
// zero collapse that marginal to its center point).
DiscreteMeasure product_cantor_measure(Angle theta0, double a, double b, int depth,
                                       double center_radius);

struct FrostmanEstimate {
    double alpha = 0.0;
    double c_alpha = 0.0;          // max over scanned (center, radius) of mass/r^alpha
    std::vector<double> radii_scanned;
    HPoint argmax_center;
    double argmax_radius = 0.0;
};

// Discrete scan of sup mu(B(x,r))/r^alpha over centers = support points and
// the given radii (closed balls in dh). A lower bound for the true constant.
FrostmanEstimate frostman_constant(const DiscreteMeasure& mu, double alpha,
                                   std::vector<double> radii);

// Image of mu under the vertical projection at theta, in plane coordinates.
// Weights are carried over unchanged.
PlanarMeasure pushforward_projection(const DiscreteMeasure& mu, Angle theta);

// Left translation p -> g * p of every support point.
DiscreteMeasure translate_measure(const HPoint& g, const DiscreteMeasure& mu);

// D_lambda applied to every support point.
DiscreteMeasure dilate_measure(double lambda, const DiscreteMeasure& mu);

// CSV with header x,y,t,w at 17 significant digits, LF line endings, plus a
// JSON sidecar <path>.meta.json holding {generator, params, seed}.
void save_measure(const DiscreteMeasure& mu, const std::filesystem::path& path);
DiscreteMeasure load_measure(const std::filesystem::path& path);

// CSV with header v,t,w (same digit and line conventions).
void save_planar_measure(const PlanarMeasure& nu, const std::filesystem::path& path);

// Smallest pairwise distance in the plane metric; +inf for size < 2.
double min_separation(const PlanarMeasure& nu);

}  // namespace hvp
