#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hvp/fourier.hpp"
#include "hvp/measure.hpp"

using namespace hvp;
namespace {
constexpr double kPi = std::numbers::pi;

// Continuum prediction for the transform/comparison ratio on the t-frequency
// axis: the x-integral concentrates the kernel to |t|^(-s/2) with constant
// Gamma(1/4)Gamma((s-1)/4) / (2 Gamma(s/4)), and the 1D power transform of
// |t|^(-p) contributes 2 Gamma(1-p) sin(pi p / 2) (2 pi)^(p-1) at p=(s-1)/2.
double axis2_ratio_oracle(double s) {
    const double kappa = std::tgamma(0.25) * std::tgamma((s - 1.0) / 4.0) /
                         (2.0 * std::tgamma(s / 4.0));
    const double a = (s - 1.0) / 2.0;
    const double b = 2.0 * std::tgamma(1.0 - a) * std::sin(kPi * a / 2.0) *
                     std::pow(2.0 * kPi, a - 1.0);
    return kappa * b;
}

PlanarMeasure lattice_pair() {
    PlanarMeasure nu;
    nu.points = {{0.0, 0.0}, {1.0, 0.25}};
    nu.weights = {0.5, 0.5};
    return nu;
}
}  // namespace

TEST_CASE("transform is symmetric under reflecting either frequency") {
    const FourierGrid g;
    const double v = fs_truncated_transform(2.0, g, 0.25, 0.5);
    CHECK(fs_truncated_transform(2.0, g, -0.25, 0.5) == v);
    CHECK(fs_truncated_transform(2.0, g, 0.25, -0.5) == v);
    CHECK(fs_truncated_transform(2.0, g, -0.25, -0.5) == v);
}

TEST_CASE("origin cell average grows like the kernel scaling under refinement") {
    const double c1 = fs_origin_cell_average(2.0, 0.25);
    const double c2 = fs_origin_cell_average(2.0, 0.125);
    CHECK(c1 > 0.0);
    // leading scaling is h^(-s/2); the square cell is not scale-invariant
    // for the anisotropic kernel, so allow the slowly-varying correction
    const double ratio = c2 / c1;
    CHECK(ratio >= std::pow(2.0, 2.0 / 2.0));
    CHECK(ratio <= std::pow(2.0, 2.0 / 2.0) * 1.35);
}

TEST_CASE("transform is positive at the unit frequencies") {
    const FourierGrid g;
    const FourierReport rep = fourier_fs_check(2.0, g, {{1.0, 0.0}, {0.0, 1.0}});
    REQUIRE(rep.samples.size() == 2);
    CHECK(rep.samples[0].fhat > 0.0);
    CHECK(rep.samples[1].fhat > 0.0);
}

TEST_CASE("frequencies outside the trusted band are rejected") {
    const FourierGrid g;  // band: max(xi1^2, |xi2|) in [1/64, 1]
    CHECK_THROWS_AS(fourier_fs_check(2.0, g, {{2.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fourier_fs_check(2.0, g, {{0.05, 0.005}}), std::invalid_argument);
    CHECK_THROWS_AS(fourier_fs_check(0.5, g, {{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("default samples ladder the band along both axes and the balanced ray") {
    const FourierGrid g;
    const auto samples = default_band_samples(g);
    REQUIRE(samples.size() == 12);  // 4 levels x 3 directions
    for (size_t i = 0; i < samples.size(); i += 3) {
        const double m = std::max(samples[i][0] * samples[i][0],
                                  std::fabs(samples[i][1]));
        CHECK(m >= 1.0 / 64.0 - 1e-12);
        CHECK(m <= 1.0 + 1e-12);
        CHECK(samples[i][1] == 0.0);      // first axis
        CHECK(samples[i + 1][0] == 0.0);  // second axis
        CHECK(samples[i + 2][0] * samples[i + 2][0] ==
              doctest::Approx(samples[i + 2][1]).epsilon(1e-12));  // balanced
    }
}

TEST_CASE("full lattice scan: positive everywhere, frozen comparison constants") {
    const FourierGrid g;
    const FourierReport rep = fourier_fs_check(2.0, g, default_band_samples(g));
    CHECK(rep.lattice_positivity_violations == 0);
    CHECK(rep.lattice_points == 16609);
    CHECK(rep.lattice_min_fhat == doctest::Approx(1.864).epsilon(1e-2));
    CHECK(rep.lattice_ratio_min == doctest::Approx(1.861).epsilon(1e-2));
    CHECK(rep.lattice_ratio_max == doctest::Approx(4.187).epsilon(1e-2));
    CHECK(rep.fitted_constant == doctest::Approx(2.7991).epsilon(1e-3));
    // spread exceeds 25% at this exponent: the single-constant window only
    // closes per direction family (each family is one dilation orbit)
    CHECK(rep.violations == 8);
    for (int dir = 0; dir < 3; ++dir) {
        double lo = 1e300, hi = 0.0;
        for (size_t i = size_t(dir); i < rep.samples.size(); i += 3) {
            lo = std::min(lo, rep.samples[i].ratio);
            hi = std::max(hi, rep.samples[i].ratio);
        }
        CHECK(hi / lo < 1.25 * 1.25);  // within 25% of the family midpoint
    }
}

TEST_CASE("steeper exponent passes the single-constant window outright") {
    const FourierGrid g;
    const FourierReport rep = fourier_fs_check(2.5, g, default_band_samples(g));
    CHECK(rep.violations == 0);
    CHECK(rep.lattice_positivity_violations == 0);
    CHECK(rep.fitted_constant == doctest::Approx(10.367).epsilon(1e-3));
}

TEST_CASE("t-axis ratios match the continuum closed form") {
    const FourierGrid g;
    for (double s : {1.5, 2.0, 2.5}) {
        const FourierReport rep = fourier_fs_check(s, g, default_band_samples(g));
        const double oracle = axis2_ratio_oracle(s);
        // second rung of the t-axis ladder: far from both band edges
        const double got = rep.samples[4].ratio;
        CHECK(rep.samples[4].xi1 == 0.0);
        CHECK(got == doctest::Approx(oracle).epsilon(0.05));
    }
}

TEST_CASE("energy identity on binned measures: frozen ratios, bilinear scaling") {
    const FourierGrid g;
    const PlanarMeasure pair = lattice_pair();
    const PlancherelResult pr = plancherel_check(pair, 2.0, g);
    CHECK(pr.lhs / pr.rhs == doctest::Approx(0.0616).epsilon(2e-2));
    CHECK(pr.lhs <= pr.rhs * 1.1);

    PlanarMeasure scaled = pair;
    for (double& w : scaled.weights) w *= 3.0;
    const PlancherelResult ps = plancherel_check(scaled, 2.0, g);
    CHECK(ps.lhs == doctest::Approx(9.0 * pr.lhs).epsilon(1e-12));
    CHECK(ps.rhs == doctest::Approx(9.0 * pr.rhs).epsilon(1e-12));
}

TEST_CASE("energy identity holds across a spread-out row and a blob") {
    const FourierGrid g;
    PlanarMeasure row;
    for (int k = -4; k <= 4; ++k) {
        row.points.push_back({double(k) / 4.0, 0.0});
        row.weights.push_back(1.0 / 9.0);
    }
    const PlancherelResult rr = plancherel_check(row, 2.0, g);
    CHECK(rr.lhs / rr.rhs == doctest::Approx(0.8703).epsilon(2e-2));
    CHECK(rr.lhs <= rr.rhs * 1.1);

    PlanarMeasure blob;
    double tot = 0.0;
    for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
            blob.points.push_back({double(k) / 4.0, double(l) / 4.0});
            blob.weights.push_back(std::exp(-0.25 * double(k * k + l * l)));
            tot += blob.weights.back();
        }
    for (double& w : blob.weights) w /= tot;
    const PlancherelResult br = plancherel_check(blob, 2.0, g);
    CHECK(br.lhs / br.rhs == doctest::Approx(0.6951).epsilon(2e-2));
    CHECK(br.lhs <= br.rhs * 1.1);
}

TEST_CASE("off-lattice support is rejected") {
    PlanarMeasure nu;
    nu.points = {{0.1, 0.0}};  // not a multiple of h = 1/4
    nu.weights = {1.0};
    CHECK_THROWS_AS(plancherel_check(nu, 2.0, FourierGrid{}), std::invalid_argument);
}
