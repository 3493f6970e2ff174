#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hvp/measure.hpp"

namespace hvp {

// Truncated-transform grid: the kernel is sampled on [-T, T]^2 with spacing
// h, and its discrete cosine transform lives on the dual lattice with spacing
// 1/(2T). The kernel's core near the t-axis narrows like xi1^(-2), so a
// frequency is trusted by the anisotropic level m(xi) = max(xi1^2, |xi2|):
// the band m in [1/T, 1/(4h)] keeps both domain truncation (low end) and
// sample spacing (high end) from distorting the transform. The default grid
// is square-extent with h = 1/4 so the band top sits exactly at the
// resolution limit for both axes.
struct FourierGrid {
    double extent = 64.0;      // T
    double resolution = 0.25;  // h
};

struct FourierSample {
    double xi1 = 0.0, xi2 = 0.0;
    double fhat = 0.0;        // truncated transform of the plane kernel at xi
    double comparison = 0.0;  // dual-exponent kernel value at xi
    double ratio = 0.0;       // fhat / comparison
};

struct FourierReport {
    double s = 0.0;
    FourierGrid grid;
    double band_lo = 0.0, band_hi = 0.0;
    std::vector<FourierSample> samples;
    double fitted_constant = 0.0;  // geometric mid of the observed ratios
    double ratio_min = 0.0, ratio_max = 0.0;
    std::size_t violations = 0;  // samples straying >25% from the constant
    // Diagnostics over every lattice frequency in the band; the ratio
    // extremes are the empirical two-sided comparison constants.
    double lattice_min_fhat = 0.0;
    double lattice_ratio_min = 0.0, lattice_ratio_max = 0.0;
    std::size_t lattice_positivity_violations = 0;
    std::size_t lattice_points = 0;
};

// Average of the plane kernel (x^4 + t^2)^(-s/4) over the grid cell at the
// origin, where pointwise sampling is impossible. Dyadic-frame quadrature
// with geometric tail extrapolation; s in (0, 3).
double fs_origin_cell_average(double s, double h);

// Truncated discrete transform of the plane kernel at one frequency (direct
// symmetric cosine sum over the whole grid; origin cell replaced by its
// average). Intended for spot checks; the lattice-wide scan uses a DCT.
double fs_truncated_transform(double s, const FourierGrid& grid, double xi1, double xi2);

// Positivity and decay check of the transformed kernel on the reliable band.
// Each requested frequency must satisfy max(xi1^2, |xi2|) in [1/T, 1/(4h)];
// out-of-band requests are rejected. s in (1, 3).
FourierReport fourier_fs_check(double s, const FourierGrid& grid,
                               const std::vector<std::array<double, 2>>& freq_samples);

// Geometric ladder of in-band frequencies along the axes and the balanced
// ray xi1^2 = xi2, used as the default sample set by the CLI and the checks.
std::vector<std::array<double, 2>> default_band_samples(const FourierGrid& grid);

struct PlancherelResult {
    double lhs = 0.0;  // double sum of the kernel over distinct cell pairs
    double rhs = 0.0;  // band sum of fhat * |measure transform|^2 * dxi^2
};

// Both sides of the energy/frequency identity for a measure binned to the
// grid's own lattice (every support point must sit on a multiple of h, within
// [-T/2, T/2]^2 so cell differences stay inside the sampled square).
// The binned measure is treated as cell-uniform: its transform carries the
// cell smoothing factor, and the kernel side samples cell-center differences.
PlancherelResult plancherel_check(const PlanarMeasure& nu, double s,
                                  const FourierGrid& grid);

}  // namespace hvp
