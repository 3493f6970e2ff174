#include "hvp/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hvp/energy.hpp"
#include "hvp/errors.hpp"
#include "hvp/numeric.hpp"

namespace hvp {

namespace {

// 12-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 12;
constexpr double kGLNode[kGL] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kGLWeight[kGL] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

double fs_value(double x, double t, double s) { return kernel_fs(x, t, s); }

// Integral of the kernel over an axis-aligned rectangle by tensor GL.
double rect_integral(double s, double x0, double x1, double t0, double t1) {
    const double cx = 0.5 * (x0 + x1), rx = 0.5 * (x1 - x0);
    const double ct = 0.5 * (t0 + t1), rt = 0.5 * (t1 - t0);
    double acc = 0.0;
    for (int a = 0; a < kGL; ++a)
        for (int b = 0; b < kGL; ++b)
            acc += kGLWeight[a] * kGLWeight[b] *
                   fs_value(cx + rx * kGLNode[a], ct + rt * kGLNode[b], s);
    return acc * rx * rt;
}

void validate_grid(const FourierGrid& grid, int& N) {
    if (!(grid.extent > 0.0) || !(grid.resolution > 0.0))
        throw std::invalid_argument("fourier grid: extent and resolution must be > 0");
    const double ratio = grid.extent / grid.resolution;
    const double rounded = std::round(ratio);
    if (std::fabs(ratio - rounded) > 1e-6 * std::max(1.0, ratio))
        throw std::invalid_argument("fourier grid: extent must be a multiple of resolution");
    if (rounded < 8 || rounded > 8192)
        throw std::invalid_argument("fourier grid: extent/resolution must lie in [8, 8192]");
    N = int(rounded);
}

struct LatticeTransform {
    int N = 0;
    double h = 0.0, T = 0.0, dxi = 0.0;
    std::vector<double> fvals;  // (N+1)^2, f[i*(N+1)+j] = kernel at (i h, j h)
    std::vector<double> fhat;   // (N+1)^2, transform at (k1 dxi, k2 dxi)
};

LatticeTransform build_lattice(double s, const FourierGrid& grid) {
    LatticeTransform L;
    validate_grid(grid, L.N);
    L.h = grid.resolution;
    L.T = grid.extent;
    L.dxi = 1.0 / (2.0 * grid.extent);
    const std::size_t n1 = std::size_t(L.N) + 1;

    L.fvals.assign(n1 * n1, 0.0);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            L.fvals[i * n1 + j] =
                (i == 0 && j == 0) ? 0.0 : fs_value(double(i) * L.h, double(j) * L.h, s);
    L.fvals[0] = fs_origin_cell_average(s, L.h);

    // Symmetric lattice cosine sum over [-N, N]^2 via DCT-I with the far
    // edges doubled, so endpoint terms are counted once per sign.
    std::vector<double> in(L.fvals);
    for (std::size_t i = 0; i < n1; ++i) {
        in[i * n1 + std::size_t(L.N)] *= 2.0;
        in[std::size_t(L.N) * n1 + i] *= 2.0;
    }
    L.fhat.assign(n1 * n1, 0.0);
    fftw_plan plan = fftw_plan_r2r_2d(L.N + 1, L.N + 1, in.data(), L.fhat.data(),
                                      FFTW_REDFT00, FFTW_REDFT00, FFTW_ESTIMATE);
    if (!plan) throw NumericalError("fourier: transform planning failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    for (double& v : L.fhat) v *= L.h * L.h;
    return L;
}

// Band membership uses the dual anisotropic gauge m(xi) = max(xi1^2, |xi2|):
// frequency xi reads structure at spatial scale (delta, delta^2) with
// delta = m^(-1/2), so trusting it requires delta^2 features to clear both
// the domain truncation (m >= 1/T) and the sample spacing (m <= 1/(4h) --
// quarter-Nyquist for xi2 and, equivalently, t-core resolution for xi1).
bool in_band(const FourierGrid& grid, double xi1, double xi2) {
    const double m = std::max(xi1 * xi1, std::fabs(xi2));
    const double lo = 1.0 / grid.extent;
    const double hi = 1.0 / (4.0 * grid.resolution);
    return m >= lo * (1.0 - 1e-12) && m <= hi * (1.0 + 1e-12);
}

}  // namespace

double fs_origin_cell_average(double s, double h) {
    if (!(s > 0.0) || !(s < 3.0))
        throw std::invalid_argument("fs_origin_cell_average: s must lie in (0, 3)");
    if (!(h > 0.0)) throw std::invalid_argument("fs_origin_cell_average: h must be > 0");

    // Positive quadrant [0, h/2]^2 as nested dyadic frames around the
    // singularity; each frame is three rectangles where the kernel is smooth.
    double total = 0.0;
    double prev_frame = 0.0;
    double frame = 0.0;
    int k = 0;
    for (; k < 600; ++k) {
        const double a = 0.5 * h * std::ldexp(1.0, -k);
        const double b = 0.5 * a;
        prev_frame = frame;
        frame = rect_integral(s, b, a, 0.0, b) + rect_integral(s, 0.0, b, b, a) +
                rect_integral(s, b, a, b, a);
        total += frame;
        if (k >= 6 && frame < 1e-14 * total) break;
    }
    // Geometric tail from the last observed decay ratio.
    if (prev_frame > 0.0 && frame > 0.0 && frame < prev_frame) {
        const double q = std::min(frame / prev_frame, 0.95);
        total += frame * q / (1.0 - q);
    }
    return 4.0 * total / (h * h);
}

double fs_truncated_transform(double s, const FourierGrid& grid, double xi1, double xi2) {
    int N = 0;
    validate_grid(grid, N);
    if (!(s > 1.0) || !(s < 3.0))
        throw std::invalid_argument("fs_truncated_transform: s must lie in (1, 3)");
    const double h = grid.resolution;
    const std::size_t n1 = std::size_t(N) + 1;

    std::vector<double> f(n1 * n1);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            f[i * n1 + j] = (i == 0 && j == 0) ? 0.0 : fs_value(double(i) * h, double(j) * h, s);
    f[0] = fs_origin_cell_average(s, h);

    std::vector<double> cj(n1);
    for (std::size_t j = 0; j < n1; ++j)
        cj[j] = (j == 0 ? 1.0 : 2.0) * std::cos(2.0 * std::numbers::pi * xi2 * double(j) * h);
    std::vector<double> rows(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n1; ++j) acc += f[i * n1 + j] * cj[j];
        rows[i] = (i == 0 ? 1.0 : 2.0) *
                  std::cos(2.0 * std::numbers::pi * xi1 * double(i) * h) * acc;
    }
    return h * h * pairwise_sum(rows);
}

// Dyadic ladder of band levels m = max(xi1^2, |xi2|), three directions per
// level: the xi1 axis, the xi2 axis, and the balanced ray xi1^2 = xi2.  At a
// given level each direction reads the kernel at the same anisotropic scale.
std::vector<std::array<double, 2>> default_band_samples(const FourierGrid& grid) {
    const double lo = 1.0 / grid.extent;
    const double hi = 1.0 / (4.0 * grid.resolution);
    std::vector<std::array<double, 2>> out;
    for (double m = lo; m <= hi * (1.0 + 1e-12); m *= 4.0) {
        out.push_back({std::sqrt(m), 0.0});
        out.push_back({0.0, m});
        out.push_back({std::sqrt(m), m});
    }
    return out;
}

FourierReport fourier_fs_check(double s, const FourierGrid& grid,
                               const std::vector<std::array<double, 2>>& freq_samples) {
    if (!(s > 1.0) || !(s < 3.0))
        throw std::invalid_argument("fourier_fs_check: s must lie in (1, 3)");
    if (freq_samples.empty())
        throw std::invalid_argument("fourier_fs_check: no frequency samples");
    for (const auto& xi : freq_samples)
        if (!in_band(grid, xi[0], xi[1]))
            throw std::invalid_argument(
                "fourier_fs_check: frequency (" + format_g17(xi[0]) + ", " +
                format_g17(xi[1]) + ") outside the reliable band");

    const LatticeTransform L = build_lattice(s, grid);
    const std::size_t n1 = std::size_t(L.N) + 1;

    FourierReport rep;
    rep.s = s;
    rep.grid = grid;
    rep.band_lo = 1.0 / grid.extent;
    rep.band_hi = 1.0 / (4.0 * grid.resolution);

    // Whole-band lattice diagnostics (one quadrant covers all by symmetry).
    rep.lattice_min_fhat = std::numeric_limits<double>::infinity();
    rep.lattice_ratio_min = std::numeric_limits<double>::infinity();
    for (std::size_t k1 = 0; k1 < n1; ++k1)
        for (std::size_t k2 = 0; k2 < n1; ++k2) {
            const double xi1 = double(k1) * L.dxi, xi2 = double(k2) * L.dxi;
            if (!in_band(grid, xi1, xi2)) continue;
            const double v = L.fhat[k1 * n1 + k2];
            ++rep.lattice_points;
            rep.lattice_min_fhat = std::min(rep.lattice_min_fhat, v);
            if (!(v > 0.0)) ++rep.lattice_positivity_violations;
            const double ratio = v / kernel_fs(xi1, xi2, 3.0 - s);
            rep.lattice_ratio_min = std::min(rep.lattice_ratio_min, ratio);
            rep.lattice_ratio_max = std::max(rep.lattice_ratio_max, ratio);
        }

    for (const auto& xi : freq_samples) {
        FourierSample smp;
        smp.xi1 = xi[0];
        smp.xi2 = xi[1];
        const double a1 = std::fabs(xi[0]) / L.dxi, a2 = std::fabs(xi[1]) / L.dxi;
        const double r1 = std::round(a1), r2 = std::round(a2);
        if (std::fabs(a1 - r1) < 1e-9 && std::fabs(a2 - r2) < 1e-9 && r1 <= L.N &&
            r2 <= L.N) {
            smp.fhat = L.fhat[std::size_t(r1) * n1 + std::size_t(r2)];
        } else {
            smp.fhat = fs_truncated_transform(s, grid, xi[0], xi[1]);
        }
        smp.comparison = kernel_fs(xi[0], xi[1], 3.0 - s);
        smp.ratio = smp.fhat / smp.comparison;
        rep.samples.push_back(smp);
    }

    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const FourierSample& smp : rep.samples)
        if (smp.ratio > 0.0) {
            rmin = std::min(rmin, smp.ratio);
            rmax = std::max(rmax, smp.ratio);
        }
    if (rmax > 0.0) {
        rep.fitted_constant = std::sqrt(rmin * rmax);
        rep.ratio_min = rmin;
        rep.ratio_max = rmax;
    }
    for (const FourierSample& smp : rep.samples)
        if (!(smp.ratio >= rep.fitted_constant / 1.25 &&
              smp.ratio <= rep.fitted_constant * 1.25))
            ++rep.violations;
    return rep;
}

PlancherelResult plancherel_check(const PlanarMeasure& nu, double s,
                                  const FourierGrid& grid) {
    if (!(s > 1.0) || !(s < 3.0))
        throw std::invalid_argument("plancherel_check: s must lie in (1, 3)");
    if (nu.points.empty()) throw std::invalid_argument("plancherel_check: empty measure");

    const LatticeTransform L = build_lattice(s, grid);
    const std::size_t n1 = std::size_t(L.N) + 1;
    const int half = L.N / 2;

    // Bin to lattice cells; reject support off the lattice or outside the
    // half-extent square (differences must stay inside the sampled square).
    std::map<std::pair<long, long>, double> cells;
    for (std::size_t idx = 0; idx < nu.points.size(); ++idx) {
        const double av = nu.points[idx].v / L.h, at = nu.points[idx].t / L.h;
        const long i = std::lround(av), j = std::lround(at);
        if (std::fabs(av - double(i)) > 1e-6 * std::max(1.0, std::fabs(av)) ||
            std::fabs(at - double(j)) > 1e-6 * std::max(1.0, std::fabs(at)))
            throw std::invalid_argument(
                "plancherel_check: support point " + std::to_string(idx) +
                " is not binned to the grid lattice");
        if (std::labs(i) > half || std::labs(j) > half)
            throw std::invalid_argument(
                "plancherel_check: support point " + std::to_string(idx) +
                " lies outside half the transform extent");
        cells[{i, j}] += nu.weights[idx];
    }

    struct Cell { long i, j; double m; };
    std::vector<Cell> cv;
    cv.reserve(cells.size());
    for (const auto& [key, m] : cells) cv.push_back({key.first, key.second, m});

    PlancherelResult res;

    // Kernel side: distinct cell pairs at center differences.
    {
        std::vector<double> terms;
        terms.reserve(cv.size() * (cv.size() - 1) / 2);
        for (std::size_t a = 0; a < cv.size(); ++a)
            for (std::size_t b = a + 1; b < cv.size(); ++b) {
                const std::size_t di = std::size_t(std::labs(cv[a].i - cv[b].i));
                const std::size_t dj = std::size_t(std::labs(cv[a].j - cv[b].j));
                terms.push_back(2.0 * cv[a].m * cv[b].m * L.fvals[di * n1 + dj]);
            }
        res.lhs = pairwise_sum(terms);
    }

    // Frequency side over the reliable band (same gauge test as in_band:
    // the low-frequency hole and the unresolved high-|xi1| strip drop out).
    const int K = half;  // |k| dxi <= 1/(4h)
    const double step = std::numbers::pi / double(L.N);

    // Rows of occupied cells for a separable transform evaluation.
    std::map<long, std::vector<std::pair<long, double>>> rows;
    for (const Cell& c : cv) rows[c.j].push_back({c.i, c.m});

    std::vector<double> sinc2(std::size_t(K) + 1);
    for (int k = 0; k <= K; ++k) {
        const double x = std::numbers::pi * double(k) * L.dxi * L.h;
        const double sc = (std::fabs(x) < 1e-12) ? 1.0 : std::sin(x) / x;
        sinc2[std::size_t(k)] = sc * sc;
    }

    double rhs = 0.0;
    std::vector<std::complex<double>> rowval(rows.size());
    std::vector<std::complex<double>> rot(rows.size()), phase(rows.size());
    std::vector<long> rowj(rows.size());
    {
        std::size_t r = 0;
        for (const auto& [j, _] : rows) rowj[r++] = j;
    }
    const double band_hi = 1.0 / (4.0 * grid.resolution);
    for (int k1 = 0; k1 <= K; ++k1) {
        const double x1 = double(k1) * L.dxi;
        if (x1 * x1 > band_hi * (1.0 + 1e-12)) break;  // rest of rows out of band
        const double w1 = (k1 == 0) ? 1.0 : 2.0;  // (k1,k2) + (-k1,-k2)
        std::size_t r = 0;
        for (const auto& [j, items] : rows) {
            std::complex<double> acc = 0.0;
            for (const auto& [i, m] : items)
                acc += m * std::polar(1.0, step * double(k1) * double(i));
            rowval[r] = acc;
            rot[r] = std::polar(1.0, step * double(rowj[r]));
            phase[r] = std::polar(1.0, -step * double(K) * double(rowj[r]));
            ++r;
        }
        for (int k2 = -K; k2 <= K; ++k2) {
            std::complex<double> G = 0.0;
            for (std::size_t q = 0; q < rowval.size(); ++q) {
                G += rowval[q] * phase[q];
                phase[q] *= rot[q];
            }
            if (!in_band(grid, double(k1) * L.dxi, double(k2) * L.dxi)) continue;
            const std::size_t ak2 = std::size_t(std::abs(k2));
            rhs += w1 * L.fhat[std::size_t(k1) * n1 + ak2] * std::norm(G) *
                   sinc2[std::size_t(k1)] * sinc2[ak2];
        }
    }
    res.rhs = rhs * L.dxi * L.dxi;
    return res;
}

}  // namespace hvp
