#include "hvp/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "hvp/errors.hpp"
#include "hvp/numeric.hpp"

namespace hvp {

namespace {

std::int64_t cell_index(double coord, double width) {
    const double q = std::floor(coord / width);
    if (!(q >= -9.0e15 && q <= 9.0e15))
        throw std::invalid_argument("box count: coordinate/delta ratio overflows grid index");
    return std::int64_t(q);
}

template <typename Cell>
std::int64_t count_distinct(std::vector<Cell>& cells) {
    std::sort(cells.begin(), cells.end());
    return std::int64_t(std::unique(cells.begin(), cells.end()) - cells.begin());
}

// Exact Euclidean nearest-neighbor spacing. A lexicographic-neighbor pass
// gives an upper bound m; the true closest pair then sits in adjacent cells
// of a grid with cell size m.
template <typename Point, typename GetCoord>
double nn_spacing_impl(std::span<const Point> pts, int dims, GetCoord coord) {
    const std::size_t n = pts.size();
    if (n < 2) return 0.0;

    auto dist2 = [&](const Point& a, const Point& b) {
        double s = 0.0;
        for (int d = 0; d < dims; ++d) {
            const double dd = coord(a, d) - coord(b, d);
            s += dd * dd;
        }
        return s;
    };

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
        for (int d = 0; d < dims; ++d) {
            const double cu = coord(pts[u], d), cv = coord(pts[v], d);
            if (cu != cv) return cu < cv;
        }
        return u < v;
    });
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i)
        best2 = std::min(best2, dist2(pts[order[i]], pts[order[i + 1]]));
    if (best2 == 0.0) return 0.0;

    const double cell = std::sqrt(best2);
    auto key = [&](const Point& p) {
        std::int64_t k = 0;
        for (int d = 0; d < dims; ++d)
            k = k * 0x100003ll + cell_index(coord(p, d), cell);
        return k;
    };
    std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) grid[key(pts[i])].push_back(i);

    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t base[3] = {0, 0, 0};
        for (int d = 0; d < dims; ++d) base[d] = cell_index(coord(pts[i], d), cell);
        const int zlo = dims == 3 ? -1 : 0, zhi = dims == 3 ? 1 : 0;
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = zlo; dz <= zhi; ++dz) {
                    std::int64_t k = base[0] + dx;
                    k = k * 0x100003ll + base[1] + dy;
                    if (dims == 3) k = k * 0x100003ll + base[2] + dz;
                    const auto it = grid.find(k);
                    if (it == grid.end()) continue;
                    for (std::size_t j : it->second)
                        if (j != i) best2 = std::min(best2, dist2(pts[i], pts[j]));
                }
    }
    return std::sqrt(best2);
}

}  // namespace

std::int64_t box_count_h(std::span<const HPoint> points, double delta) {
    if (points.empty()) throw std::invalid_argument("box_count_h: empty point set");
    if (!(delta > 0.0)) throw std::invalid_argument("box_count_h: delta must be > 0");
    std::vector<std::array<std::int64_t, 3>> cells;
    cells.reserve(points.size());
    const double d2 = delta * delta;
    for (const HPoint& p : points)
        cells.push_back({cell_index(p.x, delta), cell_index(p.y, delta),
                         cell_index(p.t, d2)});
    return count_distinct(cells);
}

std::int64_t box_count_plane(std::span<const PlanarPoint> points, double delta) {
    if (points.empty()) throw std::invalid_argument("box_count_plane: empty point set");
    if (!(delta > 0.0)) throw std::invalid_argument("box_count_plane: delta must be > 0");
    std::vector<std::array<std::int64_t, 2>> cells;
    cells.reserve(points.size());
    const double d2 = delta * delta;
    for (const PlanarPoint& p : points)
        cells.push_back({cell_index(p.v, delta), cell_index(p.t, d2)});
    return count_distinct(cells);
}

DimensionEstimate dim_estimate(const std::function<std::int64_t(double)>& counter,
                               std::vector<double> deltas, std::size_t n_points,
                               double nn_spacing) {
    if (deltas.size() < 4)
        throw std::invalid_argument("dim_estimate: need at least 4 scales");
    for (double d : deltas)
        if (!(d > 0.0)) throw std::invalid_argument("dim_estimate: deltas must be > 0");
    std::sort(deltas.begin(), deltas.end(), std::greater<>());
    if (std::adjacent_find(deltas.begin(), deltas.end()) != deltas.end())
        throw std::invalid_argument("dim_estimate: duplicate scale");

    DimensionEstimate est;
    est.deltas = deltas;
    std::vector<double> xs, ys;
    double wlo = 0.0, whi = 0.0;
    for (double d : deltas) {
        const std::int64_t c = counter(d);
        est.counts.push_back(c);
        if (4.0 * c > double(n_points)) {
            est.flags.push_back("delta=" + format_g17(d) +
                                " excluded: count saturates the sample (> n/4)");
            continue;
        }
        if (d < 4.0 * nn_spacing) {
            est.flags.push_back("delta=" + format_g17(d) +
                                " excluded: below 4x nearest-neighbor spacing");
            continue;
        }
        xs.push_back(std::log(1.0 / d));
        ys.push_back(std::log(double(c)));
        whi = std::max(whi, d);
        wlo = (wlo == 0.0) ? d : std::min(wlo, d);
    }
    if (xs.size() < 3)
        throw NumericalError("dim_estimate: fewer than 3 usable scales (" +
                             std::to_string(xs.size()) + " usable of " +
                             std::to_string(deltas.size()) + ")");
    const LineFit fit = least_squares(xs, ys);
    est.slope = fit.slope;
    est.r2 = fit.r2;
    est.window = {wlo, whi};
    return est;
}

DimensionEstimate dim_estimate_h(std::span<const HPoint> points,
                                 std::vector<double> deltas) {
    const double nn = nn_spacing_impl(points, 3, [](const HPoint& p, int d) {
        return d == 0 ? p.x : d == 1 ? p.y : p.t;
    });
    return dim_estimate(
        [points](double d) { return box_count_h(points, d); },
        std::move(deltas), points.size(), nn);
}

DimensionEstimate dim_estimate_plane(std::span<const PlanarPoint> points,
                                     std::vector<double> deltas) {
    const double nn = nn_spacing_impl(points, 2, [](const PlanarPoint& p, int d) {
        return d == 0 ? p.v : p.t;
    });
    return dim_estimate(
        [points](double d) { return box_count_plane(points, d); },
        std::move(deltas), points.size(), nn);
}

std::vector<std::pair<double, DimensionEstimate>> projected_dimension_profile(
    const DiscreteMeasure& mu, const std::vector<Angle>& thetas,
    const std::vector<double>& deltas) {
    if (thetas.empty())
        throw std::invalid_argument("projected_dimension_profile: no angles");
    std::vector<std::pair<double, DimensionEstimate>> profile;
    profile.reserve(thetas.size());
    for (Angle th : thetas) {
        const PlanarMeasure nu = pushforward_projection(mu, th);
        profile.emplace_back(
            th.radians(),
            dim_estimate_plane(std::span<const PlanarPoint>(nu.points), deltas));
    }
    return profile;
}

}  // namespace hvp
