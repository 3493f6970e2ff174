#include "hvp/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hvp/errors.hpp"
#include "hvp/numeric.hpp"
#include "json.hpp"

namespace hvp {

namespace {

double checked_mass(const std::vector<double>& w) {
    return pairwise_sum(std::span<const double>(w.data(), w.size()));
}

// Midpoints of the level-m intervals of the two-map construction
//   L(x) = lo + r(x-lo),  R(x) = hi - r(hi-x)
// on [lo,hi], in increasing order. r = 1/2 gives the regular dyadic grid.
std::vector<double> two_map_level_points(double lo, double hi, double r, int m) {
    const std::size_t count = std::size_t(1) << m;
    std::vector<double> xs(count);
    const double mid = 0.5 * (lo + hi);
    for (std::size_t k = 0; k < count; ++k) {
        double x = mid;
        for (int pos = 0; pos < m; ++pos) {
            const bool right = (k >> pos) & 1u;
            x = right ? hi - r * (hi - x) : lo + r * (x - lo);
        }
        xs[k] = x;
    }
    return xs;
}

}  // namespace

double DiscreteMeasure::mass() const { return checked_mass(weights); }
double PlanarMeasure::mass() const { return checked_mass(weights); }

DiscreteMeasure parabola_measure(int n, double beta) {
    if (n < 1) throw std::invalid_argument("parabola_measure: n must be >= 1");
    if (!(beta > 0.0) || beta > 1.0)
        throw std::invalid_argument("parabola_measure: beta must lie in (0, 1]");

    std::vector<double> xs;
    if (beta == 1.0) {
        xs.resize(std::size_t(n));
        for (int i = 0; i < n; ++i)
            xs[std::size_t(i)] = (n == 1) ? 1.0 : 1.0 + double(i) / double(n - 1);
    } else {
        const int m = std::max(0, int(std::ceil(std::log2(double(n)))));
        xs = two_map_level_points(1.0, 2.0, std::pow(2.0, -1.0 / beta), m);
    }

    DiscreteMeasure mu;
    mu.points.reserve(xs.size());
    for (double x : xs) mu.points.push_back({x, 0.0, 0.25 * x * x});
    mu.weights.assign(xs.size(), 1.0 / double(xs.size()));
    mu.meta.generator = "parabola";
    mu.meta.params = {{"n", double(xs.size())}, {"beta", beta}};
    return mu;
}

DiscreteMeasure product_cantor_measure(Angle theta0, double a, double b, int depth,
                                       double center_radius) {
    if (!(a >= 0.0) || a > 1.0 || !(b >= 0.0) || b > 1.0)
        throw std::invalid_argument("product_cantor_measure: dims must lie in [0, 1]");
    if (depth < 0 || depth > 14)
        throw std::invalid_argument("product_cantor_measure: depth must lie in [0, 14]");
    if (!(center_radius >= 1.0))
        throw std::invalid_argument("product_cantor_measure: center_radius must be >= 1");

    const double R = center_radius;
    std::vector<double> vs = (a == 0.0)
        ? std::vector<double>{R}
        : two_map_level_points(R - 0.5, R + 0.5, std::pow(2.0, -1.0 / a), depth);
    std::vector<double> ts = (b == 0.0)
        ? std::vector<double>{0.5}
        : two_map_level_points(0.0, 1.0, std::pow(2.0, -1.0 / b), depth);

    const Vec2 axis = theta0.normal();
    DiscreteMeasure mu;
    mu.points.reserve(vs.size() * ts.size());
    for (double t : ts)
        for (double v : vs) mu.points.push_back({v * axis.x, v * axis.y, t});
    mu.weights.assign(mu.points.size(), 1.0 / double(mu.points.size()));
    mu.meta.generator = "cantor";
    mu.meta.params = {{"a", a}, {"b", b}, {"depth", double(depth)},
                      {"theta0", theta0.radians()}, {"R", R}};
    return mu;
}

FrostmanEstimate frostman_constant(const DiscreteMeasure& mu, double alpha,
                                   std::vector<double> radii) {
    if (mu.size() == 0) throw std::invalid_argument("frostman_constant: empty measure");
    if (!(alpha > 0.0)) throw std::invalid_argument("frostman_constant: alpha must be > 0");
    if (radii.empty()) throw std::invalid_argument("frostman_constant: no radii");
    for (double r : radii)
        if (!(r > 0.0)) throw std::invalid_argument("frostman_constant: radii must be > 0");
    std::sort(radii.begin(), radii.end());

    const std::size_t n = mu.size();
    FrostmanEstimate est;
    est.alpha = alpha;
    est.radii_scanned = radii;

    std::vector<double> dist(n);
    std::vector<std::size_t> order(n);
    std::vector<double> cum(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) dist[k] = dh(mu.points[k], mu.points[i]);
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::sort(order.begin(), order.end(),
                  [&dist](std::size_t u, std::size_t v) { return dist[u] < dist[v]; });
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += mu.weights[order[k]];
            cum[k] = acc;
        }
        for (double r : radii) {
            // Mass of the closed ball: last sorted index with distance <= r.
            std::size_t lo = 0, hi = n;  // first index with dist > r
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                if (dist[order[mid]] <= r) lo = mid + 1; else hi = mid;
            }
            if (lo == 0) continue;
            const double ratio = cum[lo - 1] / std::pow(r, alpha);
            if (ratio > est.c_alpha) {
                est.c_alpha = ratio;
                est.argmax_center = mu.points[i];
                est.argmax_radius = r;
            }
        }
    }
    return est;
}

PlanarMeasure pushforward_projection(const DiscreteMeasure& mu, Angle theta) {
    if (mu.size() == 0)
        throw std::invalid_argument("pushforward_projection: empty measure");
    PlanarMeasure nu;
    nu.points.reserve(mu.size());
    for (const HPoint& p : mu.points)
        nu.points.push_back(to_plane_coords(theta, vertical_proj(theta, p)));
    nu.weights = mu.weights;
    return nu;
}

DiscreteMeasure translate_measure(const HPoint& g, const DiscreteMeasure& mu) {
    DiscreteMeasure out = mu;
    for (HPoint& p : out.points) p = group_mul(g, p);
    return out;
}

DiscreteMeasure dilate_measure(double lambda, const DiscreteMeasure& mu) {
    DiscreteMeasure out = mu;
    for (HPoint& p : out.points) p = dilate(lambda, p);
    return out;
}

namespace {

void require_finite_row(double x, double y, double t, double w,
                        const std::filesystem::path& path, std::size_t line) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(t) || !std::isfinite(w))
        throw IoError(path.string() + ":" + std::to_string(line) + ": non-finite value");
    if (!(w > 0.0))
        throw IoError(path.string() + ":" + std::to_string(line) +
                      ": weight must be positive");
}

std::vector<double> split_csv_row(const std::string& row, std::size_t n_fields,
                                  const std::filesystem::path& path, std::size_t line) {
    std::vector<double> vals;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = row.find(',', start);
        const std::string field = row.substr(start, comma - start);
        const char* begin = field.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            throw IoError(path.string() + ":" + std::to_string(line) +
                          ": malformed number '" + field + "'");
        vals.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (vals.size() != n_fields)
        throw IoError(path.string() + ":" + std::to_string(line) + ": expected " +
                      std::to_string(n_fields) + " fields, got " +
                      std::to_string(vals.size()));
    return vals;
}

}  // namespace

void save_measure(const DiscreteMeasure& mu, const std::filesystem::path& path) {
    if (mu.size() == 0) throw std::invalid_argument("save_measure: empty measure");
    if (mu.points.size() != mu.weights.size())
        throw std::invalid_argument("save_measure: points/weights length mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "x,y,t,w\n";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const HPoint& p = mu.points[i];
        out << format_g17(p.x) << ',' << format_g17(p.y) << ',' << format_g17(p.t)
            << ',' << format_g17(mu.weights[i]) << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
    out.close();

    nlohmann::ordered_json meta;
    meta["generator"] = mu.meta.generator;
    meta["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : mu.meta.params) meta["params"][k] = v;
    meta["seed"] = mu.meta.seed;
    std::ofstream side(path.string() + ".meta.json", std::ios::binary);
    if (!side) throw IoError("cannot open for writing: " + path.string() + ".meta.json");
    side << meta.dump(2) << '\n';
}

DiscreteMeasure load_measure(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string row;
    if (!std::getline(in, row)) throw IoError(path.string() + ": empty file");
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row != "x,y,t,w")
        throw IoError(path.string() + ":1: expected header 'x,y,t,w'");

    DiscreteMeasure mu;
    std::size_t line = 1;
    while (std::getline(in, row)) {
        ++line;
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (row.empty()) continue;
        const std::vector<double> v = split_csv_row(row, 4, path, line);
        require_finite_row(v[0], v[1], v[2], v[3], path, line);
        mu.points.push_back({v[0], v[1], v[2]});
        mu.weights.push_back(v[3]);
    }
    if (mu.size() == 0) throw IoError(path.string() + ": no data rows");

    const std::filesystem::path side = path.string() + ".meta.json";
    if (std::filesystem::exists(side)) {
        std::ifstream ms(side, std::ios::binary);
        nlohmann::json meta;
        try {
            ms >> meta;
            mu.meta.generator = meta.value("generator", std::string("file"));
            mu.meta.seed = meta.value("seed", std::uint64_t(0));
            if (meta.contains("params"))
                for (const auto& [k, v] : meta["params"].items())
                    mu.meta.params[k] = v.get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw IoError(side.string() + ": bad metadata: " + e.what());
        }
    } else {
        mu.meta.generator = "file";
    }
    return mu;
}

void save_planar_measure(const PlanarMeasure& nu, const std::filesystem::path& path) {
    if (nu.size() == 0) throw std::invalid_argument("save_planar_measure: empty measure");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "v,t,w\n";
    for (std::size_t i = 0; i < nu.size(); ++i)
        out << format_g17(nu.points[i].v) << ',' << format_g17(nu.points[i].t) << ','
            << format_g17(nu.weights[i]) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

double min_separation(const PlanarMeasure& nu) {
    const std::size_t n = nu.size();
    if (n < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            best = std::min(best, plane_dist(nu.points[i], nu.points[k]));
    return best;
}

}  // namespace hvp
