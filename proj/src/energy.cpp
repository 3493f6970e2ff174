#include "hvp/energy.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hvp/errors.hpp"
#include "hvp/numeric.hpp"

namespace hvp {

double kernel_fs(double x, double t, double s) {
    if (!(s > 0.0) || s >= 3.0)
        throw std::invalid_argument("kernel_fs: s must lie in (0, 3)");
    const double q = x * x * x * x + t * t;
    if (q == 0.0) throw std::invalid_argument("kernel_fs: evaluated at the origin");
    return std::pow(q, -0.25 * s);
}

namespace {

struct EnergyAccum {
    double energy = 0.0;
    double min_dist = std::numeric_limits<double>::infinity();
};

// Ordered-distinct-pair energy plus the smallest pairwise plane distance,
// accumulated row by row in index order so the result does not depend on
// the thread count.
EnergyAccum energy_rows(const PlanarMeasure& nu, double s, EnergyKernel kernel,
                        int threads) {
    const std::size_t n = nu.size();
    const double expo = -0.25 * s;
    const bool weighted = (kernel == EnergyKernel::koranyi);

    std::vector<double> row_sum(n, 0.0);
    std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
    std::atomic<bool> degenerate{false};

    parallel_for_blocks(n, threads, [&](std::size_t i) {
        const PlanarPoint pi = nu.points[i];
        const double wi = nu.weights[i];
        double acc = 0.0;
        double mind = std::numeric_limits<double>::infinity();
        for (std::size_t k = i + 1; k < n; ++k) {
            const double dv = nu.points[k].v - pi.v;
            const double dt = nu.points[k].t - pi.t;
            const double dv4 = dv * dv * (dv * dv);
            const double dt2 = dt * dt;
            const double qm = dv4 + 16.0 * dt2;  // plane metric to the 4th
            if (qm == 0.0) {
                degenerate.store(true);
                return;
            }
            if (qm < mind) mind = qm;
            const double q = weighted ? qm : dv4 + dt2;
            acc += wi * nu.weights[k] * std::pow(q, expo);
        }
        row_sum[i] = acc;
        row_min[i] = mind;
    });

    if (degenerate.load()) {
        // Rescan serially so the reported pair is the first in index order.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                if (nu.points[i].v == nu.points[k].v && nu.points[i].t == nu.points[k].t)
                    throw NumericalError("discrete_energy: coincident support points at indices " +
                                         std::to_string(i) + " and " + std::to_string(k));
    }

    EnergyAccum out;
    out.energy = 2.0 * pairwise_sum(row_sum);
    double q_min = std::numeric_limits<double>::infinity();
    for (double q : row_min) q_min = std::min(q_min, q);
    if (std::isfinite(q_min)) out.min_dist = std::pow(q_min, 0.25);
    return out;
}

}  // namespace

double discrete_energy(const PlanarMeasure& nu, double s, EnergyKernel kernel,
                       int threads) {
    if (nu.size() == 0) throw std::invalid_argument("discrete_energy: empty measure");
    if (nu.points.size() != nu.weights.size())
        throw std::invalid_argument("discrete_energy: points/weights length mismatch");
    if (!(s > 0.0)) throw std::invalid_argument("discrete_energy: s must be > 0");
    if (nu.size() == 1) return 0.0;
    return energy_rows(nu, s, kernel, threads).energy;
}

SweepReport energy_theta_sweep(const DiscreteMeasure& mu, double s,
                               const AngleDomain& domain, int n_theta,
                               EnergyKernel kernel, int threads) {
    if (mu.size() == 0) throw std::invalid_argument("energy_theta_sweep: empty measure");
    if (domain.empty()) throw std::invalid_argument("energy_theta_sweep: empty domain");
    if (n_theta < 2) throw std::invalid_argument("energy_theta_sweep: n_theta must be >= 2");
    if (!(s > 0.0)) throw std::invalid_argument("energy_theta_sweep: s must be > 0");

    SweepReport rep;
    rep.s = s;
    rep.kernel = kernel;
    rep.domain = domain;
    rep.n_points = int(mu.size());

    const double total = domain.total_length();
    std::vector<double> widths;  // midpoint-rule weight per grid node
    for (auto [lo, hi] : domain.intervals()) {
        const double len = hi - lo;
        const int m = std::max(1, int(std::llround(double(n_theta) * len / total)));
        const double h = len / m;
        for (int j = 0; j < m; ++j) {
            rep.thetas.push_back(lo + (j + 0.5) * h);
            widths.push_back(h);
        }
    }

    rep.energies.resize(rep.thetas.size());
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < rep.thetas.size(); ++g) {
        const Angle th(rep.thetas[g]);
        const PlanarMeasure nu = pushforward_projection(mu, th);
        EnergyAccum acc;
        try {
            acc = energy_rows(nu, s, kernel, threads);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " at theta=" +
                                 format_g17(rep.thetas[g]));
        }
        rep.energies[g] = acc.energy;
        if (acc.min_dist < min_sep) min_sep = acc.min_dist;
    }
    rep.min_sep = min_sep;

    std::vector<double> contrib(rep.energies.size());
    for (std::size_t g = 0; g < contrib.size(); ++g)
        contrib[g] = rep.energies[g] * widths[g];
    rep.integral = pairwise_sum(contrib);
    return rep;
}

}  // namespace hvp
