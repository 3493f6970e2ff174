// Acceptance gate: ten desk-scale checks of the library's headline claims.
// Usage: acceptance [N ...]   with no arguments all ten run in order.
// Each check prints one line: [PASS|FAIL] criterion N: summary (X.Xs)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hvp/angle_domain.hpp"
#include "hvp/dimension.hpp"
#include "hvp/energy.hpp"
#include "hvp/fourier.hpp"
#include "hvp/geometry.hpp"
#include "hvp/measure.hpp"
#include "hvp/numeric.hpp"
#include "hvp/oscillatory.hpp"

using namespace hvp;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double rel_gap(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

HPoint random_point(SplitMix64& rng, double box = 2.0) {
    return {rng.uniform(-box, box), rng.uniform(-box, box), rng.uniform(-box, box)};
}

// ---------------------------------------------------------------- 1

Outcome criterion1() {
    SplitMix64 rng(11);
    double worst = 0.0;
    auto track = [&](double err) { worst = std::max(worst, err); };
    for (int i = 0; i < 10000; ++i) {
        const HPoint p = random_point(rng), q = random_point(rng), r = random_point(rng);
        const double scale =
            std::max({1.0, koranyi_norm(p), koranyi_norm(q), koranyi_norm(r)});

        const HPoint assoc_l = group_mul(group_mul(p, q), r);
        const HPoint assoc_r = group_mul(p, group_mul(q, r));
        track(std::fabs(assoc_l.t - assoc_r.t) / scale);
        const HPoint pinv = group_mul(p, group_inv(p));
        track((std::fabs(pinv.x) + std::fabs(pinv.y) + std::fabs(pinv.t)) / scale);

        const double d = dh(p, q);
        track(std::fabs(dh(q, p) - d) / std::max(d, 1e-30));
        const HPoint g = random_point(rng);
        track(std::fabs(dh(group_mul(g, p), group_mul(g, q)) - d) / std::max(d, 1e-30));
        track(std::max(0.0, d - dh(p, r) - dh(r, q)) / std::max(d, 1e-30));

        const double lam = rng.uniform(0.2, 4.0);
        track(rel_gap(koranyi_norm(dilate(lam, p)), lam * koranyi_norm(p)));
        track(rel_gap(dh(dilate(lam, p), dilate(lam, q)), lam * d));

        const Angle th(rng.uniform(0.0, kPi));
        const HPoint P1 = vertical_proj(th, p);
        const HPoint P2 = vertical_proj(th, P1);
        track((std::fabs(P2.x - P1.x) + std::fabs(P2.y - P1.y) + std::fabs(P2.t - P1.t)) /
              scale);
        const Vec2 onto = planar_proj(th, p.z()).onto;
        const HPoint quot = group_mul(p, group_inv(HPoint{onto.x, onto.y, 0.0}));
        track((std::fabs(P1.x - quot.x) + std::fabs(P1.y - quot.y) +
               std::fabs(P1.t - quot.t)) /
              scale);
    }
    return {worst <= 1e-10,
            fmt("group/metric/projection identities on 1e4 samples, worst rel err %.2e "
                "(tol 1e-10)",
                worst)};
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
    const DiscreteMeasure mu = parabola_measure(4096, 1.0);
    const PlanarMeasure nu = pushforward_projection(mu, Angle(kPi / 4.0));
    double worst = 0.0;
    for (const PlanarPoint& p : nu.points) worst = std::max(worst, std::fabs(p.t));
    return {worst <= 1e-12,
            fmt("projected square curve at the diagonal angle: max |t| = %.2e (tol 1e-12)",
                worst)};
}

// ---------------------------------------------------------------- 3

Outcome criterion3() {
    const DiscreteMeasure mu = parabola_measure(1 << 16, 1.0);
    std::vector<double> deltas;
    for (int k = 4; k <= 9; ++k) deltas.push_back(std::pow(2.0, -k));
    const std::vector<Angle> thetas = {Angle(0.0), Angle(kPi / 2.0), Angle(1.0),
                                       Angle(kPi / 4.0)};
    const auto prof = projected_dimension_profile(mu, thetas, deltas);
    bool ok = true;
    std::string detail;
    for (size_t i = 0; i < prof.size(); ++i) {
        const double want = (i == 3) ? 1.0 : 2.0;
        const double band = (i == 3) ? 0.2 : 0.3;
        const auto& est = prof[i].second;
        const bool good = std::fabs(est.slope - want) <= band && est.r2 >= 0.98;
        ok = ok && good;
        detail += fmt("%stheta=%.3f slope=%.3f r2=%.4f", i ? ", " : "", prof[i].first,
                      est.slope, est.r2);
    }
    return {ok, detail};
}

// ---------------------------------------------------------------- 4

Outcome criterion4() {
    const AngleDomain dom = excluded_domain(Angle(kPi / 2.0), 0.15, 2);
    const SweepReport a =
        energy_theta_sweep(parabola_measure(1 << 12, 1.0), 1.75, dom, 33);
    const SweepReport b =
        energy_theta_sweep(parabola_measure(1 << 13, 1.0), 1.75, dom, 33);
    const double change = rel_gap(b.integral, a.integral);

    const AngleDomain full = excluded_domain(Angle(kPi / 2.0), 0.0, 2);
    auto max_med = [&](int n, double& mx, double& med) {
        const SweepReport r = energy_theta_sweep(parabola_measure(n, 1.0), 1.75, full, 66);
        std::vector<double> e = r.energies;
        std::sort(e.begin(), e.end());
        mx = e.back();
        med = e[e.size() / 2];
    };
    double mx1, md1, mx2, md2;
    max_med(1 << 12, mx1, md1);
    max_med(1 << 13, mx2, md2);

    const bool ok = change <= 0.10 && mx1 >= 10.0 * md1 && mx2 >= 10.0 * md2 && mx2 > mx1;
    return {ok, fmt("excluded-domain integral %.4f -> %.4f (change %.2f%%, tol 10%%); "
                    "full-circle max/median %.0fx -> %.0fx, max grows %.0f -> %.0f",
                    a.integral, b.integral, 100.0 * change, mx1 / md1, mx2 / md2, mx1,
                    mx2)};
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
    SplitMix64 rng(55);
    auto rand_pair = [&](double box) {
        return PointPair{random_point(rng, box), random_point(rng, box)};
    };
    double worst_id = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const PointPair pr = rand_pair(1.5);
        const Angle th(rng.uniform(0.0, kPi));
        worst_id = std::max(worst_id, std::fabs(phase_F(th, pr) - phase_F_alt(th, pr)));
    }
    double worst_fd = 0.0;
    int checked = 0;
    const double h = 1e-5;
    while (checked < 10000) {
        const PointPair pr = rand_pair(1.5);
        if (norm(pr.z_diff()) < 0.1 || norm(pr.z_sum()) < 0.1) continue;
        const double th = rng.uniform(0.0, kPi);
        const double fd =
            (phase_F(Angle(th + h), pr) - phase_F(Angle(th - h), pr)) / (2.0 * h);
        const double an = phase_F_prime(Angle(th), pr);
        worst_fd = std::max(worst_fd, std::fabs(an - fd) / std::max(1.0, std::fabs(an)));
        ++checked;
    }
    double worst_v = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const PointPair pr{{0.0, rng.uniform(0.2, 2.0), rng.uniform(-1, 1)},
                           {0.0, -rng.uniform(0.2, 2.0), rng.uniform(-1, 1)}};
        const double th = rng.uniform(0.0, kPi);
        const double want = 0.5 * norm(pr.z_diff()) * norm(pr.z_sum()) *
                            std::fabs(std::cos(2.0 * th));
        worst_v =
            std::max(worst_v, std::fabs(std::fabs(phase_F_prime(Angle(th), pr)) - want));
    }
    const bool ok = worst_id <= 1e-12 && worst_fd <= 1e-7 && worst_v <= 1e-10;
    return {ok, fmt("offset identity %.1e (tol 1e-12); derivative vs differences %.1e "
                    "(tol 1e-7); vertical closed form %.1e (tol 1e-10)",
                    worst_id, worst_fd, worst_v)};
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
    const AngleDomain dom = excluded_domain(Angle(0.0), 0.15, 2);
    SplitMix64 rng(424242);
    double slope_lo = 9.0, slope_hi = -9.0, worst_ratio = 0.0;
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int ell = 2 + int(rng.next_u64() % 4);
        const double R = 0.8 + 0.8 * rng.next_double();
        const double half = std::pow(2.0, -ell) / 2.0;
        const double yp = R + half, yq = R - half;
        const double C = (yp * yp - yq * yq) / 4.0;
        const double A = (2.0 * rng.next_double() - 1.0) * 0.7 * C;
        const PointPair pr{HPoint{0.0, yp, A}, HPoint{0.0, yq, 0.0}};
        std::vector<double> lx, ly;
        for (int k = 9; k <= 13; ++k) {
            const double delta = std::pow(2.0, -k);
            const double m = sublevel_measure(pr, delta, dom, 4096);
            const double bound = 20.0 * delta * std::pow(2.0, ell) / R;
            if (m > bound) ++bad;
            worst_ratio = std::max(worst_ratio, m / bound);
            if (m > 0.0) {
                lx.push_back(-double(k));
                ly.push_back(std::log2(m));
            }
        }
        if (lx.size() < 5) {
            ++bad;
            continue;
        }
        const LineFit fit = least_squares(lx, ly);
        slope_lo = std::min(slope_lo, fit.slope);
        slope_hi = std::max(slope_hi, fit.slope);
        if (fit.slope < 0.9 || fit.slope > 1.1) ++bad;
    }
    return {bad == 0,
            fmt("100 vertical pairs: slopes in [%.4f, %.4f] (want 1.0 +- 0.1), worst "
                "value/bound %.3f (want <= 1)",
                slope_lo, slope_hi, worst_ratio)};
}

// ---------------------------------------------------------------- 7

Outcome criterion7() {
    const AngleDomain dom = excluded_domain(Angle(0.0), 0.15, 4);
    const DiscreteMeasure mu = parabola_measure(1024, 1.0);
    std::vector<double> js, ys;
    for (int j = 0; j <= 6; ++j) {
        const double v = lhs_main_inequality(mu, j, dom, 4e-3);
        js.push_back(double(j));
        ys.push_back(std::log2(v));
    }
    const LineFit fit = least_squares(js, ys);

    // direct 3D average of the oscillating kernel over angle x both scale
    // boxes, against the factorized quadrature on one separated pair
    const PointPair pr{{0.2, 0.4, 0.08}, {0.2, -0.3, 0.01}};
    const int j = 2;
    const double L1 = 4.0, L2 = 16.0;
    const double J_quad = inner_triple_integral(pr, j, dom, 1e-5);
    SplitMix64 rng(20250817);
    const auto iv = dom.intervals();
    double acc = 0.0;
    const long long N = 400000000;
    const double total = dom.total_length();
    for (long long it = 0; it < N; ++it) {
        double u = total * rng.next_double();
        double th = iv.back().first;
        for (const auto& [lo, hi] : iv) {
            if (u <= hi - lo) {
                th = lo + u;
                break;
            }
            u -= hi - lo;
        }
        const double r = L1 * (2.0 * rng.next_double() - 1.0);
        const double rho = L2 * (2.0 * rng.next_double() - 1.0);
        const Angle ang(th);
        const double c1 = dot(ang.normal(), pr.z_diff());
        acc += std::cos(2.0 * kPi * (r * c1 + rho * phase_F(ang, pr)));
    }
    const double J_mc = std::fabs(total * 4.0 * L1 * L2 * acc / double(N));
    const double mc_gap = rel_gap(J_mc, J_quad);

    const bool ok = fit.slope <= 1.5 && mc_gap <= 0.01;
    return {ok, fmt("pair-sum ladder j=0..6 fitted exponent %.4f (want <= 1.5); "
                    "3D average vs factorized quadrature %.4f vs %.4f (gap %.2f%%, "
                    "tol 1%%)",
                    fit.slope, J_mc, J_quad, 100.0 * mc_gap)};
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
    const FourierGrid grid;
    bool ok = true;
    std::string detail;
    for (double s : {1.5, 2.0, 2.5}) {
        const FourierReport rep = fourier_fs_check(s, grid, default_band_samples(grid));
        const bool pos = rep.lattice_positivity_violations == 0;
        const bool finite = std::isfinite(rep.lattice_ratio_min) &&
                            std::isfinite(rep.lattice_ratio_max) &&
                            rep.lattice_ratio_min > 0.0;
        ok = ok && pos && finite;
        detail += fmt("s=%.1f: %zu positivity violations, ratio in [%.3f, %.3f]; ", s,
                      rep.lattice_positivity_violations, rep.lattice_ratio_min,
                      rep.lattice_ratio_max);
    }

    PlanarMeasure pair;
    pair.points = {{0.0, 0.0}, {1.0, 0.25}};
    pair.weights = {0.5, 0.5};
    PlanarMeasure row;
    for (int k = -4; k <= 4; ++k) {
        row.points.push_back({double(k) / 4.0, 0.0});
        row.weights.push_back(1.0 / 9.0);
    }
    PlanarMeasure blob;
    double tot = 0.0;
    for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
            blob.points.push_back({double(k) / 4.0, double(l) / 4.0});
            blob.weights.push_back(std::exp(-0.25 * double(k * k + l * l)));
            tot += blob.weights.back();
        }
    for (double& w : blob.weights) w /= tot;

    double worst = 0.0;
    for (double s : {1.5, 2.0, 2.5})
        for (const PlanarMeasure* nu : {&pair, &row, &blob}) {
            const PlancherelResult pr = plancherel_check(*nu, s, grid);
            worst = std::max(worst, pr.lhs / pr.rhs);
        }
    ok = ok && worst <= 1.1;
    detail += fmt("energy identity on 3 measures x 3 exponents: worst lhs/rhs %.4f "
                  "(want <= 1.1)",
                  worst);
    return {ok, detail};
}

// ---------------------------------------------------------------- 9

Outcome criterion9() {
    bool ok = true;
    double worst = 0.0;
    for (int ell = 2; ell <= 8; ++ell) {
        const double count = double(cylinder_ball_cover_count(ell, 2000000));
        const double ratio = count / (32.0 * std::pow(2.0, 2 * ell));
        worst = std::max(worst, ratio);
        ok = ok && ratio <= 1.0;
    }
    return {ok, fmt("net sizes for ell=2..8: worst count / (32 * 4^ell) = %.3f "
                    "(want <= 1)",
                    worst)};
}

// ---------------------------------------------------------------- 10

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion10() {
    const std::string cli = HVP_CLI_PATH;
    const fs::path base = fs::temp_directory_path() / "hvp_acceptance_repro";
    fs::remove_all(base);
    fs::create_directories(base);

    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"project", "project --measure parabola:n=512,beta=1 --theta 1.0 --seed 3"},
        {"sweep",
         "sweep --measure parabola:n=256,beta=1 --s 1.75 --epsilon 0.15 --modulus 2 "
         "--n-theta 16 --seed 3"},
        {"dims",
         "dims --measure parabola:n=4096,beta=1 --n-theta 8 "
         "--deltas 0.125,0.0625,0.03125,0.015625 --seed 3"},
        {"oscillatory",
         "oscillatory --measure parabola:n=48,beta=1 --j-min 0 --j-max 2 --tol 1e-3 "
         "--seed 3"},
        {"fourier-check", "fourier-check --s 2 --extent 32 --resolution 0.25 --seed 3"},
    };

    bool ok = true;
    std::string detail;
    int compared_total = 0;
    for (const auto& [name, args] : cmds) {
        // rerun the exact same command (same --out) and byte-compare the tables
        // against an in-memory snapshot of the first run
        const fs::path dir = base / name;
        auto run_into = [&](const std::string& threads) {
            const std::string cmd = cli + " " + args + " --threads " + threads +
                                    " --out " + dir.string() + " >/dev/null 2>&1";
            return std::system(cmd.c_str()) == 0;
        };
        auto tables = [&]() {
            std::map<std::string, std::string> t;
            for (const auto& entry : fs::directory_iterator(dir)) {
                const auto ext = entry.path().extension();
                if (ext != ".csv" && ext != ".json") continue;
                t[entry.path().filename().string()] = slurp(entry.path());
            }
            return t;
        };
        if (!run_into("1")) {
            ok = false;
            detail += name + ": command failed; ";
            continue;
        }
        const auto ref = tables();
        if (ref.empty()) {
            ok = false;
            detail += name + ": produced no tables; ";
            continue;
        }
        if (!run_into("1") || tables() != ref) {
            ok = false;
            detail += name + ": rerun differs; ";
        }
        if (!run_into("8") || tables() != ref) {
            ok = false;
            detail += name + ": thread count changes output; ";
        }
        compared_total += int(ref.size());
    }
    fs::remove_all(base);
    detail += fmt("%d tables byte-identical across rerun and 1 vs 8 workers",
                  compared_total);
    return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 10; ++i) which.push_back(i);

    const std::function<Outcome()> checks[10] = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, criterion10,
    };

    int failures = 0;
    for (int n : which) {
        if (n < 1 || n > 10) {
            std::fprintf(stderr, "unknown criterion %d\n", n);
            return 2;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome res;
        try {
            res = checks[n - 1]();
        } catch (const std::exception& e) {
            res = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%.1fs)\n", res.pass ? "PASS" : "FAIL", n,
                    res.detail.c_str(), secs);
        std::fflush(stdout);
        if (!res.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
