#include "hvp/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "hvp/errors.hpp"
#include "hvp/numeric.hpp"

namespace hvp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int PointPair::dyadic_index() const {
    const double d = norm(z_diff());
    if (d == 0.0)
        throw std::invalid_argument("dyadic_index: coincident horizontal parts");
    return int(std::floor(-std::log2(d)));
}

double phase_F(Angle theta, const PointPair& pair) {
    const PlanarSplit sp = planar_proj(theta, pair.p.z());
    const PlanarSplit sq = planar_proj(theta, pair.q.z());
    return pair.p.t - pair.q.t +
           0.5 * omega(sp.onto, pair.p.z()) - 0.5 * omega(sq.onto, pair.q.z());
}

double phase_F_alt(Angle theta, const PointPair& pair) {
    const Vec2 u = pair.z_diff();
    const Vec2 w = pair.z_sum();
    const PlanarSplit su = planar_proj(theta, u);
    return pair.p.t - pair.q.t + 0.5 * omega(pair.p.z(), pair.q.z()) -
           0.5 * omega(su.ortho, w);
}

double phase_F_prime(Angle theta, const PointPair& pair) {
    const Vec2 u = pair.z_diff();
    const Vec2 w = pair.z_sum();
    if (norm(u) == 0.0 || norm(w) == 0.0)
        throw std::invalid_argument("phase_F_prime: degenerate pair (z_p = +-z_q)");
    // d/dtheta [ <u, e> <w, i e> ] = <u, i e><w, i e> - <u, e><w, e>,
    // which absorbs the |u||w| normalization of the unit-vector form.
    const Vec2 e = theta.dir();
    const Vec2 ie = theta.normal();
    return 0.5 * (dot(u, ie) * dot(w, ie) - dot(u, e) * dot(w, e));
}

double dirichlet(double c, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("dirichlet: L must be > 0");
    const double x = kTwoPi * L * c;
    if (std::fabs(x) < 1e-5) return 2.0 * L * (1.0 - x * x / 6.0);
    return std::sin(x) / (kPi * c);
}

namespace {

// Sinusoid forms of the two factors:
//   c1(theta) = <i e_theta, z_diff> = r1 cos(theta + g1)
//   F(theta)  = A + M sin(2 theta + psi)
struct PhaseParams {
    double r1 = 0.0, g1 = 0.0;
    double A = 0.0, M = 0.0, psi = 0.0;
    double L1 = 1.0, L2 = 1.0;
};

PhaseParams make_params(const PointPair& pair, int j) {
    const Vec2 u = pair.z_diff();
    PhaseParams P;
    P.r1 = norm(u);
    P.g1 = (P.r1 > 0.0) ? std::atan2(u.x, u.y) : 0.0;
    P.A = pair.p.t - pair.q.t;
    const double B = 0.5 * (pair.p.x * pair.p.y - pair.q.x * pair.q.y);
    const double C = 0.25 * ((pair.p.y * pair.p.y - pair.p.x * pair.p.x) -
                             (pair.q.y * pair.q.y - pair.q.x * pair.q.x));
    P.M = std::hypot(B, C);
    P.psi = (P.M > 0.0) ? std::atan2(B, C) : 0.0;
    P.L1 = std::ldexp(1.0, j);
    P.L2 = std::ldexp(1.0, 2 * j);
    return P;
}

double eval_c1(const PhaseParams& P, double th) { return P.r1 * std::cos(th + P.g1); }
double eval_c1p(const PhaseParams& P, double th) { return -P.r1 * std::sin(th + P.g1); }
double eval_F(const PhaseParams& P, double th) { return P.A + P.M * std::sin(2.0 * th + P.psi); }
double eval_Fp(const PhaseParams& P, double th) { return 2.0 * P.M * std::cos(2.0 * th + P.psi); }

double dsinc(double c, double L) {
    const double x = kTwoPi * L * c;
    if (std::fabs(x) < 1e-5) return 2.0 * L * (1.0 - x * x / 6.0);
    return std::sin(x) / (kPi * c);
}

// Moments int_{-d}^{d} u^k cos(phi0 + w u) du for k = 0,1,2, with series
// fallbacks for small w d.
struct Moments {
    double i0, i1, i2;
};

Moments cos_moments(double phi0, double w, double d) {
    const double c0 = std::cos(phi0), s0 = std::sin(phi0);
    const double wd = w * d;
    Moments m;
    if (std::fabs(wd) < 1e-4) {
        const double d3 = d * d * d;
        m.i0 = c0 * (2.0 * d - wd * wd * d / 3.0);
        m.i1 = -s0 * (2.0 / 3.0) * w * d3;
        m.i2 = c0 * (2.0 / 3.0) * d3;
        return m;
    }
    const double sw = std::sin(wd), cw = std::cos(wd);
    m.i0 = 2.0 * c0 * sw / w;
    m.i1 = -2.0 * s0 * (sw - wd * cw) / (w * w);
    m.i2 = 2.0 * c0 * ((wd * wd - 2.0) * sw + 2.0 * wd * cw) / (w * w * w);
    return m;
}

struct Quadrature {
    PhaseParams P;
    long evals = 0;
    long max_evals = 0;
    double coarse_total = 0.0;  // running |value| scale for budget allocation

    double integrand(double th) {
        ++evals;
        return dsinc(eval_c1(P, th), P.L1) * dsinc(eval_F(P, th), P.L2);
    }

    void check_budget(double partial) const {
        if (evals > max_evals)
            throw NumericalError(
                "inner_triple_integral: quadrature did not converge (estimate=" +
                format_g17(partial) + ", evals=" + std::to_string(evals) + ")");
    }

    // One linear-phase, quadratic-amplitude panel for both cosine branches.
    double filon_panel(double a, double b) {
        const double m = 0.5 * (a + b), d = 0.5 * (b - a);
        const double c1a = eval_c1(P, a), c1m = eval_c1(P, m), c1b = eval_c1(P, b);
        const double Fa = eval_F(P, a), Fm = eval_F(P, m), Fb = eval_F(P, b);
        evals += 3;
        const double ga = 1.0 / (2.0 * kPi * kPi * c1a * Fa);
        const double gm = 1.0 / (2.0 * kPi * kPi * c1m * Fm);
        const double gb = 1.0 / (2.0 * kPi * kPi * c1b * Fb);
        const double lin = (gb - ga) / (2.0 * d);
        const double quad = (gb + ga - 2.0 * gm) / (2.0 * d * d);

        const double base1 = kTwoPi * P.L1, base2 = kTwoPi * P.L2;
        const double c1pm = eval_c1p(P, m), Fpm = eval_Fp(P, m);
        double total = 0.0;
        for (int sgn = -1; sgn <= 1; sgn += 2) {
            const double phi0 = base1 * c1m + sgn * base2 * Fm;
            const double w = base1 * c1pm + sgn * base2 * Fpm;
            const Moments mo = cos_moments(phi0, w, d);
            const double val = gm * mo.i0 + lin * mo.i1 + quad * mo.i2;
            total += (sgn < 0) ? val : -val;
        }
        return total;
    }

    // Halving refinement; |v2 - v1| overestimates the error of v2 by the
    // Richardson factor 2^p - 1 >= 7, so accept with that slack.
    double refine_filon(double a, double b, double v1, double abs_tol, int depth) {
        const double m = 0.5 * (a + b);
        const double vl = filon_panel(a, m), vr = filon_panel(m, b);
        const double v2 = vl + vr;
        if (std::fabs(v2 - v1) <= 6.0 * abs_tol || depth >= 26) {
            check_budget(v2);
            return v2;
        }
        return refine_filon(a, m, vl, 0.5 * abs_tol, depth + 1) +
               refine_filon(m, b, vr, 0.5 * abs_tol, depth + 1);
    }

    // Single-phase panel for pole windows: one factor is inside its small-
    // argument window (smooth), the other supplies the oscillation. The
    // integrand is written u(th) sin(Phi(th)) with Phi = 2 pi L f and
    // u = dsinc(other factor) / (pi f); u is fitted by a quadratic, Phi is
    // linearized at the midpoint with its analytic derivative.
    double filon_single(double a, double b, bool phase_is_F) {
        const double m = 0.5 * (a + b), d = 0.5 * (b - a);
        double u[3], f[2];
        const double ths[3] = {a, m, b};
        for (int i = 0; i < 3; ++i) {
            const double c1 = eval_c1(P, ths[i]), F = eval_F(P, ths[i]);
            u[i] = phase_is_F ? dsinc(c1, P.L1) / (kPi * F)
                              : dsinc(F, P.L2) / (kPi * c1);
            if (i == 1) {
                f[0] = phase_is_F ? F : c1;
                f[1] = phase_is_F ? eval_Fp(P, m) : eval_c1p(P, m);
            }
        }
        evals += 3;
        const double L = phase_is_F ? P.L2 : P.L1;
        const double lin = (u[2] - u[0]) / (2.0 * d);
        const double quad = (u[2] + u[0] - 2.0 * u[1]) / (2.0 * d * d);
        const Moments mo =
            cos_moments(kTwoPi * L * f[0] - kPi / 2.0, kTwoPi * L * f[1], d);
        return u[1] * mo.i0 + lin * mo.i1 + quad * mo.i2;
    }

    double refine_single(double a, double b, double v1, bool phase_is_F,
                         double abs_tol, int depth) {
        const double m = 0.5 * (a + b);
        const double vl = filon_single(a, m, phase_is_F);
        const double vr = filon_single(m, b, phase_is_F);
        const double v2 = vl + vr;
        if (std::fabs(v2 - v1) <= 6.0 * abs_tol || depth >= 26) {
            check_budget(v2);
            return v2;
        }
        return refine_single(a, m, vl, phase_is_F, 0.5 * abs_tol, depth + 1) +
               refine_single(m, b, vr, phase_is_F, 0.5 * abs_tol, depth + 1);
    }

    // A pole window where exactly one factor oscillates: panel by the
    // oscillating factor's curvature, quadratic amplitude for the smooth one.
    double window_single(double a, double b, bool phase_is_F, double abs_tol) {
        if (b <= a) return 0.0;
        const double curv =
            kTwoPi * (phase_is_F ? 4.0 * P.L2 * P.M : P.L1 * P.r1);
        const double base_h = std::sqrt(0.5 / std::max(curv, 1e-12));
        const int n = std::max(1, int(std::ceil((b - a) / base_h)));
        const double h = (b - a) / n;
        const double tol_panel = abs_tol / n;
        std::vector<double> parts(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double pa = a + i * h, pb = a + (i + 1) * h;
            parts[std::size_t(i)] = refine_single(
                pa, pb, filon_single(pa, pb, phase_is_F), phase_is_F, tol_panel, 0);
        }
        return pairwise_sum(parts);
    }

    // Oscillation-resolved panels + adaptive Simpson; for pole windows and
    // low-frequency stretches where the product form is evaluated directly.
    double simpson_osc(double a, double b, double abs_tol) {
        if (b <= a) return 0.0;
        const double speed = P.L1 * P.r1 + 2.0 * P.L2 * P.M;  // |Phi'| / 2pi
        const int n = std::max(1, int(std::ceil((b - a) * std::max(1.0, speed))));
        const double h = (b - a) / n;
        const double tol_panel = abs_tol / n;
        std::vector<double> vals(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            vals[std::size_t(i)] = adaptive_simpson(
                [this](double th) { return integrand(th); },
                a + i * h, a + (i + 1) * h, tol_panel, 22);
            check_budget(0.0);
        }
        return pairwise_sum(vals);
    }
};

struct CutPoint {
    double th;
    bool pole_c1 = false;
    bool pole_F = false;
};

// Cut positions inside (a, b): zeros of c1 and of F.
std::vector<CutPoint> find_cuts(const PhaseParams& P, double a, double b) {
    std::vector<CutPoint> cuts;
    if (P.r1 > 0.0) {
        // cos(th + g1) = 0 at th = pi/2 - g1 + k pi
        const double base = kPi / 2.0 - P.g1;
        for (long k = long(std::floor((a - base) / kPi)) - 1;; ++k) {
            const double th = base + double(k) * kPi;
            if (th >= b) break;
            if (th > a) cuts.push_back({th, true, false});
        }
    }
    if (P.M > 0.0 && std::fabs(P.A) <= P.M) {
        // sin(x) = -A/M at x = x0 + 2k pi and pi - x0 + 2k pi, x = 2 th + psi
        const double x0 = std::asin(std::clamp(-P.A / P.M, -1.0, 1.0));
        for (double root : {x0, kPi - x0}) {
            for (long k = long(std::floor((2.0 * a + P.psi - root) / kTwoPi)) - 1;; ++k) {
                const double th = (root + double(k) * kTwoPi - P.psi) / 2.0;
                if (th >= b) break;
                if (th > a) cuts.push_back({th, false, true});
            }
        }
    }
    std::sort(cuts.begin(), cuts.end(),
              [](const CutPoint& u, const CutPoint& v) { return u.th < v.th; });
    // Merge coincident cuts (a shared zero of both factors).
    std::vector<CutPoint> merged;
    for (const CutPoint& c : cuts) {
        if (!merged.empty() && c.th - merged.back().th < 1e-13) {
            merged.back().pole_c1 |= c.pole_c1;
            merged.back().pole_F |= c.pole_F;
        } else {
            merged.push_back(c);
        }
    }
    return merged;
}

// Half-width of the direct window around a pole, sized so the sinc argument
// of the vanishing factor stays below ~2 radians outside it.
double pole_window(const PhaseParams& P, const CutPoint& cut) {
    constexpr double kArg = 2.0;
    double w = 0.0;
    if (cut.pole_c1) {
        // |c1'| = r1 at a zero of c1
        w = std::max(w, kArg / (kTwoPi * P.L1 * P.r1));
    }
    if (cut.pole_F) {
        const double fp = std::fabs(eval_Fp(P, cut.th));
        const double fpp = 4.0 * std::fabs(P.A);  // |F''| at a zero of F
        double wf = std::numeric_limits<double>::infinity();
        if (fp > 0.0) wf = kArg / (kTwoPi * P.L2 * fp);
        if (fpp > 0.0) wf = std::min(wf, std::sqrt(kArg / (kPi * P.L2 * fpp)));
        if (!std::isfinite(wf)) wf = 0.1;  // F locally flat at 0: fully direct
        w = std::max(w, wf);
    }
    return w;
}

// Smallest |c1| on an interval containing no zero of c1: |cos| is unimodal
// between consecutive zeros, so the minimum sits at an endpoint.
double min_abs_c1(const PhaseParams& P, double a, double b) {
    return std::min(std::fabs(eval_c1(P, a)), std::fabs(eval_c1(P, b)));
}

// Smallest |F| on an interval containing no zero of F: endpoints plus the
// interior extrema of the sinusoid (2 th + psi = pi/2 + k pi).
double min_abs_F(const PhaseParams& P, double a, double b) {
    double m = std::min(std::fabs(eval_F(P, a)), std::fabs(eval_F(P, b)));
    if (P.M > 0.0) {
        const double k0 = std::ceil((2.0 * a + P.psi - kPi / 2.0) / kPi);
        for (double k = k0;; k += 1.0) {
            const double th = (kPi / 2.0 + k * kPi - P.psi) / 2.0;
            if (th > b) break;
            if (th >= a) m = std::min(m, std::fabs(eval_F(P, th)));
        }
    }
    return m;
}

// Upper bound for |integral over [a, b]| away from both factors' zeros:
// |dsinc(c, L)| <= 1/(pi |c|) uniformly in L, so the product integrand is
// bounded by the L-free envelope 1/(pi^2 |c1| |F|).
double envelope_bound(const PhaseParams& P, double a, double b) {
    const double m1 = min_abs_c1(P, a, b), m2 = min_abs_F(P, a, b);
    if (m1 <= 0.0 || m2 <= 0.0) return std::numeric_limits<double>::infinity();
    return (b - a) / (kPi * kPi * m1 * m2);
}

double integrate_interval(Quadrature& Q, double a, double b, double abs_tol) {
    const PhaseParams& P = Q.P;

    // Constant-factor fast paths.
    if (P.r1 == 0.0)
        return 2.0 * P.L1 * dsinc(P.A, P.L2) * (b - a);
    if (P.M == 0.0)  // F constant: the product integrand is cheap and slow
        return Q.simpson_osc(a, b, abs_tol);

    const std::vector<CutPoint> cuts = find_cuts(P, a, b);

    // Segment list with the pole cut (if any) at each interior boundary.
    struct Seg { double a, b; double wa, wb; CutPoint ca, cb; };
    std::vector<Seg> segs;
    double prev = a;
    double prev_w = 0.0;  // window extending right from prev
    CutPoint prev_cut{};
    for (const CutPoint& c : cuts) {
        const double w = pole_window(P, c);
        segs.push_back({prev, c.th, prev_w, w, prev_cut, c});
        prev = c.th;
        prev_w = w;
        prev_cut = c;
    }
    segs.push_back({prev, b, prev_w, 0.0, prev_cut, CutPoint{}});

    // A window where exactly one factor is at small argument keeps the other
    // factor's oscillation: integrate it with the single-phase panels.
    auto window_part = [&](double lo, double hi, const CutPoint& c, double wt) {
        if (c.pole_c1 && !c.pole_F) return Q.window_single(lo, hi, true, wt);
        if (c.pole_F && !c.pole_c1) return Q.window_single(lo, hi, false, wt);
        return Q.simpson_osc(lo, hi, wt);
    };

    const double curvature = kTwoPi * (P.L1 * P.r1 + 4.0 * P.L2 * P.M);
    const double base_h = std::sqrt(0.5 / curvature);

    std::vector<double> parts;
    for (const Seg& s : segs) {
        if (s.b - s.a < 1e-14) continue;
        const double lo = std::min(s.a + s.wa, s.b);
        const double hi = std::max(lo, s.b - s.wb);
        const double seg_tol = abs_tol * (s.b - s.a) / (b - a);
        if (hi <= lo) {
            // Windows swallow the whole segment (possibly overlapping).
            parts.push_back(Q.simpson_osc(s.a, s.b, seg_tol));
            continue;
        }
        if (lo > s.a) parts.push_back(window_part(s.a, lo, s.ca, seg_tol / 3.0));
        if (s.b > hi) parts.push_back(window_part(hi, s.b, s.cb, seg_tol / 3.0));
        // The zone between windows is free of zeros of either factor; drop it
        // (or single panels) when the envelope already certifies the budget.
        if (envelope_bound(P, lo, hi) <= seg_tol / 3.0) continue;
        const int n = std::max(1, int(std::ceil((hi - lo) / base_h)));
        const double h = (hi - lo) / n;
        const double tol_panel = (seg_tol / 3.0) / n;
        for (int i = 0; i < n; ++i) {
            const double pa = lo + i * h, pb = lo + (i + 1) * h;
            if (envelope_bound(P, pa, pb) <= tol_panel) continue;
            parts.push_back(Q.refine_filon(pa, pb, Q.filon_panel(pa, pb), tol_panel, 0));
        }
    }
    return pairwise_sum(parts);
}

}  // namespace

namespace {

// One-pass domain integral at a fixed absolute tolerance, split across the
// intervals in proportion to their length.
double triple_integral_abs(const PointPair& pair, int j, const AngleDomain& domain,
                           double abs_tol) {
    Quadrature Q;
    Q.P = make_params(pair, j);
    Q.max_evals = 40'000'000;
    const double total = domain.total_length();
    std::vector<double> parts;
    for (auto [lo, hi] : domain.intervals())
        parts.push_back(integrate_interval(Q, lo, hi, abs_tol * (hi - lo) / total));
    return pairwise_sum(parts);
}

}  // namespace

double inner_triple_integral(const PointPair& pair, int j, const AngleDomain& domain,
                             double tol) {
    if (j < 0 || j > 12)
        throw std::invalid_argument("inner_triple_integral: j must lie in [0, 12]");
    if (domain.empty())
        throw std::invalid_argument("inner_triple_integral: empty domain");
    if (!(tol > 0.0) || tol > 0.1)
        throw std::invalid_argument("inner_triple_integral: tol must lie in (0, 0.1]");

    // First pass with a scale-free absolute tolerance to fix the magnitude,
    // second pass only if the requested relative tolerance demands better.
    const double L1 = std::ldexp(1.0, j), L2 = std::ldexp(1.0, 2 * j);
    const double scale0 = 4.0 * L1 * L2 * domain.total_length();
    const double abs1 = tol * scale0 * 1e-4;
    double J = triple_integral_abs(pair, j, domain, abs1);

    const double target = tol * std::max(std::fabs(J), scale0 * 1e-10);
    if (target < abs1) J = triple_integral_abs(pair, j, domain, target);
    return std::fabs(J);
}

double lhs_main_inequality(const DiscreteMeasure& mu, int j, const AngleDomain& domain,
                           double tol, int threads) {
    if (mu.size() == 0) throw std::invalid_argument("lhs_main_inequality: empty measure");
    if (j < 0 || j > 8)
        throw std::invalid_argument("lhs_main_inequality: j must lie in [0, 8]");
    if (domain.empty()) throw std::invalid_argument("lhs_main_inequality: empty domain");

    const std::size_t n = mu.size();
    const double L1 = std::ldexp(1.0, j), L2 = std::ldexp(1.0, 2 * j);
    const double len = domain.total_length();

    // Diagonal pairs have both factors constant: 4 L1 L2 |domain| each.
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = mu.weights[i] * mu.weights[i] * 4.0 * L1 * L2 * len;
    const double diag_total = pairwise_sum(diag);

    // Per-pair budget: a crude pass at one tenth of the plateau scale fixes
    // each magnitude, then the pair is refined to 0.3 tol relative, floored
    // by a uniform share of the diagonal (a lower bound for the total since
    // every term is a magnitude). Summed across pairs the quadrature error
    // stays below 0.4 * tol * total.
    const double mass = pairwise_sum(mu.weights);
    const double scale0 = 4.0 * L1 * L2 * len;
    const double crude = 0.1 * scale0;
    const double floor_tol = tol * 0.1 * diag_total / std::max(mass * mass, 1e-300);

    std::vector<double> rows(n, 0.0);
    std::vector<std::string> row_err(n);
    parallel_for_blocks(n, threads, [&](std::size_t i) {
        try {
            std::vector<double> terms;
            terms.reserve(n - 1 - i);
            for (std::size_t k = i + 1; k < n; ++k) {
                const PointPair pr{mu.points[i], mu.points[k]};
                double J = triple_integral_abs(pr, j, domain, crude);
                const double want = std::max(floor_tol, tol * 0.3 * std::fabs(J));
                if (want < crude) J = triple_integral_abs(pr, j, domain, want);
                terms.push_back(mu.weights[i] * mu.weights[k] * std::fabs(J));
            }
            rows[i] = pairwise_sum(terms);
        } catch (const std::exception& e) {
            row_err[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        if (!row_err[i].empty())
            throw NumericalError("lhs_main_inequality: pair row " + std::to_string(i) +
                                 ": " + row_err[i]);

    return diag_total + 2.0 * pairwise_sum(rows);
}

double sublevel_measure(const PointPair& pair, double delta, const AngleDomain& domain,
                        int n_grid) {
    if (!(delta > 0.0)) throw std::invalid_argument("sublevel_measure: delta must be > 0");
    if (domain.empty()) throw std::invalid_argument("sublevel_measure: empty domain");
    if (n_grid < 1000) throw std::invalid_argument("sublevel_measure: n_grid must be >= 1000");

    const PhaseParams P = make_params(pair, 0);
    const double total = domain.total_length();

    double measure = 0.0;
    for (auto [lo, hi] : domain.intervals()) {
        // Split at the extrema of F so |F| - delta is piecewise monotone up
        // to one interior sign change of F' per cell... F' = 2M cos(2th+psi)
        // vanishes at th = (pi/2 + k pi - psi)/2.
        std::vector<double> nodes = {lo, hi};
        if (P.M > 0.0) {
            const double base = (kPi / 2.0 - P.psi) / 2.0;
            for (long k = long(std::floor((lo - base) / (kPi / 2.0))) - 1;; ++k) {
                const double th = base + double(k) * (kPi / 2.0);
                if (th >= hi) break;
                if (th > lo) nodes.push_back(th);
            }
        }
        const int base_n = std::max(2, int(std::ceil(double(n_grid) * (hi - lo) / total)));
        for (int i = 1; i < base_n; ++i)
            nodes.push_back(lo + (hi - lo) * double(i) / base_n);
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

        auto inside = [&](double th) {
            return std::fabs(eval_F(P, th)) - delta;
        };
        // Bisection for the crossing of H = |F| - delta in (a, b].
        auto crossing = [&](double a, double b, double Ha) {
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                if ((inside(m) <= 0.0) == (Ha <= 0.0)) a = m; else b = m;
            }
            return 0.5 * (a + b);
        };
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const double a = nodes[i], b = nodes[i + 1];
            const double Ha = inside(a), Hb = inside(b);
            if (Ha <= 0.0 && Hb <= 0.0) {
                measure += b - a;
            } else if (Ha <= 0.0 || Hb <= 0.0) {
                const double c = crossing(a, b, Ha);
                measure += (Ha <= 0.0) ? c - a : b - c;
            }
            // Both endpoints outside: cells are narrower than a quarter
            // period past the extrema split, so no interior dip is missed
            // once base_n >= 16 per unit length; extrema nodes bound dips.
        }
    }
    return measure;
}

std::int64_t cylinder_ball_cover_count(int ell, std::int64_t n_samples) {
    if (ell < 0 || ell > 10)
        throw std::invalid_argument("cylinder_ball_cover_count: ell must lie in [0, 10]");
    if (n_samples < 1000)
        throw std::invalid_argument("cylinder_ball_cover_count: need >= 1000 samples");

    const double r = std::ldexp(1.0, -ell);
    const double r2 = r * r;

    // Anisotropic sample grid: z on a (r/2)-grid over the disk, t on a step
    // chosen from the sample budget, at most r^2/4.
    const int nz = 2;  // z samples per radius
    std::vector<Vec2> zs;
    for (int ix = -nz; ix <= nz; ++ix)
        for (int iy = -nz; iy <= nz; ++iy) {
            const Vec2 z{double(ix) * r / nz, double(iy) * r / nz};
            if (norm(z) <= r * (1.0 + 1e-12)) zs.push_back(z);
        }
    const std::int64_t budget_t = std::max<std::int64_t>(5, n_samples / std::int64_t(zs.size()));
    const std::int64_t full_t = 2 * std::int64_t(std::llround(0.25 / (r2 / 4.0))) + 1;
    const std::int64_t nt = std::min(budget_t, full_t);
    const double tstep = 0.5 / double(nt - 1);

    struct Key {
        std::int64_t a, b, c;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = 1469598103934665603ull;
            for (std::int64_t v : {k.a, k.b, k.c}) {
                h ^= std::uint64_t(v);
                h *= 1099511628211ull;
            }
            return std::size_t(h);
        }
    };
    std::unordered_map<Key, std::vector<HPoint>, KeyHash> net;
    auto key_of = [&](const HPoint& p) {
        return Key{std::int64_t(std::floor(p.x / r)), std::int64_t(std::floor(p.y / r)),
                   std::int64_t(std::floor(p.t / r2))};
    };

    std::int64_t kept = 0;
    for (std::int64_t it = 0; it < nt; ++it) {
        const double t = -0.25 + double(it) * tstep;
        for (const Vec2& z : zs) {
            const HPoint cand{z.x, z.y, t};
            if (koranyi_norm(cand) > 1.0) continue;
            const Key k = key_of(cand);
            bool separated = true;
            for (std::int64_t da = -1; da <= 1 && separated; ++da)
                for (std::int64_t db = -1; db <= 1 && separated; ++db)
                    for (std::int64_t dc = -1; dc <= 1 && separated; ++dc) {
                        const auto it2 = net.find(Key{k.a + da, k.b + db, k.c + dc});
                        if (it2 == net.end()) continue;
                        for (const HPoint& kp : it2->second)
                            if (dh(cand, kp) < r) {
                                separated = false;
                                break;
                            }
                    }
            if (separated) {
                net[k].push_back(cand);
                ++kept;
            }
        }
    }
    return kept;
}

}  // namespace hvp
