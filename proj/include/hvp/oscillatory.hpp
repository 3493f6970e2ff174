#pragma once

#include <cstdint>

#include "hvp/angle_domain.hpp"
#include "hvp/measure.hpp"

namespace hvp {

// An ordered pair of group points entering the bilinear estimates. Derived
// quantities are recomputed on demand, never cached.
struct PointPair {
    HPoint p, q;

    Vec2 z_diff() const { return p.z() - q.z(); }
    Vec2 z_sum() const { return p.z() + q.z(); }
    // Dyadic separation index: floor(-log2 |z_diff|); |z_diff| = 2^-l maps
    // to l exactly. Requires z_diff != 0.
    int dyadic_index() const;
    // Scale proxy |z_sum| / 2 (the common horizontal radius when |z_p| and
    // |z_q| are comparable and roughly aligned).
    double scale_radius() const { return 0.5 * norm(z_sum()); }
};

// Vertical offset between the projections of p and q at angle theta:
//   F(theta) = t_p - t_q + omega(pi_V(z_p), z_p)/2 - omega(pi_V(z_q), z_q)/2.
// As a function of theta this is a pure sinusoid in 2*theta.
double phase_F(Angle theta, const PointPair& pair);

// Same value through the difference identity
//   F(theta) = t_p - t_q + omega(z_p, z_q)/2
//              - omega(pi_{V^perp}(z_p - z_q), z_p + z_q)/2.
double phase_F_alt(Angle theta, const PointPair& pair);

// d/dtheta of F: with u = z_diff, w = z_sum,
//   F'(theta) = |u||w|/2 * d/dtheta( <u^, e_theta> <w^, i e_theta> ).
// Requires u != 0 and w != 0 (unit vectors u^, w^ must exist).
double phase_F_prime(Angle theta, const PointPair& pair);

// int_{-L}^{L} e^(2 pi i r c) dr = sin(2 pi L c) / (pi c), value 2L at c=0.
// Always real; |dirichlet(c,L)| <= min(2L, 1/(pi |c|)).
double dirichlet(double c, double L);

// | int_domain dirichlet(<i e_theta, z_diff>, 2^j) *
//              dirichlet(F(theta), 2^(2j)) dtheta |,
// the theta-factorized form of the triple integral of exp(2 pi i <.,.>)
// over { |rho| <= 2^(2j), theta in domain, |r| <= 2^j }. Evaluated by a
// quadrature that is adaptive in the local oscillation of both factors,
// to relative tolerance tol. j in [0, 12].
double inner_triple_integral(const PointPair& pair, int j, const AngleDomain& domain,
                             double tol);

// Sum over all ordered support pairs (diagonal included) of
//   w_i w_k * inner_triple_integral(pair(i,k), j, domain, tol).
// j in [0, 8]: the enumeration is O(n^2) pairs.
double lhs_main_inequality(const DiscreteMeasure& mu, int j, const AngleDomain& domain,
                           double tol, int threads = 1);

// Measure of { theta in domain : |F(theta)| <= delta }. Sampled on a base
// grid of about n_grid nodes split at the extrema of F, then bisected to
// locate every level crossing.
double sublevel_measure(const PointPair& pair, double delta, const AngleDomain& domain,
                        int n_grid);

// Size of a greedy 2^-ell-separated net of a deterministic sample of
// { |z| <= 2^-ell } intersected with the unit gauge ball. The sample is an
// anisotropic grid of roughly n_samples points.
std::int64_t cylinder_ball_cover_count(int ell, std::int64_t n_samples);

}  // namespace hvp
