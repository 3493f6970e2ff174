#include "hvp/geometry.hpp"

#include <numbers>
#include <stdexcept>

namespace hvp {

HPoint group_mul(const HPoint& p, const HPoint& q) {
    return {p.x + q.x, p.y + q.y, p.t + q.t + 0.5 * omega(p.z(), q.z())};
}

HPoint group_inv(const HPoint& p) { return {-p.x, -p.y, -p.t}; }

double koranyi_norm(const HPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return std::pow(r2 * r2 + 16.0 * p.t * p.t, 0.25);
}

double dh(const HPoint& p, const HPoint& q) {
    return koranyi_norm(group_mul(group_inv(q), p));
}

HPoint dilate(double lambda, const HPoint& p) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("dilate: lambda must be positive");
    return {lambda * p.x, lambda * p.y, lambda * lambda * p.t};
}

Angle::Angle(double radians) {
    constexpr double pi = std::numbers::pi;
    double r = std::fmod(radians, pi);
    if (r < 0.0) r += pi;
    if (r >= pi) r = 0.0;  // fmod rounding at the seam
    theta_ = r;
}

PlanarSplit planar_proj(Angle theta, Vec2 z) {
    const Vec2 e = theta.dir();
    const Vec2 onto = dot(z, e) * e;
    return {onto, z - onto};
}

HPoint vertical_proj(Angle theta, const HPoint& p) {
    const PlanarSplit s = planar_proj(theta, p.z());
    return {s.ortho.x, s.ortho.y, p.t + 0.5 * omega(s.onto, p.z())};
}

PlanarPoint to_plane_coords(Angle theta, const HPoint& p) {
    return {dot(p.z(), theta.normal()), p.t};
}

double plane_dist(PlanarPoint a, PlanarPoint b) {
    const double dv = a.v - b.v;
    const double dt = a.t - b.t;
    return std::pow(dv * dv * dv * dv + 16.0 * dt * dt, 0.25);
}

}  // namespace hvp
