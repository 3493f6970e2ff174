#pragma once

#include <cmath>

// Geometry of the first Heisenberg group on R^3 = C x R, with the group law
//   (z,t) * (w,s) = (z+w, t+s+omega(z,w)/2),   omega(z,w) = x1*y2 - y1*x2,
// the gauge norm ||(z,t)|| = (|z|^4 + 16 t^2)^(1/4), anisotropic dilations
// D_l(z,t) = (l z, l^2 t), and the family of vertical projections onto the
// planes V_theta^perp spanned by i*e^(i theta) and the t-axis.

namespace hvp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Symplectic form omega(a,b) = a /\ b. Bilinear, antisymmetric.
inline double omega(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

struct HPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    Vec2 z() const { return {x, y}; }
};

HPoint group_mul(const HPoint& p, const HPoint& q);
HPoint group_inv(const HPoint& p);

// (|z|^4 + 16 t^2)^(1/4); homogeneous of degree 1 under dilate().
double koranyi_norm(const HPoint& p);

// Left-invariant metric d(p,q) = ||q^-1 * p||.
double dh(const HPoint& p, const HPoint& q);

// D_lambda(z,t) = (lambda z, lambda^2 t), lambda > 0.
HPoint dilate(double lambda, const HPoint& p);

// Angle of a vertical plane, canonicalized to [0, pi).
class Angle {
  public:
    Angle() : theta_(0.0) {}
    explicit Angle(double radians);

    double radians() const { return theta_; }
    // e^(i theta): direction of the line V_theta in the plane.
    Vec2 dir() const { return {std::cos(theta_), std::sin(theta_)}; }
    // i e^(i theta): direction of the horizontal axis of V_theta^perp.
    Vec2 normal() const { return {-std::sin(theta_), std::cos(theta_)}; }

  private:
    double theta_;
};

// Euclidean splitting z = onto + ortho with onto || e^(i theta).
struct PlanarSplit {
    Vec2 onto;   // pi_{V_theta}(z)
    Vec2 ortho;  // pi_{V_theta^perp}(z)
};
PlanarSplit planar_proj(Angle theta, Vec2 z);

// Vertical projection onto V_theta^perp:
//   P(z,t) = (pi_{V_theta^perp}(z), t + omega(pi_{V_theta}(z), z)/2).
// Equals (z,t) * (pi_{V_theta}(z), 0)^-1.
HPoint vertical_proj(Angle theta, const HPoint& p);

// Coordinates (v,t) on V_theta^perp: v = <z, i e^(i theta)>.
struct PlanarPoint {
    double v = 0.0;
    double t = 0.0;
};
PlanarPoint to_plane_coords(Angle theta, const HPoint& p);

// Restriction of the group metric to plane coordinates:
//   ((dv)^4 + 16 (dt)^2)^(1/4).
// to_plane_coords is an isometry from (V_theta^perp, dh) onto this metric.
double plane_dist(PlanarPoint a, PlanarPoint b);

}  // namespace hvp
