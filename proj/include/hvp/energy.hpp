#pragma once

#include <vector>

#include "hvp/angle_domain.hpp"
#include "hvp/measure.hpp"

namespace hvp {

// Two Riesz-type kernels on the plane coordinates, both homogeneous of
// degree -s under (v,t) -> (l v, l^2 t):
//   koranyi: ((dv)^4 + 16 (dt)^2)^(-s/4), the plane metric to the power -s;
//   plain:   ((dv)^4 +    (dt)^2)^(-s/4).
// They differ by a factor of at most 2^(s/2); both are provided because
// either weight convention is defensible and results may be compared.
enum class EnergyKernel { koranyi, plain };

// The plain kernel as a function on the plane, f_s(x,t) = (x^4+t^2)^(-s/4).
double kernel_fs(double x, double t, double s);

// s-energy of a planar measure: sum over ordered distinct pairs of
// w_i w_k K(p_i - p_k). Coincident distinct-index support points make the
// energy infinite and are reported as an error with the offending indices.
double discrete_energy(const PlanarMeasure& nu, double s,
                       EnergyKernel kernel = EnergyKernel::koranyi,
                       int threads = 1);

struct SweepReport {
    double s = 0.0;
    EnergyKernel kernel = EnergyKernel::koranyi;
    AngleDomain domain;
    std::vector<double> thetas;    // midpoint grid inside the domain
    std::vector<double> energies;  // I_s of the projection at each theta
    double integral = 0.0;         // midpoint-rule integral over the domain
    int n_points = 0;
    double min_sep = 0.0;          // smallest projected separation seen
};

// I_s of the projected measure on a composite midpoint grid: each domain
// interval gets a share of n_theta proportional to its length (at least 1).
SweepReport energy_theta_sweep(const DiscreteMeasure& mu, double s,
                               const AngleDomain& domain, int n_theta,
                               EnergyKernel kernel = EnergyKernel::koranyi,
                               int threads = 1);

}  // namespace hvp
