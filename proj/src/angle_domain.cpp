#include "hvp/angle_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hvp {

namespace {
constexpr double kPi = std::numbers::pi;
}

AngleDomain AngleDomain::full() { return from_intervals({{0.0, kPi}}); }

AngleDomain AngleDomain::from_intervals(std::vector<std::pair<double, double>> ivs) {
    std::vector<std::pair<double, double>> clipped;
    for (auto [lo, hi] : ivs) {
        lo = std::max(lo, 0.0);
        hi = std::min(hi, kPi);
        if (hi > lo) clipped.emplace_back(lo, hi);
    }
    std::sort(clipped.begin(), clipped.end());
    AngleDomain d;
    for (auto iv : clipped) {
        if (!d.ivs_.empty() && iv.first <= d.ivs_.back().second)
            d.ivs_.back().second = std::max(d.ivs_.back().second, iv.second);
        else
            d.ivs_.push_back(iv);
    }
    return d;
}

double AngleDomain::total_length() const {
    double len = 0.0;
    for (auto [lo, hi] : ivs_) len += hi - lo;
    return len;
}

bool AngleDomain::contains(double theta) const {
    for (auto [lo, hi] : ivs_)
        if (theta >= lo && theta < hi) return true;
    return false;
}

AngleDomain excluded_domain(Angle theta0, double epsilon, int modulus) {
    if (modulus != 2 && modulus != 4)
        throw std::invalid_argument("excluded_domain: modulus must be 2 or 4");
    if (!(epsilon >= 0.0) || epsilon >= kPi / 2.0)
        throw std::invalid_argument("excluded_domain: epsilon must lie in [0, pi/2)");
    if (epsilon == 0.0) return AngleDomain::full();

    std::vector<double> centers;
    for (int k = 1; k < 4; ++k) {
        if (k % modulus == 0) continue;
        centers.push_back(Angle(theta0.radians() + k * kPi / 4.0).radians());
    }

    // Subtract wrapped neighborhoods: an exclusion near the seam removes a
    // piece at each end of [0, pi).
    std::vector<std::pair<double, double>> keep = {{0.0, kPi}};
    auto subtract = [&keep](double lo, double hi) {
        std::vector<std::pair<double, double>> out;
        for (auto [a, b] : keep) {
            if (hi <= a || lo >= b) {
                out.emplace_back(a, b);
                continue;
            }
            if (lo > a) out.emplace_back(a, lo);
            if (hi < b) out.emplace_back(hi, b);
        }
        keep = std::move(out);
    };
    for (double c : centers) {
        subtract(c - epsilon, c + epsilon);
        if (c - epsilon < 0.0) subtract(c - epsilon + kPi, kPi);
        if (c + epsilon > kPi) subtract(0.0, c + epsilon - kPi);
    }

    AngleDomain d = AngleDomain::from_intervals(std::move(keep));
    if (d.empty())
        throw std::invalid_argument("excluded_domain: exclusions cover the whole circle");
    return d;
}

}  // namespace hvp
