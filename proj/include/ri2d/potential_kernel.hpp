#pragma once

#include <vector>

#include "ri2d/lattice.hpp"

namespace ri2d {

/// Euler-Mascheroni constant, 20 digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// The potential kernel a(x) of planar simple random walk: a(0) = 0, a > 0
/// elsewhere, discretely harmonic off the origin with a unit source at 0,
/// and a(x) = (2/pi) ln|x| + gamma' + O(|x|^-2).
///
/// Exact values are tabulated on one octant of the window |x|_inf <= R and
/// expanded by the dihedral symmetry; beyond the window the asymptotic form
/// is used. The table is built once and is immutable afterwards, so
/// concurrent reads need no synchronization.
class PotentialKernel {
public:
    /// Tabulates exact values on |x|_inf <= exact_radius.
    /// Requires 2 <= exact_radius <= 4096 (the upper cap bounds the octant
    /// table and the solve grid to a few hundred MB).
    static PotentialKernel build(int exact_radius);

    /// a(p): table value inside the window, asymptotic branch outside.
    double potential(LatticePoint p) const {
        int ax = p.x < 0 ? -p.x : p.x;
        int ay = p.y < 0 ? -p.y : p.y;
        if (ay > ax) { int t = ax; ax = ay; ay = t; }
        if (ax <= radius_) return octant_[std::size_t(ax) * (ax + 1) / 2 + ay];
        return two_over_pi_log_norm(p) + gamma_prime_;
    }
    double operator()(LatticePoint p) const { return potential(p); }

    /// The real-argument form a(r) = (2/pi) ln r + gamma', r >= 1.
    double potential_real(double r) const {
        if (r < 1.0) throw std::domain_error("potential_real: requires r >= 1");
        return kTwoOverPi * std::log(r) + gamma_prime_;
    }

    double gamma_prime() const { return gamma_prime_; }
    int exact_radius() const { return radius_; }

    static constexpr double kTwoOverPi = 0.63661977236758134308;

private:
    PotentialKernel(int radius, std::vector<double> octant, double gp)
        : radius_(radius), octant_(std::move(octant)), gamma_prime_(gp) {}

    static double two_over_pi_log_norm(LatticePoint p) {
        return kTwoOverPi * 0.5 * std::log(double(p.norm2()));
    }

    int radius_;
    std::vector<double> octant_;  // a(x,y) for 0 <= y <= x <= radius_
    double gamma_prime_;
};

/// Spec-facing free functions.
inline PotentialKernel build_kernel(int exact_radius) { return PotentialKernel::build(exact_radius); }

namespace quadrature {
/// Exact single-integral representation
///   a(n,m) = (2/pi) \int_0^pi (1 - e^{-max*w(t)} cos(min*t)) / sinh w(t) dt,
/// cosh w(t) = 2 - cos t. Used for boundary data; O(n) per point.
double potential_integral(int n, int m);
}  // namespace quadrature

}  // namespace ri2d
