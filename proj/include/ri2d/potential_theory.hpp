#pragma once

#include <Eigen/Dense>

#include "ri2d/lattice.hpp"
#include "ri2d/potential_kernel.hpp"

namespace ri2d {

/// Raised when the kernel matrix of a set cannot be inverted reliably
/// (singular, condition above 1e12, or a negative harmonic-measure entry).
class degenerate_set_error : public std::runtime_error {
public:
    explicit degenerate_set_error(const std::string& what) : std::runtime_error(what) {}
};

/// Harmonic measure, capacity and equilibrium measure of a finite set.
/// Entries are aligned with the point order of `set`; interior points (all
/// four neighbors in the set) carry zero harmonic measure.
struct PotentialProfile {
    LatticeSet set;
    Eigen::VectorXd hm;           // entrance distribution from infinity
    double cap = 0.0;             // capacity
    Eigen::VectorXd equilibrium;  // a(x) hm(x) in origin-anchored coordinates
    double condition = 1.0;       // pivot-ratio estimate of the solve condition
};

/// Computes the profile by inverting the kernel matrix M_ij = a(x_i - x_j).
/// Sets not containing the origin are translated by -x_1 first (capacity is
/// translation-invariant). cap = 1 / sum(M^-1), hm_i = rowsum_i / sum.
PotentialProfile analyze(const LatticeSet& set, const PotentialKernel& kernel);

/// Closed form for the capacity of a three-point set.
double capacity_three_point(LatticePoint x1, LatticePoint x2, LatticePoint x3,
                            const PotentialKernel& kernel);

/// cap(B(r)) = a(r) + O(1/r); returns the leading term. r >= 1.
double capacity_ball(double r, const PotentialKernel& kernel);

/// Leading term of cap({0} u B(y,r)) = a(y)^2 / (2a(y) - a(r)) for |y| > 2r >= 1.
double capacity_distant_union(LatticePoint y, double r, const PotentialKernel& kernel);

}  // namespace ri2d
