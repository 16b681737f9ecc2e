#include "ri2d/potential_theory.hpp"

#include <limits>
#include <unordered_set>

namespace ri2d {

namespace {

void validate_points(const LatticeSet& set) {
    if (set.empty()) throw std::invalid_argument("analyze: empty set");
    std::unordered_set<LatticePoint, LatticePointHash> seen;
    for (const auto& p : set.points)
        if (!seen.insert(p).second)
            throw std::invalid_argument("analyze: points not distinct at " + p.str());
}

}  // namespace

PotentialProfile analyze(const LatticeSet& set, const PotentialKernel& kernel) {
    validate_points(set);

    PotentialProfile out;
    out.set = set;
    const std::size_t n = set.size();
    out.hm = Eigen::VectorXd::Zero(Eigen::Index(n));
    out.equilibrium = Eigen::VectorXd::Zero(Eigen::Index(n));

    if (n == 1) {  // cap({x}) = 0, hm is a point mass
        out.hm[0] = 1.0;
        return out;
    }

    // anchor the first point at the origin; capacity does not depend on it
    LatticeSet anchored = set.contains_origin() ? set : set.translated(-set.points[0]);

    // interior points (all four neighbors inside the set) can never be the
    // first entry point from outside, so they drop out of the system
    std::unordered_set<LatticePoint, LatticePointHash> members(anchored.points.begin(),
                                                               anchored.points.end());
    std::vector<Eigen::Index> active;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = anchored.points[i];
        bool interior = true;
        for (auto d : kNeighborSteps) interior = interior && (members.count(p + d) != 0);
        if (!interior) active.push_back(Eigen::Index(i));
    }

    const Eigen::Index m = Eigen::Index(active.size());
    Eigen::MatrixXd M(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            M(i, j) = kernel.potential(anchored.points[std::size_t(active[i])] -
                                       anchored.points[std::size_t(active[j])]);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    double piv_max = 0, piv_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
        double p = std::fabs(lu.matrixLU()(i, i));
        piv_max = std::max(piv_max, p);
        piv_min = std::min(piv_min, p);
    }
    out.condition = piv_min > 0 ? piv_max / piv_min : std::numeric_limits<double>::infinity();
    if (!lu.isInvertible() || out.condition > 1e12)
        throw degenerate_set_error("analyze: kernel matrix degenerate (condition " +
                                   std::to_string(out.condition) + ") for set " + set.str());

    Eigen::VectorXd row_sums = lu.solve(Eigen::VectorXd::Ones(m));
    const double total = row_sums.sum();
    if (!(total > 0))
        throw degenerate_set_error("analyze: inverse-sum not positive for set " + set.str());

    out.cap = 1.0 / total;
    for (Eigen::Index i = 0; i < m; ++i) {
        double h = row_sums[i] / total;
        if (h < -1e-10)
            throw degenerate_set_error("analyze: negative harmonic measure at " +
                                       anchored.points[std::size_t(active[i])].str() +
                                       " for set " + set.str());
        out.hm[active[i]] = h;
        out.equilibrium[active[i]] =
            kernel.potential(anchored.points[std::size_t(active[i])]) * h;
    }
    return out;
}

double capacity_three_point(LatticePoint x1, LatticePoint x2, LatticePoint x3,
                            const PotentialKernel& kernel) {
    if (x1 == x2 || x2 == x3 || x1 == x3)
        throw std::invalid_argument("capacity_three_point: points must be distinct");
    const double a1 = kernel.potential(x2 - x1);
    const double a2 = kernel.potential(x3 - x2);
    const double a3 = kernel.potential(x1 - x3);
    const double denom =
        a1 * a2 + a1 * a3 + a2 * a3 - 0.5 * (a1 * a1 + a2 * a2 + a3 * a3);
    return a1 * a2 * a3 / denom;
}

double capacity_ball(double r, const PotentialKernel& kernel) {
    if (r < 1.0) throw std::invalid_argument("capacity_ball: requires r >= 1");
    return kernel.potential_real(r);
}

double capacity_distant_union(LatticePoint y, double r, const PotentialKernel& kernel) {
    if (r < 0.5 || y.norm() <= 2.0 * r)
        throw std::invalid_argument("capacity_distant_union: requires |y| > 2r >= 1");
    const double ay = kernel.potential(y);
    return ay * ay / (2.0 * ay - kernel.potential_real(r));
}

}  // namespace ri2d
