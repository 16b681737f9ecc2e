#pragma once

#include <Eigen/Dense>
#include <unordered_set>
#include <vector>

#include "ri2d/lattice.hpp"
#include "ri2d/potential_kernel.hpp"
#include "ri2d/rng.hpp"

namespace ri2d {

/// A nearest-neighbour path. Paths of the conditioned walk never visit the
/// origin.
struct WalkPath {
    enum class Kind { srw, hat };
    std::vector<LatticePoint> steps;
    Kind kind = Kind::srw;
};

/// One step of simple random walk.
inline LatticePoint srw_step(LatticePoint x, Rng& rng) {
    return x + kNeighborSteps[rng.next_below(4)];
}

/// One step of the conditioned walk: neighbour y is chosen with probability
/// a(y) / (4 a(x)). The origin has weight zero and is never entered.
LatticePoint hat_step(LatticePoint x, const PotentialKernel& kernel, Rng& rng);

/// Runs the conditioned walk from x0 until it first leaves B(kill_radius).
/// The trace restricted to B(window_radius) approximates the infinite-path
/// trace; each escape past the kill radius omits a possible return with
/// probability about a(window_radius)/a(kill_radius).
WalkPath hat_run_until_escape(LatticePoint x0, double window_radius, double kill_radius,
                              const PotentialKernel& kernel, Rng& rng);

/// The per-escape omission probability bound a(r)/a(R_k) for the truncation.
double hat_escape_omission_bound(double window_radius, double kill_radius,
                                 const PotentialKernel& kernel);

/// Plain SRW run until leaving B(kill_radius) (CLI support).
WalkPath srw_run_until_exit(LatticePoint x0, double kill_radius, Rng& rng);

/// P[hat walk from x ever hits y] = (a(x) + a(y) - a(x-y)) / (2 a(x)).
double hat_hit_point_prob(LatticePoint x, LatticePoint y, const PotentialKernel& kernel);

/// P[hat walk from x ever returns to x] = 1 - 1 / (2 a(x)).
double hat_return_prob(LatticePoint x, const PotentialKernel& kernel);

/// P[hat walk from x never hits B(r)] ~ 1 - a(r)/a(x), clamped to [0,1].
/// Asymptotic in r (error O(1/r)).
double hat_escape_ball_prob(LatticePoint x, double r, const PotentialKernel& kernel);

/// Absorbing-boundary problem on B(R): the walk is absorbed on the given set
/// and on the internal ring of B(R); the result is the probability of being
/// absorbed on `target` (a subset of the absorbing boundary).
struct DirichletProblem {
    int domain_radius = 0;
    LatticeSet absorbing;
    LatticeSet target;
};

/// Exact finite-domain hitting probability for SRW, by sparse linear solve
/// (residual driven to 1e-12). Domain radius capped at 512.
double dirichlet_hit_prob(const DirichletProblem& prob, LatticePoint start);

/// Exit distribution of the conditioned walk from B(R) \ {0}, over the
/// outer-boundary landing sites. Computed two ways (direct substochastic
/// solve, and h-transform reweighting of the 0-avoiding SRW exit law); the
/// construction throws if the routes disagree beyond 1e-10.
struct ExitDistribution {
    std::vector<LatticePoint> exits;
    Eigen::VectorXd prob;
};
ExitDistribution conditioned_exit_kernel(LatticePoint x, int R, const PotentialKernel& kernel);

/// First-entry law of the conditioned walk into a finite set A containing
/// the origin, started anywhere outside A, with no domain truncation.
///
/// Writing kappa(z, w) = P[walk from z first enters A at w], the function
/// f_w(z) = a(z) kappa(z, w) is bounded and SRW-harmonic off A, so it has an
/// exact single-layer representation f_w = c_w - sum_v mu_w(v) a(z - v) over
/// the entry ring, with sum mu_w = 0. One dense solve per set gives every
/// entry kernel and escape probability exactly (up to the linear solve).
/// The constants c_w recover the harmonic measure hm_A.
class ExteriorHitting {
public:
    ExteriorHitting(const LatticeSet& A, const PotentialKernel& kernel);

    const std::vector<LatticePoint>& entry_points() const { return ring_; }
    double harmonic_measure(std::size_t i) const { return c_[Eigen::Index(i)]; }

    /// P[conditioned walk from z outside A ever hits A].
    double hit_probability(LatticePoint z) const;

    /// kappa(z, .) over entry_points(); sums to hit_probability(z).
    Eigen::VectorXd entry_probabilities(LatticePoint z) const;

private:
    const PotentialKernel* kernel_;
    std::vector<LatticePoint> ring_;
    std::unordered_set<LatticePoint, LatticePointHash> members_;
    Eigen::MatrixXd mu_;   // column w: layer charges for entry point w
    Eigen::VectorXd c_;    // harmonic measures
    Eigen::VectorXd mu_a_; // mu * a(ring), combined layer for the total mass
    double c_a_ = 0;       // sum_w a(w) c_w
};

}  // namespace ri2d
