#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>

#include "ri2d/potential_theory.hpp"
#include "ri2d/rng.hpp"
#include "ri2d/walks.hpp"

namespace ri2d {

inline constexpr double kPiConst = 3.14159265358979323846;

struct InterlacementConfig {
    int window_radius = 0;
    std::vector<double> levels;  // ascending alpha values
    int kill_radius = 0;         // must exceed 2 * window_radius
    RngSeed seed;

    void validate() const;
    double alpha_max() const { return levels.empty() ? 0.0 : levels.back(); }
};

/// One labelled trajectory, restricted to the window: the in-window trace is
/// a sequence of excursions, each a nearest-neighbour path.
struct TrajectoryRecord {
    double label = 0;  // uniform mark in (0, pi * alpha_max]
    std::vector<WalkPath> excursions;
};

struct TrajectorySoup {
    std::vector<TrajectoryRecord> trajectories;
    LatticeSet base_set;  // the window B(R)
    int window_radius = 0;
    double alpha_max = 0;
};

/// Occupancy of the window at one level; the origin is vacant by construction.
struct VacantGrid {
    double alpha = 0;
    int radius = 0;
    std::vector<std::uint8_t> covered;  // (2R+1)^2, row-major, origin centered
    std::int64_t vacant_count = 0;

    bool covered_at(LatticePoint p) const {
        if (p.linf() > radius) return false;
        return covered[std::size_t(p.x + radius) * (2 * radius + 1) +
                       std::size_t(p.y + radius)] != 0;
    }
    bool vacant_at(LatticePoint p) const {
        return double(p.norm2()) <= double(radius) * radius && !covered_at(p);
    }
};

/// Samples the trajectory soup observed on the window A = B(R):
/// Poisson(pi alpha cap(A)) trajectories started on the boundary with the
/// normalized equilibrium measure, each following the conditioned-walk law.
///
/// The walk is simulated microscopically inside the window; every exit is
/// resolved through the exact exterior first-entry kernel (either the
/// trajectory never returns, or it re-enters at a boundary site with its
/// exact entry law). The in-window trace therefore has the exact law of the
/// full untruncated trajectory, and no kill-radius bias enters.
class WindowSampler {
public:
    WindowSampler(int window_radius, const PotentialKernel& kernel);

    int radius() const { return radius_; }
    double capacity() const { return cap_; }
    const std::vector<LatticePoint>& ring() const { return ring_points_; }
    double expected_trajectories(double alpha) const { return kPiConst * alpha * cap_; }

    /// Label field of one soup: min_label[i] is the smallest mark among
    /// trajectories visiting site i (+inf if unvisited). Returns the
    /// trajectory count. Deterministic in soup_seed alone.
    int run_soup_min_labels(RngSeed soup_seed, double alpha_max,
                            std::vector<double>& min_label) const;

    /// Trajectory count of the soup with this seed (same draw as a full run).
    int trajectory_count(RngSeed soup_seed, double alpha_max) const;

    TrajectorySoup sample_soup(RngSeed soup_seed, double alpha_max) const;

    // site indexing for min-label grids (padded box of side 2R+3)
    std::size_t grid_size() const { return box_.size(); }
    int site_index(LatticePoint p) const {
        if (p.linf() > radius_ + 1) return -1;
        return (p.x + radius_ + 1) * side_ + (p.y + radius_ + 1);
    }
    LatticePoint site_point(int idx) const {
        return {idx / side_ - radius_ - 1, idx % side_ - radius_ - 1};
    }
    bool in_window(int idx) const { return box_[std::size_t(idx)] != 0; }

    VacantGrid grid_from_labels(const std::vector<double>& min_label, double alpha) const;

private:
    template <class Visit>
    void run_trajectory(Rng& rng, Visit&& visit) const;

    int radius_;
    int side_;
    double cap_;
    std::vector<std::uint8_t> box_;                // in-window flags, padded
    std::vector<std::array<double, 4>> cum_;       // per-site cumulative weights
    std::array<int, 4> delta_{};                   // index steps per direction
    std::vector<LatticePoint> ring_points_;
    std::vector<int> ring_site_;                   // ring -> padded index
    std::vector<int> macro_id_;                    // shell site -> alias id, else -1
    std::vector<AliasTable> reentry_;              // per shell site; outcome m = escape
    int escape_outcome_ = 0;
    AliasTable start_;
};

/// Spec-facing one-shot sampler; profile must be analyze(B(R)).
TrajectorySoup sample_soup(const InterlacementConfig& cfg, const PotentialProfile& profile,
                           const PotentialKernel& kernel);

/// Vacant grids of a soup at ascending levels; nesting holds by construction.
std::vector<VacantGrid> vacant_grids(const TrajectorySoup& soup,
                                     const std::vector<double>& levels);

/// P[A subset of the vacant set at level alpha] = exp(-pi alpha cap(A)),
/// valid for sets containing the origin.
double vacancy_prob(const LatticeSet& A, double alpha, const PotentialKernel& kernel);

/// Joint vacancy of two nonzero sites x, y.
double two_point_prob(LatticePoint x, LatticePoint y, double alpha,
                      const PotentialKernel& kernel);

/// Leading term of P[A vacant | x vacant] for 0 in A within B(r), |x| >= 2r.
double conditional_local_rate(const LatticeSet& A, LatticePoint x, double alpha,
                              const PotentialKernel& kernel);

}  // namespace ri2d
