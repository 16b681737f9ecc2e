#include "ri2d/interlacements.hpp"

#include <algorithm>

namespace ri2d {

void InterlacementConfig::validate() const {
    if (window_radius < 1)
        throw std::invalid_argument("interlacements: window_radius must be >= 1");
    if (levels.empty()) throw std::invalid_argument("interlacements: no levels given");
    double prev = 0;
    for (double a : levels) {
        if (!(a >= 0) || a < prev)
            throw std::invalid_argument("interlacements: levels must be ascending and >= 0");
        prev = a;
    }
    if (kill_radius <= 2 * window_radius)
        throw std::invalid_argument("interlacements: kill_radius must exceed 2 * window_radius");
}

WindowSampler::WindowSampler(int window_radius, const PotentialKernel& kernel)
    : radius_(window_radius), side_(2 * window_radius + 3) {
    if (window_radius < 1) throw std::invalid_argument("WindowSampler: radius >= 1");
    if (kernel.exact_radius() < 2 * window_radius + 3)
        throw std::invalid_argument(
            "WindowSampler: kernel exact_radius must cover 2 * window_radius + 3");

    const double R2 = double(radius_) * radius_;
    LatticeSet window;
    box_.assign(std::size_t(side_) * side_, 0);
    for (int x = -radius_; x <= radius_; ++x)
        for (int y = -radius_; y <= radius_; ++y)
            if (double(x) * x + double(y) * y <= R2) {
                window.points.push_back({x, y});
                box_[std::size_t(site_index({x, y}))] = 1;
            }

    delta_ = {side_, -side_, 1, -1};  // matches kNeighborSteps order

    // per-site cumulative neighbour weights a(y); the total normalizes the draw
    cum_.assign(box_.size(), {0, 0, 0, 0});
    for (int idx = 0; idx < int(box_.size()); ++idx) {
        if (!box_[std::size_t(idx)]) continue;
        LatticePoint p = site_point(idx);
        double acc = 0;
        for (int d = 0; d < 4; ++d) {
            acc += kernel.potential(p + kNeighborSteps[d]);
            cum_[std::size_t(idx)][std::size_t(d)] = acc;
        }
    }

    // exterior kernel of the window: exact re-entry law at every shell site
    ExteriorHitting exterior(window, kernel);
    ring_points_ = exterior.entry_points();
    escape_outcome_ = int(ring_points_.size());
    for (const auto& w : ring_points_) ring_site_.push_back(site_index(w));

    cap_ = 0;
    std::vector<double> equilibrium(ring_points_.size());
    for (std::size_t i = 0; i < ring_points_.size(); ++i) {
        equilibrium[i] = kernel.potential(ring_points_[i]) * exterior.harmonic_measure(i);
        cap_ += equilibrium[i];
    }
    start_.build(equilibrium);

    macro_id_.assign(box_.size(), -1);
    for (auto z : disc_outer_boundary(double(radius_))) {
        Eigen::VectorXd kappa = exterior.entry_probabilities(z);
        std::vector<double> outcome(std::size_t(kappa.size()) + 1);
        double total = 0;
        for (Eigen::Index i = 0; i < kappa.size(); ++i) {
            outcome[std::size_t(i)] = kappa[i];
            total += kappa[i];
        }
        outcome.back() = std::max(1.0 - total, 0.0);  // escape to infinity
        macro_id_[std::size_t(site_index(z))] = int(reentry_.size());
        reentry_.emplace_back(outcome);
    }
}

template <class Visit>
void WindowSampler::run_trajectory(Rng& rng, Visit&& visit) const {
    int idx = ring_site_[std::size_t(start_.sample(rng))];
    visit(idx, true);
    while (true) {
        const auto& c = cum_[std::size_t(idx)];
        double u = rng.next_double() * c[3];
        int dir = (u < c[1]) ? (u < c[0] ? 0 : 1) : (u < c[2] ? 2 : 3);
        int nidx = idx + delta_[std::size_t(dir)];
        if (box_[std::size_t(nidx)]) {
            idx = nidx;
            visit(idx, false);
            continue;
        }
        int outcome = reentry_[std::size_t(macro_id_[std::size_t(nidx)])].sample(rng);
        if (outcome == escape_outcome_) return;
        idx = ring_site_[std::size_t(outcome)];
        visit(idx, true);
    }
}

int WindowSampler::run_soup_min_labels(RngSeed soup_seed, double alpha_max,
                                       std::vector<double>& min_label) const {
    min_label.assign(grid_size(), std::numeric_limits<double>::infinity());
    Rng meta(substream(soup_seed, 0));
    const int count = int(poisson(meta, expected_trajectories(alpha_max)));
    for (int t = 0; t < count; ++t) {
        Rng rng(substream(soup_seed, std::uint64_t(t) + 1));
        const double label = rng.next_double() * (kPiConst * alpha_max);
        double* ml = min_label.data();
        run_trajectory(rng, [ml, label](int idx, bool) {
            if (label < ml[idx]) ml[idx] = label;
        });
    }
    return count;
}

int WindowSampler::trajectory_count(RngSeed soup_seed, double alpha_max) const {
    Rng meta(substream(soup_seed, 0));
    return int(poisson(meta, expected_trajectories(alpha_max)));
}

TrajectorySoup WindowSampler::sample_soup(RngSeed soup_seed, double alpha_max) const {
    TrajectorySoup soup;
    soup.window_radius = radius_;
    soup.alpha_max = alpha_max;
    soup.base_set = LatticeSet(disc_points(double(radius_)));

    Rng meta(substream(soup_seed, 0));
    const int count = int(poisson(meta, expected_trajectories(alpha_max)));
    soup.trajectories.reserve(std::size_t(count));
    for (int t = 0; t < count; ++t) {
        Rng rng(substream(soup_seed, std::uint64_t(t) + 1));
        TrajectoryRecord rec;
        rec.label = rng.next_double() * (kPiConst * alpha_max);
        run_trajectory(rng, [this, &rec](int idx, bool entry) {
            if (entry) {
                rec.excursions.emplace_back();
                rec.excursions.back().kind = WalkPath::Kind::hat;
            }
            rec.excursions.back().steps.push_back(site_point(idx));
        });
        soup.trajectories.push_back(std::move(rec));
    }
    return soup;
}

VacantGrid WindowSampler::grid_from_labels(const std::vector<double>& min_label,
                                           double alpha) const {
    VacantGrid g;
    g.alpha = alpha;
    g.radius = radius_;
    const int w = 2 * radius_ + 1;
    g.covered.assign(std::size_t(w) * w, 0);
    const double threshold = kPiConst * alpha;
    const double R2 = double(radius_) * radius_;
    for (int x = -radius_; x <= radius_; ++x)
        for (int y = -radius_; y <= radius_; ++y) {
            if (double(x) * x + double(y) * y > R2) continue;
            bool cov = min_label[std::size_t(site_index({x, y}))] <= threshold;
            if (cov)
                g.covered[std::size_t(x + radius_) * w + std::size_t(y + radius_)] = 1;
            else
                ++g.vacant_count;
        }
    return g;
}

TrajectorySoup sample_soup(const InterlacementConfig& cfg, const PotentialProfile& profile,
                           const PotentialKernel& kernel) {
    cfg.validate();
    WindowSampler sampler(cfg.window_radius, kernel);
    if (std::fabs(profile.cap - sampler.capacity()) > 1e-6)
        throw std::invalid_argument(
            "sample_soup: profile capacity does not match the window (expected analyze(B(R)))");
    return sampler.sample_soup(cfg.seed, cfg.alpha_max());
}

std::vector<VacantGrid> vacant_grids(const TrajectorySoup& soup,
                                     const std::vector<double>& levels) {
    double prev = 0;
    for (double a : levels) {
        if (a < prev) throw std::invalid_argument("vacant_grids: levels must be ascending");
        prev = a;
    }
    const int R = soup.window_radius;
    const int w = 2 * R + 1;
    const double R2 = double(R) * R;
    std::vector<double> min_label(std::size_t(w) * w,
                                  std::numeric_limits<double>::infinity());
    for (const auto& rec : soup.trajectories)
        for (const auto& exc : rec.excursions)
            for (auto p : exc.steps) {
                auto& slot = min_label[std::size_t(p.x + R) * w + std::size_t(p.y + R)];
                slot = std::min(slot, rec.label);
            }

    std::vector<VacantGrid> out;
    for (double alpha : levels) {
        VacantGrid g;
        g.alpha = alpha;
        g.radius = R;
        g.covered.assign(std::size_t(w) * w, 0);
        const double threshold = kPiConst * alpha;
        for (int x = -R; x <= R; ++x)
            for (int y = -R; y <= R; ++y) {
                if (double(x) * x + double(y) * y > R2) continue;
                if (min_label[std::size_t(x + R) * w + std::size_t(y + R)] <= threshold)
                    g.covered[std::size_t(x + R) * w + std::size_t(y + R)] = 1;
                else
                    ++g.vacant_count;
            }
        out.push_back(std::move(g));
    }
    return out;
}

double vacancy_prob(const LatticeSet& A, double alpha, const PotentialKernel& kernel) {
    if (!A.contains_origin())
        throw std::invalid_argument("vacancy_prob: the set must contain the origin");
    if (alpha < 0) throw std::invalid_argument("vacancy_prob: alpha >= 0");
    return std::exp(-kPiConst * alpha * analyze(A, kernel).cap);
}

double two_point_prob(LatticePoint x, LatticePoint y, double alpha,
                      const PotentialKernel& kernel) {
    if (x == y || x.is_origin() || y.is_origin())
        throw std::invalid_argument("two_point_prob: requires distinct nonzero sites");
    if (alpha < 0) throw std::invalid_argument("two_point_prob: alpha >= 0");
    const double psi = capacity_three_point({0, 0}, x, y, kernel);
    return std::exp(-kPiConst * alpha * psi);
}

double conditional_local_rate(const LatticeSet& A, LatticePoint x, double alpha,
                              const PotentialKernel& kernel) {
    if (!A.contains_origin())
        throw std::invalid_argument("conditional_local_rate: 0 must belong to A");
    double r = 0;
    for (const auto& p : A.points) r = std::max(r, p.norm());
    if (x.norm() < 2.0 * r || A.contains(x))
        throw std::invalid_argument("conditional_local_rate: requires |x| >= 2 max|A|");
    const double cap = analyze(A, kernel).cap;
    const double rate = (kPiConst * alpha / 4.0) * cap / (1.0 - cap / (2.0 * kernel.potential(x)));
    return std::exp(-rate);
}

}  // namespace ri2d
