#include "ri2d/walks.hpp"

#include <Eigen/Sparse>
#include <unordered_map>

namespace ri2d {

LatticePoint hat_step(LatticePoint x, const PotentialKernel& kernel, Rng& rng) {
    if (x.is_origin()) throw std::invalid_argument("hat_step: undefined at the origin");
    double w[4];
    double total = 0;
    for (int i = 0; i < 4; ++i) {
        w[i] = kernel.potential(x + kNeighborSteps[i]);
        total += w[i];
    }
    double u = rng.next_double() * total;
    int i = 0;
    for (; i < 3; ++i) {
        u -= w[i];
        if (u < 0) break;
    }
    return x + kNeighborSteps[i];
}

WalkPath hat_run_until_escape(LatticePoint x0, double window_radius, double kill_radius,
                              const PotentialKernel& kernel, Rng& rng) {
    if (x0.is_origin()) throw std::invalid_argument("hat_run_until_escape: x0 must not be 0");
    if (window_radius < 1 || kill_radius <= 2 * window_radius)
        throw std::invalid_argument("hat_run_until_escape: requires kill_radius > 2 * window_radius >= 2");
    WalkPath path;
    path.kind = WalkPath::Kind::hat;
    const double k2 = kill_radius * kill_radius;
    LatticePoint x = x0;
    path.steps.push_back(x);
    while (double(x.norm2()) <= k2) {
        x = hat_step(x, kernel, rng);
        path.steps.push_back(x);
    }
    return path;
}

double hat_escape_omission_bound(double window_radius, double kill_radius,
                                 const PotentialKernel& kernel) {
    double b = kernel.potential_real(window_radius) / kernel.potential_real(kill_radius);
    return std::min(b, 1.0);
}

WalkPath srw_run_until_exit(LatticePoint x0, double kill_radius, Rng& rng) {
    if (kill_radius < 1) throw std::invalid_argument("srw_run_until_exit: kill_radius >= 1");
    WalkPath path;
    path.kind = WalkPath::Kind::srw;
    const double k2 = kill_radius * kill_radius;
    LatticePoint x = x0;
    path.steps.push_back(x);
    while (double(x.norm2()) <= k2) {
        x = srw_step(x, rng);
        path.steps.push_back(x);
    }
    return path;
}

double hat_hit_point_prob(LatticePoint x, LatticePoint y, const PotentialKernel& kernel) {
    if (x == y || x.is_origin() || y.is_origin())
        throw std::invalid_argument("hat_hit_point_prob: requires x != y, both nonzero");
    double ax = kernel.potential(x);
    return (ax + kernel.potential(y) - kernel.potential(x - y)) / (2.0 * ax);
}

double hat_return_prob(LatticePoint x, const PotentialKernel& kernel) {
    if (x.is_origin()) throw std::invalid_argument("hat_return_prob: x must not be 0");
    return 1.0 - 1.0 / (2.0 * kernel.potential(x));
}

double hat_escape_ball_prob(LatticePoint x, double r, const PotentialKernel& kernel) {
    if (r < 1.0 || x.norm() < r + 1.0)
        throw std::invalid_argument("hat_escape_ball_prob: requires |x| >= r + 1 >= 2");
    double p = 1.0 - kernel.potential_real(r) / kernel.potential(x);
    return std::clamp(p, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Dirichlet oracle
// ---------------------------------------------------------------------------

double dirichlet_hit_prob(const DirichletProblem& prob, LatticePoint start) {
    const int R = prob.domain_radius;
    if (R < 1 || R > 512)
        throw std::invalid_argument("dirichlet_hit_prob: domain radius must be in [1, 512]");
    const double R2 = double(R) * R;
    if (double(start.norm2()) > R2)
        throw std::invalid_argument("dirichlet_hit_prob: start outside the domain");

    std::unordered_set<LatticePoint, LatticePointHash> absorbing(prob.absorbing.points.begin(),
                                                                 prob.absorbing.points.end());
    std::unordered_set<LatticePoint, LatticePointHash> target(prob.target.points.begin(),
                                                              prob.target.points.end());
    auto in_domain = [&](LatticePoint p) { return double(p.norm2()) <= R2; };
    auto on_ring = [&](LatticePoint p) {
        if (!in_domain(p)) return false;
        for (auto d : kNeighborSteps)
            if (!in_domain(p + d)) return true;
        return false;
    };
    auto absorbed = [&](LatticePoint p) { return absorbing.count(p) || on_ring(p); };

    for (const auto& t : prob.target.points)
        if (!in_domain(t) || !absorbed(t))
            throw std::invalid_argument("dirichlet_hit_prob: target point " + t.str() +
                                        " is not part of the absorbing boundary");

    if (absorbed(start)) return target.count(start) ? 1.0 : 0.0;

    // index the free states
    std::unordered_map<LatticePoint, int, LatticePointHash> index;
    std::vector<LatticePoint> states;
    for (int x = -R; x <= R; ++x)
        for (int y = -R; y <= R; ++y) {
            LatticePoint p{x, y};
            if (!in_domain(p) || absorbed(p)) continue;
            index.emplace(p, int(states.size()));
            states.push_back(p);
        }

    const int n = int(states.size());
    Eigen::SparseMatrix<double> A(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(n) * 5);
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, 1.0);
        for (auto d : kNeighborSteps) {
            LatticePoint q = states[std::size_t(i)] + d;
            auto it = index.find(q);
            if (it != index.end())
                trip.emplace_back(i, it->second, -0.25);
            else if (target.count(q))
                b[i] += 0.25;
            // other absorbing neighbours contribute zero
        }
    }
    A.setFromTriplets(trip.begin(), trip.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-14);
    cg.setMaxIterations(200000);
    cg.compute(A);
    Eigen::VectorXd u = cg.solve(b);
    if ((A * u - b).lpNorm<Eigen::Infinity>() > 1e-12)
        throw std::runtime_error("dirichlet_hit_prob: solver residual above 1e-12");
    return u[index.at(start)];
}

// ---------------------------------------------------------------------------
// Conditioned-walk exit kernel, two exact routes
// ---------------------------------------------------------------------------

ExitDistribution conditioned_exit_kernel(LatticePoint x, int R, const PotentialKernel& kernel) {
    if (R < 2 || R > 24)
        throw std::invalid_argument("conditioned_exit_kernel: R in [2, 24] (dense solve)");
    if (x.is_origin() || double(x.norm2()) > double(R) * R)
        throw std::invalid_argument("conditioned_exit_kernel: requires 0 < |x| <= R");

    std::unordered_map<LatticePoint, int, LatticePointHash> index;
    std::vector<LatticePoint> states;
    const double R2 = double(R) * R;
    for (int i = -R; i <= R; ++i)
        for (int j = -R; j <= R; ++j) {
            LatticePoint p{i, j};
            if (p.is_origin() || double(p.norm2()) > R2) continue;
            index.emplace(p, int(states.size()));
            states.push_back(p);
        }
    auto exits = disc_outer_boundary(double(R));
    std::unordered_map<LatticePoint, int, LatticePointHash> exit_index;
    for (std::size_t i = 0; i < exits.size(); ++i) exit_index.emplace(exits[i], int(i));

    const int n = int(states.size());
    Eigen::MatrixXd hat(n, n);       // I - Q for the conditioned walk
    Eigen::MatrixXd srw(n, n);       // I - P for SRW killed at 0
    hat.setZero();
    srw.setZero();
    for (int i = 0; i < n; ++i) {
        hat(i, i) = 1.0;
        srw(i, i) = 1.0;
        double ax = kernel.potential(states[std::size_t(i)]);
        for (auto d : kNeighborSteps) {
            LatticePoint q = states[std::size_t(i)] + d;
            auto it = index.find(q);
            if (it == index.end()) continue;
            hat(i, it->second) -= kernel.potential(q) / (4.0 * ax);
            srw(i, it->second) -= 0.25;
        }
    }

    // occupation measures from x: phi^T = e_x^T (I - Q)^{-1}
    Eigen::VectorXd ex = Eigen::VectorXd::Zero(n);
    ex[index.at(x)] = 1.0;
    Eigen::VectorXd phi_hat = hat.transpose().partialPivLu().solve(ex);
    Eigen::VectorXd phi_srw = srw.transpose().partialPivLu().solve(ex);

    ExitDistribution out;
    out.exits = exits;
    out.prob = Eigen::VectorXd::Zero(Eigen::Index(exits.size()));
    Eigen::VectorXd alt = out.prob;
    const double ax = kernel.potential(x);
    for (int i = 0; i < n; ++i) {
        double av = kernel.potential(states[std::size_t(i)]);
        for (auto d : kNeighborSteps) {
            LatticePoint q = states[std::size_t(i)] + d;
            auto it = exit_index.find(q);
            if (it == exit_index.end()) continue;
            out.prob[it->second] += phi_hat[i] * kernel.potential(q) / (4.0 * av);
            alt[it->second] += phi_srw[i] * 0.25 * kernel.potential(q) / ax;
        }
    }

    double mass = out.prob.sum();
    if (std::fabs(mass - 1.0) > 1e-10)
        throw std::runtime_error("conditioned_exit_kernel: exit mass " + std::to_string(mass));
    if ((out.prob - alt).lpNorm<Eigen::Infinity>() > 1e-10)
        throw std::runtime_error("conditioned_exit_kernel: h-transform route disagrees");
    return out;
}

// ---------------------------------------------------------------------------
// Exterior first-entry kernel via the single-layer representation
// ---------------------------------------------------------------------------

ExteriorHitting::ExteriorHitting(const LatticeSet& A, const PotentialKernel& kernel)
    : kernel_(&kernel), members_(A.points.begin(), A.points.end()) {
    if (!A.contains_origin())
        throw std::invalid_argument("ExteriorHitting: the set must contain the origin");
    if (members_.size() != A.points.size())
        throw std::invalid_argument("ExteriorHitting: points not distinct");

    for (const auto& p : A.points) {
        bool interior = true;
        for (auto d : kNeighborSteps) interior = interior && (members_.count(p + d) != 0);
        if (!interior) ring_.push_back(p);
    }
    const Eigen::Index m = Eigen::Index(ring_.size());

    Eigen::MatrixXd big(m + 1, m + 1);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j)
            big(i, j) = -kernel.potential(ring_[std::size_t(i)] - ring_[std::size_t(j)]);
        big(i, m) = 1.0;
        big(m, i) = 1.0;
    }
    big(m, m) = 0.0;

    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m + 1, m);
    rhs.topLeftCorner(m, m).setIdentity();
    Eigen::MatrixXd sol = big.partialPivLu().solve(rhs);

    mu_ = sol.topRows(m);
    c_ = sol.row(m).transpose();

    Eigen::VectorXd a_ring(m);
    for (Eigen::Index i = 0; i < m; ++i) a_ring[i] = kernel.potential(ring_[std::size_t(i)]);
    mu_a_ = mu_ * a_ring;
    c_a_ = c_.dot(a_ring);

    double hm_total = c_.sum();
    if (std::fabs(hm_total - 1.0) > 1e-9)
        throw std::runtime_error("ExteriorHitting: harmonic measure mass " +
                                 std::to_string(hm_total));
}

double ExteriorHitting::hit_probability(LatticePoint z) const {
    if (members_.count(z)) throw std::invalid_argument("hit_probability: z inside the set");
    double dot = 0;
    for (std::size_t j = 0; j < ring_.size(); ++j)
        dot += mu_a_[Eigen::Index(j)] * kernel_->potential(z - ring_[j]);
    double p = (c_a_ - dot) / kernel_->potential(z);
    return std::clamp(p, 0.0, 1.0);
}

Eigen::VectorXd ExteriorHitting::entry_probabilities(LatticePoint z) const {
    if (members_.count(z)) throw std::invalid_argument("entry_probabilities: z inside the set");
    const Eigen::Index m = Eigen::Index(ring_.size());
    Eigen::VectorXd g(m);
    for (Eigen::Index j = 0; j < m; ++j) g[j] = kernel_->potential(z - ring_[std::size_t(j)]);
    const double az = kernel_->potential(z);
    Eigen::VectorXd u = c_ - mu_.transpose() * g;
    Eigen::VectorXd kappa(m);
    for (Eigen::Index w = 0; w < m; ++w) {
        double k = kernel_->potential(ring_[std::size_t(w)]) * u[w] / az;
        kappa[w] = std::max(k, 0.0);  // clip solver noise at the origin entry / far targets
    }
    return kappa;
}

}  // namespace ri2d
