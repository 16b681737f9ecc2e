#include "ri2d/potential_kernel.hpp"

#include <algorithm>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <cmath>

namespace ri2d {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Boundary values: adaptive Gauss-Legendre evaluation of the closed integral.
// ---------------------------------------------------------------------------

const double kX15[15] = {
    -0.98799251802048542849, -0.93727339240070590431, -0.84820658341042721620,
    -0.72441773136017004742, -0.57097217260853884754, -0.39415134707756336990,
    -0.20119409399743452230, 0.0, 0.20119409399743452230, 0.39415134707756336990,
    0.57097217260853884754, 0.72441773136017004742, 0.84820658341042721620,
    0.93727339240070590431, 0.98799251802048542849};
const double kW15[15] = {
    0.03075324199611726835, 0.07036604748810812471, 0.10715922046717193501,
    0.13957067792615431445, 0.16626920581699393355, 0.18616100001556221103,
    0.19843148532711157646, 0.20257824192556127288, 0.19843148532711157646,
    0.18616100001556221103, 0.16626920581699393355, 0.13957067792615431445,
    0.10715922046717193501, 0.07036604748810812471, 0.03075324199611726835};
const double kX7[7] = {
    -0.94910791234275852453, -0.74153118559939443986, -0.40584515137739716691,
    0.0, 0.40584515137739716691, 0.74153118559939443986, 0.94910791234275852453};
const double kW7[7] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776, 0.38183005050511894495, 0.27970539148927666790,
    0.12948496616886969327};

struct Integrand {
    int n;  // coordinate in the exponential (the larger one)
    int m;  // coordinate in the cosine

    double operator()(double t) const {
        // u = 1 - cos t via 2 sin^2(t/2), stable for small t
        double s = std::sin(0.5 * t);
        double u = 2.0 * s * s;
        if (u == 0.0) return double(n);
        double sh = std::sqrt(u * (u + 2.0));     // sinh w
        double w = std::log1p(u + sh);            // acosh(1 + u)
        return (1.0 - std::exp(-double(n) * w) * std::cos(double(m) * t)) / sh;
    }
};

template <class F>
double gauss(const F& f, double a, double b, const double* x, const double* w, int k) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0;
    for (int i = 0; i < k; ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

template <class F>
double adaptive(const F& f, double a, double b, double tol, int depth) {
    double i15 = gauss(f, a, b, kX15, kW15, 15);
    double i7 = gauss(f, a, b, kX7, kW7, 7);
    if (std::fabs(i15 - i7) < tol || depth >= 26) return i15;
    double m = 0.5 * (a + b);
    return adaptive(f, a, m, tol, depth + 1) + adaptive(f, m, b, tol, depth + 1);
}

// ---------------------------------------------------------------------------
// Interior fill: geometric multigrid for A u = b, A u = u - (1/4) sum_nbr u,
// on the square grid with homogeneous Dirichlet boundary. Sides are 2^k + 1.
// ---------------------------------------------------------------------------

struct MgLevel {
    int side = 0;
    std::vector<double> u, b, r;
};

void relax(MgLevel& g, int color) {
    const int s = g.side;
    for (int i = 1; i < s - 1; ++i) {
        int j0 = 1 + ((i + 1 + color) & 1);
        double* u = g.u.data() + std::size_t(i) * s;
        const double* bp = g.b.data() + std::size_t(i) * s;
        for (int j = j0; j < s - 1; j += 2)
            u[j] = 0.25 * (u[j - 1] + u[j + 1] + u[j - s] + u[j + s]) + bp[j];
    }
}

double residual(MgLevel& g) {
    const int s = g.side;
    double worst = 0;
    std::fill(g.r.begin(), g.r.end(), 0.0);
    for (int i = 1; i < s - 1; ++i) {
        const double* u = g.u.data() + std::size_t(i) * s;
        const double* bp = g.b.data() + std::size_t(i) * s;
        double* rp = g.r.data() + std::size_t(i) * s;
        for (int j = 1; j < s - 1; ++j) {
            double res = bp[j] - (u[j] - 0.25 * (u[j - 1] + u[j + 1] + u[j - s] + u[j + s]));
            rp[j] = res;
            worst = std::max(worst, std::fabs(res));
        }
    }
    return worst;
}

void restrict_full_weighting(const MgLevel& fine, MgLevel& coarse) {
    const int fs = fine.side, cs = coarse.side;
    std::fill(coarse.b.begin(), coarse.b.end(), 0.0);
    for (int i = 1; i < cs - 1; ++i)
        for (int j = 1; j < cs - 1; ++j) {
            const double* r = fine.r.data() + std::size_t(2 * i) * fs + 2 * j;
            // full weighting times 4: the operator I - (1/4)sum is h^2-scaled,
            // so the coarse equation absorbs the (H/h)^2 factor here
            coarse.b[std::size_t(i) * cs + j] =
                r[0] +
                0.5 * (r[1] + r[-1] + r[fs] + r[-fs]) +
                0.25 * (r[fs + 1] + r[fs - 1] + r[-fs + 1] + r[-fs - 1]);
        }
}

void prolong_correct(MgLevel& fine, const MgLevel& coarse) {
    const int fs = fine.side, cs = coarse.side;
    for (int i = 0; i < cs; ++i)
        for (int j = 0; j < cs; ++j) {
            double c = coarse.u[std::size_t(i) * cs + j];
            if (c == 0.0) continue;
            double* u = fine.u.data() + std::size_t(2 * i) * fs + 2 * j;
            u[0] += c;
            if (2 * j + 1 < fs) u[1] += 0.5 * c;
            if (2 * j - 1 >= 0) u[-1] += 0.5 * c;
            if (2 * i + 1 < fs) {
                u[fs] += 0.5 * c;
                if (2 * j + 1 < fs) u[fs + 1] += 0.25 * c;
                if (2 * j - 1 >= 0) u[fs - 1] += 0.25 * c;
            }
            if (2 * i - 1 >= 0) {
                u[-fs] += 0.5 * c;
                if (2 * j + 1 < fs) u[-fs + 1] += 0.25 * c;
                if (2 * j - 1 >= 0) u[-fs - 1] += 0.25 * c;
            }
        }
}

void v_cycle(std::vector<MgLevel>& levels, std::size_t k) {
    MgLevel& g = levels[k];
    if (k + 1 == levels.size() || g.side <= 5) {
        for (int sweep = 0; sweep < 64; ++sweep) { relax(g, 0); relax(g, 1); }
        return;
    }
    relax(g, 0); relax(g, 1); relax(g, 0); relax(g, 1);
    residual(g);
    restrict_full_weighting(g, levels[k + 1]);
    std::fill(levels[k + 1].u.begin(), levels[k + 1].u.end(), 0.0);
    v_cycle(levels, k + 1);
    prolong_correct(g, levels[k + 1]);
    relax(g, 1); relax(g, 0); relax(g, 1); relax(g, 0);
}

// Solves A u = b (u, b full arrays with boundary rows fixed at zero).
void mg_solve(int side, std::vector<double>& u, const std::vector<double>& b) {
    std::vector<MgLevel> levels;
    for (int s = side; s >= 5; s = (s - 1) / 2 + 1) {
        MgLevel g;
        g.side = s;
        g.u.assign(std::size_t(s) * s, 0.0);
        g.b.assign(std::size_t(s) * s, 0.0);
        g.r.assign(std::size_t(s) * s, 0.0);
        levels.push_back(std::move(g));
        if (((s - 1) & 1) != 0) break;
    }
    levels[0].b = b;
    double prev = std::numeric_limits<double>::infinity();
    for (int cycle = 0; cycle < 60; ++cycle) {
        v_cycle(levels, 0);
        double res = residual(levels[0]);
        if (std::getenv("RI2D_MG_TRACE"))
            std::fprintf(stderr, "mg side=%d cycle=%d res=%.3e\n", side, cycle, res);
        if (res < 1e-15 || res > 0.7 * prev) break;  // converged or at the fp floor
        prev = res;
    }
    u = levels[0].u;
}

int next_pow2(int v) {
    int p = 2;
    while (p < v) p *= 2;
    return p;
}

}  // namespace

namespace quadrature {

double potential_integral(int n, int m) {
    n = std::abs(n);
    m = std::abs(m);
    if (n < m) std::swap(n, m);
    if (n == 0) return 0.0;
    Integrand f{n, m};
    double tol = 1e-15 * std::max(4.0, double(n));
    return 2.0 / kPi * adaptive(f, 0.0, kPi, tol, 0);
}

}  // namespace quadrature

PotentialKernel PotentialKernel::build(int exact_radius) {
    if (exact_radius < 2) throw std::invalid_argument("build_kernel: exact_radius must be >= 2");
    if (exact_radius > 2048)
        throw std::invalid_argument("build_kernel: exact_radius capped at 2048 (solve grid memory)");

    const double gp = (2.0 * kEulerGamma + std::log(8.0)) / kPi;

    const int N = next_pow2(exact_radius);
    const int side = 2 * N + 1;
    const auto idx = [side, N](int x, int y) {
        return std::size_t(x + N) * side + std::size_t(y + N);
    };

    // Exact values on the octant of the frame |x|_inf = N; the rest of the
    // frame follows by dihedral symmetry.
    std::vector<double> frame_oct(std::size_t(N) + 1);
    for (int m = 0; m <= N; ++m) frame_oct[m] = quadrature::potential_integral(N, m);
    const auto frame_value = [&](int x, int y) {
        x = std::abs(x); y = std::abs(y);
        if (y > x) std::swap(x, y);
        return frame_oct[std::size_t(y)];  // here x == N
    };

    // Lift the boundary data: b_v(x) = (1/4) sum of frame-neighbor values.
    std::vector<double> b(std::size_t(side) * side, 0.0);
    for (int x = -N + 1; x <= N - 1; ++x) {
        for (int y : {-N + 1, N - 1}) {
            // neighbors on the top/bottom frame rows
            b[idx(x, y)] += 0.25 * frame_value(x, y > 0 ? N : -N);
        }
    }
    for (int y = -N + 1; y <= N - 1; ++y) {
        for (int x : {-N + 1, N - 1}) {
            b[idx(x, y)] += 0.25 * frame_value(x > 0 ? N : -N, y);
        }
    }

    std::vector<double> v;
    mg_solve(side, v, b);

    // Green's function of the square: A w = delta_0, zero boundary.
    std::fill(b.begin(), b.end(), 0.0);
    b[idx(0, 0)] = 1.0;
    std::vector<double> w;
    mg_solve(side, w, b);

    // Combine so that u(0) = 0; harmonicity off the origin is inherited.
    const double t = -v[idx(0, 0)] / w[idx(0, 0)];
    std::vector<double> u(std::size_t(side) * side);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = v[i] + t * w[i];
    for (int x = -N; x <= N; ++x) {
        u[idx(x, N)] = frame_value(x, N);
        u[idx(x, -N)] = frame_value(x, -N);
        u[idx(N, x)] = frame_value(N, x);
        u[idx(-N, x)] = frame_value(-N, x);
    }
    u[idx(0, 0)] = 0.0;

    // The unit source at the origin is not imposed anywhere above; it must
    // come out of the boundary data on its own.
    double source = 0.25 * (u[idx(1, 0)] + u[idx(-1, 0)] + u[idx(0, 1)] + u[idx(0, -1)]);
    if (std::fabs(source - 1.0) > 1e-10)
        throw std::runtime_error("build_kernel: origin source off by " +
                                 std::to_string(source - 1.0));

    // Extract one octant, averaging over the dihedral images.
    std::vector<double> oct(std::size_t(exact_radius + 1) * (exact_radius + 2) / 2);
    for (int x = 0; x <= exact_radius; ++x)
        for (int y = 0; y <= x; ++y) {
            double s = u[idx(x, y)] + u[idx(x, -y)] + u[idx(-x, y)] + u[idx(-x, -y)] +
                       u[idx(y, x)] + u[idx(y, -x)] + u[idx(-y, x)] + u[idx(-y, -x)];
            oct[std::size_t(x) * (x + 1) / 2 + y] = 0.125 * s;
        }
    oct[0] = 0.0;

    return PotentialKernel(exact_radius, std::move(oct), gp);
}

}  // namespace ri2d
