#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ri2d/potential_theory.hpp"
#include "ri2d/rng.hpp"

using namespace ri2d;

namespace {
const PotentialKernel& kernel() {
    static PotentialKernel k = PotentialKernel::build(256);
    return k;
}
constexpr double kPi = 3.14159265358979323846;

LatticeSet random_set_with_origin(Rng& rng, int count, int radius) {
    LatticeSet s;
    s.points.push_back({0, 0});
    while (int(s.points.size()) < count) {
        LatticePoint p{int(rng.next_below(2 * radius + 1)) - radius,
                       int(rng.next_below(2 * radius + 1)) - radius};
        if (!s.contains(p)) s.points.push_back(p);
    }
    return s;
}
}  // namespace

TEST_CASE("singleton and pair") {
    auto p0 = analyze(LatticeSet({{0, 0}}), kernel());
    CHECK(p0.cap == 0.0);
    CHECK(p0.hm[0] == 1.0);

    auto p2 = analyze(LatticeSet({{0, 0}, {1, 0}}), kernel());
    CHECK(p2.cap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p2.hm[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p2.hm[1] == doctest::Approx(0.5).epsilon(1e-12));

    // cap({x,y}) = a(y-x)/2 for random pairs
    Rng rng({2024, 0});
    for (int trial = 0; trial < 50; ++trial) {
        LatticePoint d{int(rng.next_below(41)) - 20, int(rng.next_below(41)) - 20};
        if (d.is_origin()) continue;
        auto pr = analyze(LatticeSet({{0, 0}, d}), kernel());
        CHECK(pr.cap == doctest::Approx(0.5 * kernel().potential(d)).epsilon(1e-9));
        CHECK(pr.hm[0] == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("three-point closed form vs matrix route") {
    const auto& K = kernel();
    double tri = capacity_three_point({0, 0}, {1, 0}, {0, 1}, K);
    CHECK(tri == doctest::Approx(kPi / (2 * (kPi - 1))).epsilon(1e-12));
    auto prof = analyze(LatticeSet({{0, 0}, {1, 0}, {0, 1}}), K);
    CHECK(prof.cap == doctest::Approx(tri).epsilon(1e-9));

    // collinear case stays finite and consistent
    double col = capacity_three_point({0, 0}, {1, 0}, {2, 0}, K);
    auto cprof = analyze(LatticeSet({{0, 0}, {1, 0}, {2, 0}}), K);
    CHECK(col > 0);
    CHECK(col == doctest::Approx(cprof.cap).epsilon(1e-9));

    Rng rng({77, 3});
    for (int trial = 0; trial < 100; ++trial) {
        LatticePoint a{int(rng.next_below(41)) - 20, int(rng.next_below(41)) - 20};
        LatticePoint b{int(rng.next_below(41)) - 20, int(rng.next_below(41)) - 20};
        LatticePoint o{0, 0};
        if (a.is_origin() || b.is_origin() || a == b) continue;
        double f = capacity_three_point(o, a, b, K);
        auto m = analyze(LatticeSet({o, a, b}), K);
        CHECK(f == doctest::Approx(m.cap).epsilon(1e-9));
    }

    CHECK_THROWS_AS((void)capacity_three_point({0, 0}, {0, 0}, {1, 0}, K),
                    std::invalid_argument);
}

TEST_CASE("two capacity routes agree on random sets") {
    const auto& K = kernel();
    Rng rng({5150, 9});
    for (int trial = 0; trial < 200; ++trial) {
        int count = 2 + int(rng.next_below(7));
        auto s = random_set_with_origin(rng, count, 30);
        auto prof = analyze(s, K);
        // route 2: cap = sum a(x) hm(x) over the origin-anchored set
        double cap2 = 0;
        for (Eigen::Index i = 0; i < prof.hm.size(); ++i)
            cap2 += K.potential(s.points[std::size_t(i)]) * prof.hm[i];
        CHECK(prof.cap == doctest::Approx(cap2).epsilon(1e-9));
        CHECK(prof.hm.sum() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(prof.hm.minCoeff() >= -1e-10);
    }
}

TEST_CASE("translation invariance") {
    const auto& K = kernel();
    Rng rng({31337, 1});
    for (int trial = 0; trial < 40; ++trial) {
        int count = 2 + int(rng.next_below(5));
        auto s = random_set_with_origin(rng, count, 15);
        LatticePoint z{int(rng.next_below(61)) - 30, int(rng.next_below(61)) - 30};
        auto a = analyze(s, K);
        auto b = analyze(s.translated(z), K);
        CHECK(a.cap == doctest::Approx(b.cap).epsilon(1e-9));
    }
}

TEST_CASE("monotonicity under inclusion") {
    const auto& K = kernel();
    Rng rng({404, 2});
    for (int trial = 0; trial < 40; ++trial) {
        auto small = random_set_with_origin(rng, 3, 12);
        auto big = small;
        while (big.size() < 6) {
            LatticePoint p{int(rng.next_below(25)) - 12, int(rng.next_below(25)) - 12};
            if (!big.contains(p)) big.points.push_back(p);
        }
        CHECK(analyze(small, K).cap <= analyze(big, K).cap + 1e-12);
    }
}

TEST_CASE("equilibrium measure identity") {
    const auto& K = kernel();
    Rng rng({88, 8});
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_set_with_origin(rng, 2 + int(rng.next_below(6)), 20);
        auto prof = analyze(s, K);
        double eq_total = 0;
        for (Eigen::Index i = 0; i < prof.equilibrium.size(); ++i) {
            CHECK(prof.equilibrium[i] ==
                  doctest::Approx(K.potential(s.points[std::size_t(i)]) * prof.hm[i])
                      .epsilon(1e-10));
            eq_total += prof.equilibrium[i];
        }
        CHECK(eq_total == doctest::Approx(prof.cap).epsilon(1e-9));
    }
}

TEST_CASE("interior points carry no harmonic measure") {
    const auto& K = kernel();
    LatticeSet plus({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    auto prof = analyze(plus, K);
    CHECK(prof.hm[0] == 0.0);  // center of the plus is interior
    CHECK(prof.hm.sum() == doctest::Approx(1.0).epsilon(1e-10));

    // reduction must not change the result: ring of B(6) vs full B(6)
    LatticeSet full(disc_points(6.0));
    LatticeSet ring(disc_inner_boundary(6.0));
    CHECK(analyze(full, K).cap == doctest::Approx(analyze(ring, K).cap).epsilon(1e-10));
}

TEST_CASE("ball capacity approximation") {
    const auto& K = kernel();
    CHECK(capacity_ball(1.0, K) == K.gamma_prime());
    CHECK(capacity_ball(10.0, K) == doctest::Approx(2.49511).epsilon(1e-4));
    CHECK_THROWS_AS((void)capacity_ball(0.5, K), std::invalid_argument);

    double exact10 = analyze(LatticeSet(disc_inner_boundary(10.0)), K).cap;
    CHECK(std::fabs(capacity_ball(10.0, K) - exact10) < 0.1);

    double exact100 = analyze(LatticeSet(disc_inner_boundary(100.0)), K).cap;
    CHECK(std::fabs(capacity_ball(100.0, K) - exact100) < 0.02);
}

TEST_CASE("distant union capacity") {
    const auto& K = kernel();
    LatticePoint y{40, 0};
    double approx = capacity_distant_union(y, 4.0, K);

    LatticeSet s;
    s.points.push_back({0, 0});
    for (auto p : disc_points(4.0, y)) s.points.push_back(p);
    double exact = analyze(s, K).cap;
    CHECK(std::fabs(approx - exact) / exact < 0.05);

    // monotone increasing in r (denominator shrinks)
    CHECK(capacity_distant_union(y, 5.0, K) > approx);
    CHECK_THROWS_AS((void)capacity_distant_union({3, 0}, 2.0, K), std::invalid_argument);
}

TEST_CASE("input validation") {
    const auto& K = kernel();
    CHECK_THROWS_AS((void)analyze(LatticeSet{}, K), std::invalid_argument);
    CHECK_THROWS_AS((void)analyze(LatticeSet({{1, 1}, {1, 1}}), K), std::invalid_argument);
}
