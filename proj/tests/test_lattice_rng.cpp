#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "ri2d/lattice.hpp"
#include "ri2d/rng.hpp"

using namespace ri2d;

TEST_CASE("lattice set parsing and basics") {
    auto s = LatticeSet::parse("0,0;1,0;-3,2");
    CHECK(s.size() == 3);
    CHECK(s.contains_origin());
    CHECK(s.points[2] == LatticePoint{-3, 2});
    CHECK(s.all_distinct());
    CHECK_THROWS_AS(LatticeSet::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSet::parse("1;2"), std::invalid_argument);
}

TEST_CASE("disc geometry") {
    auto b1 = disc_points(1.0);
    CHECK(b1.size() == 5);
    auto b2 = disc_points(2.0);
    CHECK(b2.size() == 13);
    auto ring = disc_inner_boundary(2.0);
    for (auto p : ring) CHECK(p.norm2() <= 4);
    CHECK(ring.size() == 8);  // B(2) minus the interior cross of B(1)
    auto outer = disc_outer_boundary(2.0);
    for (auto p : outer) {
        CHECK(p.norm2() > 4);
        bool adj = false;
        for (auto d : kNeighborSteps) adj = adj || ((p + d).norm2() <= 4);
        CHECK(adj);
    }
}

TEST_CASE("rng reproducibility and stream separation") {
    Rng a({42, 7});
    Rng b({42, 7});
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c({42, 8});
    int same = 0;
    Rng a2({42, 7});
    for (int i = 0; i < 64; ++i) same += (a2.next_u32() == c.next_u32());
    CHECK(same <= 2);

    auto s1 = substream({42, 7}, 0);
    auto s2 = substream({42, 7}, 1);
    CHECK(s1.stream != s2.stream);
    CHECK(s1.seed == 42);
}

TEST_CASE("uniform doubles look uniform") {
    Rng r({123, 0});
    const int n = 200000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        double u = r.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sum2 / n == doctest::Approx(1.0 / 3).epsilon(0.01));
}

TEST_CASE("poisson moments") {
    Rng r({99, 0});
    for (double lambda : {0.5, 4.0, 25.0, 130.0}) {
        const int n = 40000;
        double sum = 0, sum2 = 0;
        for (int i = 0; i < n; ++i) {
            double k = double(poisson(r, lambda));
            sum += k;
            sum2 += k * k;
        }
        double mean = sum / n, var = sum2 / n - mean * mean;
        CHECK(mean == doctest::Approx(lambda).epsilon(0.03));
        CHECK(var == doctest::Approx(lambda).epsilon(0.08));
    }
    CHECK(poisson(r, 0.0) == 0);
    CHECK_THROWS_AS((void)poisson(r, -1.0), std::invalid_argument);
}

TEST_CASE("alias table matches weights") {
    std::vector<double> w = {1.0, 3.0, 0.0, 6.0};
    AliasTable t(w);
    Rng r({7, 1});
    std::map<int, int> counts;
    const int n = 200000;
    for (int i = 0; i < n; ++i) counts[t.sample(r)]++;
    CHECK(counts[0] == doctest::Approx(n * 0.1).epsilon(0.05));
    CHECK(counts[1] == doctest::Approx(n * 0.3).epsilon(0.05));
    CHECK(counts[2] == 0);
    CHECK(counts[3] == doctest::Approx(n * 0.6).epsilon(0.05));
    CHECK_THROWS_AS(AliasTable(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}
