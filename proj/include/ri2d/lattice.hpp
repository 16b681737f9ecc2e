#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ri2d {

/// A site of the square lattice Z^2.
struct LatticePoint {
    int x = 0;
    int y = 0;

    friend bool operator==(LatticePoint a, LatticePoint b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(LatticePoint a, LatticePoint b) { return !(a == b); }
    friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
    friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
    LatticePoint operator-() const { return {-x, -y}; }

    std::int64_t norm2() const {
        return std::int64_t(x) * x + std::int64_t(y) * y;
    }
    double norm() const { return std::sqrt(double(norm2())); }
    int linf() const { return std::max(std::abs(x), std::abs(y)); }
    bool is_origin() const { return x == 0 && y == 0; }

    std::string str() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

inline const LatticePoint kNeighborSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

inline bool are_neighbors(LatticePoint a, LatticePoint b) {
    return (a - b).norm2() == 1;
}

struct LatticePointHash {
    std::size_t operator()(LatticePoint p) const {
        std::uint64_t v = (std::uint64_t(std::uint32_t(p.x)) << 32) | std::uint32_t(p.y);
        v ^= v >> 33;
        v *= 0xff51afd7ed558ccdULL;
        v ^= v >> 33;
        return std::size_t(v);
    }
};

/// A finite set of distinct lattice points with a fixed ordering
/// (the ordering is the row/column convention for derived matrices).
struct LatticeSet {
    std::vector<LatticePoint> points;

    LatticeSet() = default;
    explicit LatticeSet(std::vector<LatticePoint> pts) : points(std::move(pts)) {}

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    bool contains(LatticePoint p) const {
        for (const auto& q : points)
            if (q == p) return true;
        return false;
    }
    bool contains_origin() const { return contains({0, 0}); }

    bool all_distinct() const {
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j]) return false;
        return true;
    }

    LatticeSet translated(LatticePoint by) const {
        LatticeSet out;
        out.points.reserve(points.size());
        for (const auto& p : points) out.points.push_back(p + by);
        return out;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) s += ", ";
            s += points[i].str();
        }
        return s + "}";
    }

    /// Parses "x1,y1;x2,y2;...".
    static LatticeSet parse(const std::string& text);
};

/// All lattice points of the closed Euclidean ball B(center, radius).
std::vector<LatticePoint> disc_points(double radius, LatticePoint center = {0, 0});

/// Internal boundary of B(radius): points of the ball with a neighbor outside.
std::vector<LatticePoint> disc_inner_boundary(double radius, LatticePoint center = {0, 0});

/// Points outside B(radius) adjacent to the ball.
std::vector<LatticePoint> disc_outer_boundary(double radius, LatticePoint center = {0, 0});

}  // namespace ri2d
