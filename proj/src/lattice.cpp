#include "ri2d/lattice.hpp"

#include <cstdlib>

namespace ri2d {

LatticeSet LatticeSet::parse(const std::string& text) {
    LatticeSet out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(';', pos);
        if (next == std::string::npos) next = text.size();
        std::string item = text.substr(pos, next - pos);
        std::size_t comma = item.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("point list: expected \"x,y\" in \"" + item + "\"");
        char* end = nullptr;
        long x = std::strtol(item.c_str(), &end, 10);
        long y = std::strtol(item.c_str() + comma + 1, &end, 10);
        out.points.push_back({int(x), int(y)});
        pos = next + 1;
    }
    if (out.points.empty()) throw std::invalid_argument("point list: empty");
    return out;
}

std::vector<LatticePoint> disc_points(double radius, LatticePoint center) {
    std::vector<LatticePoint> out;
    if (radius < 0) return out;
    int r = int(std::floor(radius));
    double r2 = radius * radius;
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y)
            if (double(x) * x + double(y) * y <= r2)
                out.push_back({center.x + x, center.y + y});
    return out;
}

std::vector<LatticePoint> disc_inner_boundary(double radius, LatticePoint center) {
    std::vector<LatticePoint> out;
    double r2 = radius * radius;
    auto inside = [&](int x, int y) { return double(x) * x + double(y) * y <= r2; };
    int r = int(std::floor(radius));
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y) {
            if (!inside(x, y)) continue;
            if (!inside(x + 1, y) || !inside(x - 1, y) || !inside(x, y + 1) || !inside(x, y - 1))
                out.push_back({center.x + x, center.y + y});
        }
    return out;
}

std::vector<LatticePoint> disc_outer_boundary(double radius, LatticePoint center) {
    std::vector<LatticePoint> out;
    double r2 = radius * radius;
    auto inside = [&](int x, int y) { return double(x) * x + double(y) * y <= r2; };
    int r = int(std::floor(radius)) + 1;
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y) {
            if (inside(x, y)) continue;
            if (inside(x + 1, y) || inside(x - 1, y) || inside(x, y + 1) || inside(x, y - 1))
                out.push_back({center.x + x, center.y + y});
        }
    return out;
}

}  // namespace ri2d
