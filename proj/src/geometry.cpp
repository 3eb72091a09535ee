#include "ks33/geometry.hpp"

#include <numeric>

namespace ks33 {

Vec3Q rotate45(Axis axis, const Vec3Q& v) {
    const QuadInt s2 = QuadInt::sqrt2();
    switch (axis) {
    case Axis::x: return {s2 * v.x, v.y - v.z, v.y + v.z};
    case Axis::y: return {v.x + v.z, s2 * v.y, v.z - v.x};
    default:      return {v.x - v.y, v.x + v.y, s2 * v.z};
    }
}

Vec3Q canonical_direction(const Vec3Q& v) {
    if (v.is_zero())
        throw std::domain_error("canonical_direction: zero vector");
    Vec3Q w = v;
    while (w.x.divisible_by_sqrt2() && w.y.divisible_by_sqrt2() &&
           w.z.divisible_by_sqrt2()) {
        w = {w.x.div_sqrt2(), w.y.div_sqrt2(), w.z.div_sqrt2()};
    }
    std::int64_t g = 0;
    for (int i = 0; i < 3; ++i) {
        g = std::gcd(g, w[i].a);
        g = std::gcd(g, w[i].b);
    }
    // g >= 1: a nonzero vector keeps a nonzero component through the loop
    for (int i = 0; i < 3; ++i)
        w[i] = {w[i].a / g, w[i].b / g};
    for (int i = 0; i < 3; ++i) {
        int s = w[i].sign();
        if (s == 0) continue;
        if (s < 0) w = {-w.x, -w.y, -w.z};
        break;
    }
    return w;
}

const std::array<Vec3Q, cube_axis_count>& cube_axes() {
    auto iv = [](std::int64_t x, std::int64_t y, std::int64_t z) {
        return Vec3Q{QuadInt::integer(x), QuadInt::integer(y), QuadInt::integer(z)};
    };
    static const std::array<Vec3Q, cube_axis_count> axes = {
        iv(1, 0, 0),  iv(0, 1, 0),  iv(0, 0, 1),
        iv(1, 1, 0),  iv(1, 0, 1),  iv(1, 0, -1),
        iv(1, -1, 0), iv(0, 1, 1),  iv(0, 1, -1),
        iv(1, 1, 1),  iv(1, 1, -1), iv(1, -1, 1), iv(-1, 1, 1),
    };
    return axes;
}

const std::array<const char*, cube_axis_count>& cube_axis_labels() {
    static const std::array<const char*, cube_axis_count> labels = {
        "100", "010",  "001",  "110",  "101",  "10-1", "1-10",
        "011", "01-1", "111",  "11-1", "1-11", "-111",
    };
    return labels;
}

} // namespace ks33
