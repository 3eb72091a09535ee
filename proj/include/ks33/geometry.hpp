#pragma once

#include <array>
#include <ostream>

#include "ks33/quadint.hpp"

namespace ks33 {

enum class Axis { x, y, z };

inline char axis_name(Axis a) {
    switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    default: return 'z';
    }
}

/** A direction in 3-space with exact Z[sqrt2] components. */
struct Vec3Q {
    QuadInt x, y, z;

    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }

    const QuadInt& operator[](int i) const { return i == 0 ? x : i == 1 ? y : z; }
    QuadInt& operator[](int i) { return i == 0 ? x : i == 1 ? y : z; }

    friend bool operator==(const Vec3Q& u, const Vec3Q& v) {
        return u.x == v.x && u.y == v.y && u.z == v.z;
    }

    friend std::ostream& operator<<(std::ostream& os, const Vec3Q& v) {
        return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
    }
};

inline QuadInt dot(const Vec3Q& u, const Vec3Q& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline bool orthogonal(const Vec3Q& u, const Vec3Q& v) {
    return dot(u, v).is_zero();
}

inline Vec3Q cross(const Vec3Q& u, const Vec3Q& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

/**
 * sqrt(2)-scaled rotation by 45 degrees about a coordinate axis, right-hand
 * rule. Scaling by sqrt(2) clears the 1/sqrt(2) entries of the true rotation
 * matrix, so images stay inside Z[sqrt2]^3; the scale factor is projectively
 * irrelevant and canonical_direction removes it.
 */
Vec3Q rotate45(Axis axis, const Vec3Q& v);

/**
 * Canonical representative of the ray through v: divide out sqrt(2) while
 * every component allows it, divide out the integer gcd of all coefficients,
 * then flip sign so the first nonzero component (x, y, z order) is positive.
 * Two vectors span the same line iff their canonical forms are equal.
 * Throws std::domain_error for the zero vector.
 */
Vec3Q canonical_direction(const Vec3Q& v);

/**
 * The 13 symmetry axes of the cube: 3 face normals (100 010 001), 6 edge
 * midpoint directions (110 101 10-1 1-10 011 01-1) and 4 main diagonals
 * (111 11-1 1-11 -111), in exactly this order. Labels spell the integer
 * components, "-1" marking a negative one.
 */
constexpr int cube_axis_count = 13;
const std::array<Vec3Q, cube_axis_count>& cube_axes();
const std::array<const char*, cube_axis_count>& cube_axis_labels();

} // namespace ks33
