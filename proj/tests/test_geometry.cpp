#include <doctest.h>

#include <set>
#include <sstream>
#include <string>

#include "ks33/geometry.hpp"
#include "ks33/ray_system.hpp"

using namespace ks33;

namespace {

QuadInt Q(std::int64_t a, std::int64_t b = 0) { return {a, b}; }

Vec3Q V(QuadInt x, QuadInt y, QuadInt z) { return {x, y, z}; }

std::string str(const Vec3Q& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

TEST_CASE("rotation images of coordinate axes") {
    const Vec3Q e1 = V(Q(1), Q(0), Q(0));
    const Vec3Q e2 = V(Q(0), Q(1), Q(0));
    const Vec3Q e3 = V(Q(0), Q(0), Q(1));

    // the rotation axis is fixed (up to the sqrt(2) scale)
    CHECK(rotate45(Axis::x, e1) == V(Q(0, 1), Q(0), Q(0)));
    CHECK(rotate45(Axis::y, e2) == V(Q(0), Q(0, 1), Q(0)));
    CHECK(rotate45(Axis::z, e3) == V(Q(0), Q(0), Q(0, 1)));

    CHECK(rotate45(Axis::x, e2) == V(Q(0), Q(1), Q(1)));
    CHECK(rotate45(Axis::x, V(Q(0), Q(1), Q(1))) == V(Q(0), Q(0), Q(2)));
    CHECK(canonical_direction(rotate45(Axis::x, V(Q(0), Q(1), Q(1)))) ==
          V(Q(0), Q(0), Q(1)));
}

TEST_CASE("rotation scales every inner product by exactly 2") {
    const auto& axes = cube_axes();
    for (Axis a : {Axis::x, Axis::y, Axis::z})
        for (const Vec3Q& u : axes)
            for (const Vec3Q& v : axes)
                CHECK(dot(rotate45(a, u), rotate45(a, v)) == Q(2) * dot(u, v));
}

TEST_CASE("canonical direction") {
    CHECK(canonical_direction(V(Q(0), Q(0), Q(2))) == V(Q(0), Q(0), Q(1)));
    CHECK(canonical_direction(V(Q(0, 1), Q(0), Q(2))) == V(Q(1), Q(0), Q(0, 1)));
    CHECK(canonical_direction(V(Q(0), Q(-1), Q(1))) == V(Q(0), Q(1), Q(-1)));
    CHECK(canonical_direction(V(Q(-3), Q(3), Q(3))) == V(Q(1), Q(-1), Q(-1)));
    CHECK(canonical_direction(V(Q(0), Q(0, -2), Q(0, 2))) == V(Q(0), Q(1), Q(-1)));
    CHECK_THROWS_AS(canonical_direction(V(Q(0), Q(0), Q(0))), std::domain_error);
}

TEST_CASE("canonicalization is idempotent and scale invariant on all rays") {
    const RaySystem rs = build_ray_system();
    const QuadInt scalars[] = {Q(1), Q(-1), Q(0, 1), Q(0, -1), Q(2), Q(-2)};
    for (const Ray& r : rs.rays) {
        CHECK(canonical_direction(r.direction) == r.direction);
        for (const QuadInt& s : scalars) {
            const Vec3Q scaled = V(r.direction.x * s, r.direction.y * s,
                                   r.direction.z * s);
            CHECK(canonical_direction(scaled) == r.direction);
        }
    }
}

TEST_CASE("cross product is orthogonal to both factors") {
    const auto& axes = cube_axes();
    for (const Vec3Q& u : axes)
        for (const Vec3Q& v : axes) {
            const Vec3Q w = cross(u, v);
            CHECK(dot(w, u).is_zero());
            CHECK(dot(w, v).is_zero());
            if (w.is_zero()) // zero exactly for parallel factors
                CHECK(canonical_direction(u) == canonical_direction(v));
        }
}

TEST_CASE("the 13 cube symmetry axes in list order") {
    const auto& axes = cube_axes();
    const auto& labels = cube_axis_labels();
    REQUIRE(axes.size() == 13);
    CHECK(axes[0] == V(Q(1), Q(0), Q(0)));
    CHECK(axes[3] == V(Q(1), Q(1), Q(0)));
    CHECK(axes[12] == V(Q(-1), Q(1), Q(1)));
    CHECK(labels[0] == std::string("100"));
    CHECK(labels[5] == std::string("10-1"));
    CHECK(labels[12] == std::string("-111"));

    // as a projective set: exactly 3 face + 6 edge + 4 diagonal axes
    std::set<std::string> got, want;
    for (const Vec3Q& a : axes) got.insert(str(canonical_direction(a)));
    const Vec3Q standard[] = {
        V(Q(1), Q(0), Q(0)),  V(Q(0), Q(1), Q(0)),  V(Q(0), Q(0), Q(1)),
        V(Q(1), Q(1), Q(0)),  V(Q(1), Q(-1), Q(0)), V(Q(1), Q(0), Q(1)),
        V(Q(1), Q(0), Q(-1)), V(Q(0), Q(1), Q(1)),  V(Q(0), Q(1), Q(-1)),
        V(Q(1), Q(1), Q(1)),  V(Q(1), Q(1), Q(-1)), V(Q(1), Q(-1), Q(1)),
        V(Q(1), Q(-1), Q(-1))};
    for (const Vec3Q& a : standard) want.insert(str(a));
    CHECK(got == want);
}

TEST_CASE("either rotation sense yields the same 33 directions") {
    // opposite sense = transposed (inverse) scaled rotation matrices
    const auto rotate45_reversed = [](Axis axis, const Vec3Q& v) -> Vec3Q {
        const QuadInt s2 = QuadInt::sqrt2();
        switch (axis) {
        case Axis::x: return {s2 * v.x, v.y + v.z, v.z - v.y};
        case Axis::y: return {v.x - v.z, s2 * v.y, v.x + v.z};
        default: return {v.x + v.y, v.y - v.x, s2 * v.z};
        }
    };
    const auto direction_set = [](auto&& rot) {
        std::set<std::string> out;
        for (Axis cube : {Axis::x, Axis::y, Axis::z})
            for (const Vec3Q& axis : cube_axes())
                out.insert(str(canonical_direction(rot(cube, axis))));
        return out;
    };
    const auto forward =
        direction_set([](Axis a, const Vec3Q& v) { return rotate45(a, v); });
    const auto reversed = direction_set(rotate45_reversed);
    CHECK(forward.size() == 33);
    CHECK(forward == reversed);
}
