#pragma once

#include <span>
#include <string>
#include <vector>

#include "ks33/geometry.hpp"

namespace ks33 {

/** A ray of the configuration; direction is always in canonical form. */
struct Ray {
    int id = 0; // 1-based position in construction order
    Vec3Q direction;

    friend bool operator==(const Ray&, const Ray&) = default;
};

/** Which cube and which of its 13 axes produced a kept ray. */
struct RayOrigin {
    Axis cube = Axis::x;
    std::string axis_label;

    friend bool operator==(const RayOrigin&, const RayOrigin&) = default;
};

/** An axis whose image duplicated an earlier ray and was dropped. */
struct EliminatedAxis {
    Axis cube = Axis::x;
    std::string axis_label;
    int duplicate_of = 0; // id of the ray it coincides with

    friend bool operator==(const EliminatedAxis&, const EliminatedAxis&) = default;
};

/**
 * The 33-ray system: images of the 13 cube symmetry axes under the three
 * scaled 45-degree rotations (x cube first, then y, then z; axes in list
 * order within each cube), with projective duplicates eliminated on sight.
 * Invariants checked by the builder: 33 rays, 6 eliminated axes, per-cube
 * counts 13 + 10 + 10.
 */
struct RaySystem {
    std::vector<Ray> rays;
    std::vector<RayOrigin> origins; // parallel to rays
    std::vector<EliminatedAxis> eliminated;

    // id of the ray with this canonical direction, or 0 if absent
    int find(const Vec3Q& canonical) const;

    const Ray& ray(int id) const; // 1-based, throws std::out_of_range

    friend bool operator==(const RaySystem&, const RaySystem&) = default;
};

RaySystem build_ray_system();

/**
 * An orthogonal triple of the configuration. Sixteen bases are triads, three
 * mutually orthogonal rays of the system. The other twenty-four are
 * orthogonal ray pairs whose common perpendicular lies outside the system;
 * that third direction is stored exactly in `completion` (canonical form,
 * zero vector for triads). Ranks number the bases 1..40 in lexicographic
 * order of their ascending id sequences.
 */
struct Basis {
    int rank = 0;
    std::vector<int> ids; // 2 or 3 ray ids, ascending
    Vec3Q completion{};

    bool is_triad() const { return ids.size() == 3; }
    int size() const { return static_cast<int>(ids.size()); }

    friend bool operator==(const Basis&, const Basis&) = default;
};

std::vector<Basis> enumerate_bases(const RaySystem& rs);

// The three mutually orthogonal directions a basis measures, slot order =
// ascending ids, completion last for pair bases.
std::array<Vec3Q, 3> basis_directions(const RaySystem& rs, const Basis& b);

// All orthogonal ray pairs {i < j} of the system (72 for the full system).
std::vector<std::array<int, 2>> orthogonal_pairs(const RaySystem& rs);

// Orthogonal pairs not covered by any basis (two ids of the pair never occur
// together in one basis). Empty for the full 40-basis list.
std::vector<std::array<int, 2>> uncovered_orthogonal_pairs(
    const RaySystem& rs, std::span<const Basis> bases);

// Human-readable tables.
std::string rays_table(const RaySystem& rs);
std::string bases_table(std::span<const Basis> bases);

// Machine round-trip format: one JSON object per line.
std::string rays_records(const RaySystem& rs);
RaySystem parse_rays_records(const std::string& text);
std::string bases_records(std::span<const Basis> bases);
std::vector<Basis> parse_bases_records(const std::string& text);

} // namespace ks33
