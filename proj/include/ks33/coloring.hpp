#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ks33/ray_system.hpp"
#include "ks33/rng.hpp"

namespace ks33 {

constexpr int ray_count = 33;

/** A {0,1} value for every ray: a candidate deterministic outcome function. */
struct Assignment {
    std::array<std::uint8_t, ray_count> bits{}; // bits[i] = value of ray i+1

    static Assignment all_ones();
    static Assignment all_zeros();
    // 33 single-bit draws (next() & 1) in ray id order.
    static Assignment random(SplitMix64& rng);
    // 33 characters '0'/'1', whitespace ignored; anything else is an error.
    static Assignment from_string(std::string_view text);

    std::uint8_t value(int ray_id) const { // 1-based
        return bits[static_cast<std::size_t>(ray_id) - 1];
    }
    std::string str() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Exactly one zero among the three bits: the only outcome patterns a
// squared-spin triple measurement can show.
bool pattern_valid(const std::array<std::uint8_t, 3>& t);

// A triad basis is violated unless its three values form a valid pattern.
// A pair basis is violated iff both rays read 0: the unobserved completion
// would then be a second zero in one orthogonal triple.
bool basis_violated(const Basis& b, const Assignment& a);

// Rank of the first violated basis in the given (rank-ordered) list.
std::optional<int> first_violated_basis(const Assignment& a,
                                        std::span<const Basis> bases);

int satisfied_count(const Assignment& a, std::span<const Basis> bases);

enum class ConstraintMode { triples_only, triples_and_pairs };

struct SearchOptions {
    int threads = 1; // 1 = sequential reference semantics
    // Decision depth where parallel workers split off; values outside [0, 14]
    // are clamped (an unconstrained frontier doubles per level).
    int frontier_depth = 8;
};

struct SearchReport {
    bool satisfiable = false;
    std::optional<Assignment> witness;
    std::uint64_t nodes_visited = 0;
    int max_depth = 0;
    double elapsed_seconds = 0; // wall clock; informational only

    // Equality of everything reproducible (elapsed time never is).
    bool same_result(const SearchReport& o) const {
        return satisfiable == o.satisfiable && witness == o.witness &&
               nodes_visited == o.nodes_visited && max_depth == o.max_depth;
    }
};

/**
 * Complete backtracking search for an assignment with no violated basis,
 * with unit propagation of the exactly-one-zero (triad) and not-both-zero
 * (pair) constraints. Branches on the lowest unassigned ray id, value 1
 * first, so node counts and witnesses are deterministic. extra_pairs adds
 * not-both-zero constraints beyond the bases (ray id pairs).
 *
 * With threads > 1 the tree is split at frontier_depth decisions and the
 * subtrees run in parallel; the report (verdict, witness, nodes_visited,
 * max_depth) is reconciled to equal the sequential run exactly.
 */
SearchReport solve_coloring(std::span<const Basis> bases,
                            std::span<const std::array<int, 2>> extra_pairs = {},
                            const SearchOptions& opts = {});

struct MaxSatReport {
    int best_count = 0;
    Assignment witness;
    std::uint64_t nodes_visited = 0; // summed over all inner searches
    int dropped = 0;                 // bases removed to reach satisfiability
};

/**
 * Largest number of bases a single assignment can satisfy simultaneously,
 * with an optimal witness. Exact: tries dropping k = 0, 1, 2, ... bases (all
 * k-subsets in rank order) and runs the complete searcher on the rest until
 * one is satisfiable; first success at minimal k gives count = size - k.
 */
MaxSatReport max_satisfiable(std::span<const Basis> bases);

struct SweepReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t none_violated = 0;
    // histogram[rank] = assignments whose first violated basis has this rank
    std::array<std::uint64_t, 41> histogram{};
};

/**
 * Draws `trials` random assignments (assignment i from substream(seed, i))
 * and tallies first_violated_basis. Thread count never changes the result.
 */
SweepReport sweep_assignments(std::span<const Basis> bases, std::uint64_t trials,
                              std::uint64_t seed, int threads = 1);

} // namespace ks33
