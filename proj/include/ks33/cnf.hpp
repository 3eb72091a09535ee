#pragma once

#include <span>
#include <string>
#include <vector>

#include "ks33/coloring.hpp"
#include "ks33/ray_system.hpp"

namespace ks33 {

/** A CNF formula plus its comment header, for independent verification. */
struct CnfDocument {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses; // nonzero literals, |lit| <= variable_count
    std::vector<std::string> comments;     // emitted as "c ..." lines

    friend bool operator==(const CnfDocument&, const CnfDocument&) = default;
};

/**
 * Encodes the coloring problem: variable i is true iff ray i is assigned 0.
 * A triad basis (i,j,k) contributes (i v j v k), (-i v -j), (-i v -k),
 * (-j v -k); a pair basis (i,j) contributes (-i v -j). triples_and_pairs
 * additionally emits (-p v -q) for every orthogonal ray pair not covered by
 * a basis (none exist for the full basis list, so the two modes coincide
 * there apart from the comment header).
 */
CnfDocument export_dimacs(const RaySystem& rs, std::span<const Basis> bases,
                          ConstraintMode mode);

/**
 * Bit-exact DIMACS text: comment lines first, then "p cnf <vars> <clauses>",
 * then one clause per line, space-separated literals terminated by " 0".
 * Every line newline-terminated, no trailing blank line.
 */
std::string to_dimacs(const CnfDocument& doc);

// Strict inverse of to_dimacs; malformed text raises std::invalid_argument.
CnfDocument parse_dimacs(const std::string& text);

// Plain clause-level DPLL (unit propagation, first-unassigned branching,
// true first). Independent of the structure-aware searcher; used to
// cross-check exported documents.
bool cnf_satisfiable(const CnfDocument& doc);

} // namespace ks33
