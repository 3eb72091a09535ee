#include "ks33/cnf.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace ks33 {

CnfDocument export_dimacs(const RaySystem& rs, std::span<const Basis> bases,
                          ConstraintMode mode) {
    CnfDocument doc;
    doc.variable_count = static_cast<int>(rs.rays.size());
    int triads = 0, pair_bases = 0;
    for (const Basis& b : bases) {
        if (b.is_triad()) {
            int i = b.ids[0], j = b.ids[1], k = b.ids[2];
            doc.clauses.push_back({i, j, k});
            doc.clauses.push_back({-i, -j});
            doc.clauses.push_back({-i, -k});
            doc.clauses.push_back({-j, -k});
            ++triads;
        } else {
            doc.clauses.push_back({-b.ids[0], -b.ids[1]});
            ++pair_bases;
        }
    }
    std::size_t uncovered = 0;
    if (mode == ConstraintMode::triples_and_pairs) {
        auto extra = uncovered_orthogonal_pairs(rs, bases);
        uncovered = extra.size();
        for (const auto& p : extra) doc.clauses.push_back({-p[0], -p[1]});
    }
    std::ostringstream head;
    head << "constraint system over " << doc.variable_count << " rays, "
         << triads << " triad bases (4 clauses each), " << pair_bases
         << " pair bases (1 clause each)";
    doc.comments.push_back("variable i true means ray i is assigned 0");
    doc.comments.push_back(head.str());
    if (mode == ConstraintMode::triples_and_pairs) {
        std::ostringstream extra_line;
        extra_line << "mode triples_and_pairs: " << uncovered
                   << " uncovered orthogonal pair clauses appended";
        doc.comments.push_back(extra_line.str());
    } else {
        doc.comments.push_back("mode triples_only");
    }
    return doc;
}

std::string to_dimacs(const CnfDocument& doc) {
    std::ostringstream os;
    for (const std::string& c : doc.comments) os << "c " << c << "\n";
    os << "p cnf " << doc.variable_count << " " << doc.clauses.size() << "\n";
    for (const auto& clause : doc.clauses) {
        for (int lit : clause) os << lit << " ";
        os << "0\n";
    }
    return os.str();
}

CnfDocument parse_dimacs(const std::string& text) {
    CnfDocument doc;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("dimacs line " + std::to_string(lineno) +
                                    ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) fail("blank line");
        if (line[0] == 'c') {
            if (have_header) fail("comment after header");
            doc.comments.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        std::istringstream ls(line);
        if (!have_header) {
            std::string p, cnf;
            std::size_t nclauses = 0;
            if (!(ls >> p >> cnf >> doc.variable_count >> nclauses) ||
                p != "p" || cnf != "cnf" || doc.variable_count < 1)
                fail("expected \"p cnf <vars> <clauses>\"");
            declared_clauses = nclauses;
            have_header = true;
            continue;
        }
        std::vector<int> clause;
        int lit = 0;
        bool terminated = false;
        while (ls >> lit) {
            if (terminated) fail("literal after terminating 0");
            if (lit == 0) {
                terminated = true;
                continue;
            }
            if (std::abs(lit) > doc.variable_count) fail("literal out of range");
            clause.push_back(lit);
        }
        if (!ls.eof()) fail("not an integer");
        if (!terminated) fail("clause missing terminating 0");
        doc.clauses.push_back(std::move(clause));
    }
    if (!have_header) fail("missing header");
    if (doc.clauses.size() != declared_clauses)
        throw std::invalid_argument("dimacs: clause count disagrees with header");
    return doc;
}

namespace {

// value per variable: -1 unassigned, 0 false, 1 true
bool dpll(const CnfDocument& doc, std::vector<std::int8_t>& value) {
    std::vector<int> forced;
    while (true) {
        bool progress = false;
        for (const auto& clause : doc.clauses) {
            int unassigned = 0, last_free = 0;
            bool satisfied = false;
            for (int lit : clause) {
                int v = value[static_cast<std::size_t>(std::abs(lit)) - 1];
                if (v == -1) {
                    ++unassigned;
                    last_free = lit;
                } else if ((lit > 0) == (v == 1)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) {
                for (int lit : forced)
                    value[static_cast<std::size_t>(std::abs(lit)) - 1] = -1;
                return false;
            }
            if (unassigned == 1) {
                value[static_cast<std::size_t>(std::abs(last_free)) - 1] =
                    last_free > 0 ? 1 : 0;
                forced.push_back(last_free);
                progress = true;
            }
        }
        if (!progress) break;
    }
    int branch = 0;
    for (int v = 1; v <= doc.variable_count; ++v)
        if (value[static_cast<std::size_t>(v) - 1] == -1) {
            branch = v;
            break;
        }
    if (branch == 0) return true;
    for (std::int8_t val : {std::int8_t{1}, std::int8_t{0}}) {
        value[static_cast<std::size_t>(branch) - 1] = val;
        if (dpll(doc, value)) return true;
    }
    value[static_cast<std::size_t>(branch) - 1] = -1;
    for (int lit : forced)
        value[static_cast<std::size_t>(std::abs(lit)) - 1] = -1;
    return false;
}

} // namespace

bool cnf_satisfiable(const CnfDocument& doc) {
    std::vector<std::int8_t> value(static_cast<std::size_t>(doc.variable_count),
                                   -1);
    return dpll(doc, value);
}

} // namespace ks33
