// Acceptance gate for the 33-ray verifier and simulator. Each numbered
// criterion prints exactly one [PASS]/[FAIL] line with its wall time; the
// process exits nonzero iff any criterion fails. argv[1] must be the path to
// the ks33 command-line binary (criterion 9 exercises it end to end).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ks33/cnf.hpp"
#include "ks33/coloring.hpp"
#include "ks33/protocol.hpp"
#include "ks33/ray_system.hpp"
#include "ks33/rng.hpp"

#include "plain_search.hpp"

using namespace ks33;

namespace {

int g_failures = 0;

struct Check {
    bool ok = true;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            std::printf("       failed: %s\n", what.c_str());
        }
    }
};

template <typename Body>
void criterion(int number, const char* description, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
        body(check);
    } catch (const std::exception& e) {
        check.ok = false;
        std::printf("       exception: %s\n", e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %d. %s (%.2f s)\n", check.ok ? "PASS" : "FAIL", number,
                description, seconds);
    std::fflush(stdout);
    if (!check.ok) ++g_failures;
}

struct CliResult {
    int code = -1;
    std::string out;
};

std::string g_cli_path;

CliResult run_cli(const std::string& args) {
    const std::string cmd = g_cli_path + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <path-to-ks33-cli>\n", argv[0]);
        return 2;
    }
    g_cli_path = argv[1];

    const RaySystem rs = build_ray_system();
    const std::vector<Basis> bases = enumerate_bases(rs);

    criterion(1, "construction counts: 33 rays, 6 duplicates, 40 bases, cubes 13/10/10",
              [&](Check& c) {
        c.expect(rs.rays.size() == 33, "ray count");
        c.expect(rs.origins.size() == 33, "origin count");
        c.expect(rs.eliminated.size() == 6, "eliminated count");
        c.expect(bases.size() == 40, "basis count");
        std::array<int, 3> per_cube{};
        for (const RayOrigin& o : rs.origins)
            ++per_cube[static_cast<std::size_t>(o.cube)];
        c.expect(per_cube[0] == 13 && per_cube[1] == 10 && per_cube[2] == 10,
                 "per-cube ray counts 13/10/10");
        for (std::size_t i = 0; i < rs.rays.size(); ++i)
            c.expect(rs.rays[i].id == static_cast<int>(i) + 1, "ids are 1..33");
        for (std::size_t i = 0; i < bases.size(); ++i)
            c.expect(bases[i].rank == static_cast<int>(i) + 1, "ranks are 1..40");
    });

    criterion(2, "every ray component is one of 0, +/-1, +/-sqrt(2), exactly",
              [&](Check& c) {
        auto admissible = [](const QuadInt& q) {
            return (q.b == 0 && (q.a == 0 || q.a == 1 || q.a == -1)) ||
                   (q.a == 0 && (q.b == 1 || q.b == -1));
        };
        for (const Ray& r : rs.rays) {
            c.expect(admissible(r.direction.x) && admissible(r.direction.y) &&
                         admissible(r.direction.z),
                     "components of ray " + std::to_string(r.id));
            c.expect(canonical_direction(r.direction) == r.direction,
                     "canonical form of ray " + std::to_string(r.id));
        }
    });

    criterion(3, "orthogonality census: 16 triads + 24 uncovered pairs = the 40 bases",
              [&](Check& c) {
        auto orth = [&](int i, int j) {
            return orthogonal(rs.rays[static_cast<std::size_t>(i - 1)].direction,
                              rs.rays[static_cast<std::size_t>(j - 1)].direction);
        };
        // all 5456 three-element subsets of the 33 rays
        std::set<std::vector<int>> census_triads;
        int subsets = 0;
        for (int i = 1; i <= 33; ++i)
            for (int j = i + 1; j <= 33; ++j)
                for (int k = j + 1; k <= 33; ++k) {
                    ++subsets;
                    if (orth(i, j) && orth(i, k) && orth(j, k))
                        census_triads.insert({i, j, k});
                }
        c.expect(subsets == 5456, "3-subset count");
        c.expect(census_triads.size() == 16, "exactly 16 mutually orthogonal triads");

        std::set<std::vector<int>> basis_triads, basis_pairs;
        for (const Basis& b : bases)
            (b.is_triad() ? basis_triads : basis_pairs).insert(b.ids);
        c.expect(basis_triads == census_triads, "triad bases = census triads");
        c.expect(basis_triads.size() + basis_pairs.size() == 40, "16 + 24 = 40");

        // all 528 pairs: 72 orthogonal, 24 of them in no triad
        std::set<std::vector<int>> census_uncovered;
        int pairs = 0, orth_pairs = 0;
        for (int i = 1; i <= 33; ++i)
            for (int j = i + 1; j <= 33; ++j) {
                ++pairs;
                if (!orth(i, j)) continue;
                ++orth_pairs;
                const std::array<int, 2> pair{i, j};
                bool covered = false;
                for (const auto& t : census_triads)
                    covered |= std::includes(t.begin(), t.end(), pair.begin(),
                                             pair.end());
                if (!covered) census_uncovered.insert({i, j});
            }
        c.expect(pairs == 528, "2-subset count");
        c.expect(orth_pairs == 72, "72 orthogonal pairs");
        c.expect(census_uncovered.size() == 24, "24 pairs in no triad");
        c.expect(basis_pairs == census_uncovered, "pair bases = uncovered pairs");

        // each pair basis is completed by a direction outside the system,
        // orthogonal to both members
        for (const Basis& b : bases) {
            if (b.is_triad()) continue;
            const std::array<Vec3Q, 3> dirs = basis_directions(rs, b);
            c.expect(orthogonal(dirs[0], dirs[2]) && orthogonal(dirs[1], dirs[2]),
                     "completion orthogonality of rank " + std::to_string(b.rank));
            c.expect(rs.find(b.completion) == 0,
                     "completion outside the system at rank " + std::to_string(b.rank));
        }
    });

    criterion(4, "no {0,1} assignment satisfies all 40 bases (search + 10^6 sweep)",
              [&](Check& c) {
        const SearchReport rep = solve_coloring(bases);
        c.expect(!rep.satisfiable, "complete search returns UNSAT");
        c.expect(!rep.witness.has_value(), "no witness on UNSAT");

        const auto extra = uncovered_orthogonal_pairs(rs, bases);
        c.expect(extra.empty(), "full basis list covers every orthogonal pair");
        const SearchReport rep2 = solve_coloring(bases, extra);
        c.expect(!rep2.satisfiable, "UNSAT with explicit pair constraints");

        const SweepReport sweep = sweep_assignments(bases, 1000000, 123);
        c.expect(sweep.none_violated == 0, "10^6 random assignments all fail");
        std::uint64_t total = sweep.none_violated;
        for (std::uint64_t n : sweep.histogram) total += n;
        c.expect(total == 1000000, "sweep histogram accounts for every trial");
    });

    criterion(5, "searcher agrees with a propagation-free reference on 20 subsets",
              [&](Check& c) {
        for (int t = 0; t < 20; ++t) {
            SplitMix64 rng = SplitMix64::substream(4242, static_cast<std::uint64_t>(t));
            const std::vector<Basis> subset = testing::random_subset(bases, rng, 15);
            const SearchReport fast = solve_coloring(subset);
            testing::PlainBacktracker plain(subset);
            const std::optional<Assignment> slow = plain.solve();
            c.expect(fast.satisfiable == slow.has_value(),
                     "verdict on subset " + std::to_string(t));
            if (fast.satisfiable) {
                c.expect(fast.witness.has_value() &&
                             satisfied_count(*fast.witness, subset) ==
                                 static_cast<int>(subset.size()),
                         "witness satisfies subset " + std::to_string(t));
            }
        }
    });

    criterion(6, "DIMACS export: header p cnf 33 88, round-trip, DPLL-UNSAT",
              [&](Check& c) {
        const CnfDocument doc = export_dimacs(rs, bases, ConstraintMode::triples_only);
        c.expect(doc.variable_count == 33, "33 variables");
        c.expect(doc.clauses.size() == 88, "16*4 + 24 = 88 clauses");
        const std::string text = to_dimacs(doc);
        c.expect(text.find("\np cnf 33 88\n") != std::string::npos,
                 "problem line p cnf 33 88");
        c.expect(parse_dimacs(text) == doc, "parse inverts serialization");
        c.expect(!cnf_satisfiable(doc), "independent DPLL says UNSAT");

        const CnfDocument doc2 =
            export_dimacs(rs, bases, ConstraintMode::triples_and_pairs);
        c.expect(doc2.clauses == doc.clauses, "both modes emit the same clauses");
        c.expect(!cnf_satisfiable(doc2), "DPLL-UNSAT with pair mode");
    });

    criterion(7, "every deterministic predictor is refuted at a minimal key",
              [&](Check& c) {
        SplitMix64 meas(99);
        const RefutationRecord ones = refute(Predictor{Assignment::all_ones()},
                                             bases, meas);
        c.expect(ones.key == 1, "all-ones fails at key 1");
        const RefutationRecord zeros = refute(Predictor{Assignment::all_zeros()},
                                              bases, meas);
        c.expect(zeros.key == 1, "all-zeros fails at key 1");

        for (int i = 0; i < 1000; ++i) {
            SplitMix64 prng = SplitMix64::substream(77, static_cast<std::uint64_t>(i));
            const Predictor p{Assignment::random(prng)};
            const RefutationRecord r = refute(p, bases, meas);
            if (r.key < 1 || r.key > 40) {
                c.expect(false, "key in 1..40 for predictor " + std::to_string(i));
                continue;
            }
            const Basis& at = bases[static_cast<std::size_t>(r.key) - 1];
            c.expect(basis_violated(at, p.theta),
                     "key names a violated basis, predictor " + std::to_string(i));
            c.expect(static_cast<int>(r.predicted.size()) == at.size(),
                     "predicted width, predictor " + std::to_string(i));
            for (int j = 0; j < at.size(); ++j)
                c.expect(r.predicted[static_cast<std::size_t>(j)] ==
                             p.theta.value(at.ids[static_cast<std::size_t>(j)]),
                         "predicted bits, predictor " + std::to_string(i));
            c.expect(pattern_valid(r.measured),
                     "measured pattern valid, predictor " + std::to_string(i));
            for (int k = 0; k < r.key - 1; ++k)
                c.expect(!basis_violated(bases[static_cast<std::size_t>(k)], p.theta),
                         "key minimality, predictor " + std::to_string(i));
        }
    });

    criterion(8, "10^5-trial campaign: twin agreement 1.0, slot frequencies 1/3 +/- 0.01",
              [&](Check& c) {
        const CampaignReport rep =
            run_campaign(rs, bases, 100000, 42, Schedule::random);
        c.expect(rep.invalid_patterns == 0, "no invalid outcome patterns");
        c.expect(rep.twin_trials == 7250, "twin trial count");
        c.expect(rep.twin_agreements == rep.twin_trials,
                 "twin outcomes agree every single time");
        c.expect(rep.twin_agreement_rate() == 1.0, "agreement rate exactly 1");
        const std::array<std::uint64_t, 3> want{33291, 33428, 33281};
        c.expect(rep.zero_slot_counts == want, "frozen zero-slot counts");
        for (int s = 0; s < 3; ++s) {
            const double freq =
                static_cast<double>(rep.zero_slot_counts[static_cast<std::size_t>(s)]) /
                100000.0;
            c.expect(std::fabs(freq - 1.0 / 3.0) <= 0.01,
                     "slot " + std::to_string(s) + " frequency within 1/3 +/- 0.01");
        }
        c.expect(rep.twin_trials + rep.nontwin_trials == 100000,
                 "every trial classified");
    });

    criterion(9, "command-line interface is byte-deterministic across runs",
              [&](Check& c) {
        const std::vector<std::string> commands = {
            "rays",
            "rays --format records",
            "triples",
            "triples --format records",
            "verify",
            "verify --mode triples_and_pairs",
            "cnf",
            "cnf --mode triples_and_pairs",
            "maxsat",
            "simulate --trials 1000 --seed 42",
            "simulate --trials 100 --seed 9 --schedule exhaustive_keys",
            "simulate --trials 6 --seed 7 --records",
            "refute --predictor all_ones --seed 0",
            "refute --predictor all_zeros --seed 1",
            "refute --predictor random --seed 0",
        };
        for (const std::string& cmd : commands) {
            const CliResult first = run_cli(cmd);
            const CliResult second = run_cli(cmd);
            c.expect(first.code == 0, "exit 0: " + cmd);
            c.expect(first.code == second.code && first.out == second.out,
                     "identical reruns: " + cmd);
            c.expect(!first.out.empty(), "nonempty output: " + cmd);
        }
        // a parallel search must reproduce the sequential report bytes
        c.expect(run_cli("verify --threads 4 --frontier-depth 6").out ==
                     run_cli("verify").out,
                 "parallel verify output equals sequential");
    });

    if (g_failures == 0) {
        std::printf("all 9 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
