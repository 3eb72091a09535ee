// Command-line surface for the 33-ray verifier and simulator. Every command
// is deterministic: identical flags and seeds give byte-identical output, so
// no timing or environment data is ever printed.
//
// Exit codes: 0 success (expected verdict), 1 usage or input error,
// 2 internal consistency failure (a verdict that would contradict the
// construction, or a broken invariant).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ks33/cnf.hpp"
#include "ks33/coloring.hpp"
#include "ks33/protocol.hpp"
#include "ks33/ray_system.hpp"
#include "ks33/rng.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_inconsistent = 2;

ks33::ConstraintMode mode_from(const std::string& name) {
    return name == "triples_and_pairs" ? ks33::ConstraintMode::triples_and_pairs
                                       : ks33::ConstraintMode::triples_only;
}

void print_pattern(std::ostream& os, const std::uint8_t* bits, int n) {
    for (int i = 0; i < n; ++i) {
        if (i) os << " ";
        os << int(bits[i]);
    }
}

int cmd_verify(const ks33::RaySystem& rs, const std::vector<ks33::Basis>& bases,
               const std::string& mode_name, int threads, int frontier_depth) {
    std::vector<std::array<int, 2>> extra;
    if (mode_from(mode_name) == ks33::ConstraintMode::triples_and_pairs)
        extra = ks33::uncovered_orthogonal_pairs(rs, bases);
    ks33::SearchOptions opts;
    opts.threads = threads;
    opts.frontier_depth = frontier_depth;
    ks33::SearchReport rep = ks33::solve_coloring(bases, extra, opts);
    std::cout << "mode " << mode_name << "\n"
              << "result " << (rep.satisfiable ? "SAT" : "UNSAT") << "\n"
              << "nodes " << rep.nodes_visited << "\n"
              << "max depth " << rep.max_depth << "\n";
    if (rep.satisfiable) {
        std::cout << "witness " << rep.witness->str() << "\n";
        return exit_inconsistent; // a coloring would contradict the construction
    }
    return exit_ok;
}

int cmd_maxsat(const std::vector<ks33::Basis>& bases) {
    ks33::MaxSatReport rep = ks33::max_satisfiable(bases);
    int check = ks33::satisfied_count(rep.witness, bases);
    std::cout << "bases " << bases.size() << "\n"
              << "max satisfiable " << rep.best_count << "\n"
              << "dropped " << rep.dropped << "\n"
              << "witness " << rep.witness.str() << "\n"
              << "witness satisfies " << check << "\n"
              << "nodes " << rep.nodes_visited << "\n";
    return check == rep.best_count ? exit_ok : exit_inconsistent;
}

int cmd_refute(const std::vector<ks33::Basis>& bases, const std::string& source,
               const std::string& file, std::uint64_t seed) {
    ks33::Predictor p;
    if (source == "all_ones") {
        p.theta = ks33::Assignment::all_ones();
    } else if (source == "all_zeros") {
        p.theta = ks33::Assignment::all_zeros();
    } else if (source == "random") {
        ks33::SplitMix64 prng = ks33::SplitMix64::substream(seed, 0);
        p.theta = ks33::Assignment::random(prng);
    } else { // file
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open predictor file '" << file << "'\n";
            return exit_usage;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        p.theta = ks33::Assignment::from_string(buf.str());
    }
    ks33::SplitMix64 meas = ks33::SplitMix64::substream(seed, 1);
    ks33::RefutationRecord rec = ks33::refute(p, bases, meas);
    const ks33::Basis& basis = bases[static_cast<std::size_t>(rec.key) - 1];
    std::cout << "predictor " << source << "\n"
              << "key " << rec.key << "\n"
              << "basis";
    for (int id : basis.ids) std::cout << " " << id;
    if (basis.is_triad()) {
        std::cout << " (triad)\n";
    } else {
        std::cout << " (pair, completion ";
        std::cout << basis.completion << ")\n";
    }
    std::cout << "predicted ";
    print_pattern(std::cout, rec.predicted.data(),
                  static_cast<int>(rec.predicted.size()));
    std::cout << "\nmeasured ";
    print_pattern(std::cout, rec.measured.data(), 3);
    std::cout << "\n";
    return exit_ok;
}

int cmd_simulate(const ks33::RaySystem& rs, const std::vector<ks33::Basis>& bases,
                 std::uint64_t trials, std::uint64_t seed,
                 const std::string& schedule_name, int threads, bool records) {
    ks33::Schedule schedule = schedule_name == "exhaustive_keys"
                                  ? ks33::Schedule::exhaustive_keys
                                  : ks33::Schedule::random;
    ks33::CampaignReport rep =
        ks33::run_campaign(rs, bases, trials, seed, schedule, threads, records);
    std::cout << rep.summary();
    if (records) {
        for (const auto& t : rep.trial_records)
            std::cout << ks33::record_json(t) << "\n";
        for (const auto& r : rep.refutation_records)
            std::cout << ks33::record_json(r) << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier and twin-experiment simulator for the 33-ray "
                 "squared-spin configuration"};
    app.require_subcommand(1);

    std::string format = "table";
    std::string mode_name = "triples_only";
    std::string schedule_name = "random";
    std::string predictor_source;
    std::string predictor_file;
    std::string cnf_output;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    int threads = 1;
    int frontier_depth = 8;
    bool records = false;

    auto* rays = app.add_subcommand("rays", "print the 33 rays");
    rays->add_option("--format", format, "table or records")
        ->check(CLI::IsMember({"table", "records"}));

    auto* triples = app.add_subcommand("triples", "print the 40 bases");
    triples->add_option("--format", format, "table or records")
        ->check(CLI::IsMember({"table", "records"}));

    auto* verify =
        app.add_subcommand("verify", "complete search for a valid assignment");
    verify->add_option("--mode", mode_name, "constraint mode")
        ->check(CLI::IsMember({"triples_only", "triples_and_pairs"}));
    verify->add_option("--threads", threads, "worker count (1 = sequential)");
    verify->add_option("--frontier-depth", frontier_depth,
                       "parallel split depth");

    auto* cnf = app.add_subcommand("cnf", "export the constraints as DIMACS");
    cnf->add_option("--mode", mode_name, "constraint mode")
        ->check(CLI::IsMember({"triples_only", "triples_and_pairs"}));
    cnf->add_option("--output", cnf_output, "write to a file instead of stdout");

    auto* maxsat =
        app.add_subcommand("maxsat", "maximum simultaneously satisfiable bases");

    auto* simulate = app.add_subcommand("simulate", "run a seeded campaign");
    simulate->add_option("--trials", trials, "number of trials")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "campaign seed")->required();
    simulate->add_option("--schedule", schedule_name, "trial schedule")
        ->check(CLI::IsMember({"random", "exhaustive_keys"}));
    simulate->add_option("--threads", threads, "worker count");
    simulate->add_flag("--records", records, "append per-trial records");

    auto* refute = app.add_subcommand("refute", "refute a deterministic predictor");
    refute->add_option("--predictor", predictor_source, "predictor source")
        ->required()
        ->check(CLI::IsMember({"all_ones", "all_zeros", "random", "file"}));
    refute->add_option("--file", predictor_file, "predictor file (33 bits)");
    refute->add_option("--seed", seed, "measurement seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (*refute && predictor_source == "file" && predictor_file.empty()) {
        std::cerr << "error: --predictor file requires --file\n";
        return exit_usage;
    }

    try {
        ks33::RaySystem rs = ks33::build_ray_system();
        std::vector<ks33::Basis> bases = ks33::enumerate_bases(rs);

        if (*rays) {
            std::cout << (format == "records" ? ks33::rays_records(rs)
                                              : ks33::rays_table(rs));
            return exit_ok;
        }
        if (*triples) {
            std::cout << (format == "records" ? ks33::bases_records(bases)
                                              : ks33::bases_table(bases));
            return exit_ok;
        }
        if (*verify)
            return cmd_verify(rs, bases, mode_name, threads, frontier_depth);
        if (*cnf) {
            std::string text =
                ks33::to_dimacs(ks33::export_dimacs(rs, bases, mode_from(mode_name)));
            if (cnf_output.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(cnf_output, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot write '" << cnf_output << "'\n";
                    return exit_usage;
                }
                out << text;
            }
            return exit_ok;
        }
        if (*maxsat) return cmd_maxsat(bases);
        if (*simulate)
            return cmd_simulate(rs, bases, trials, seed, schedule_name, threads,
                                records);
        if (*refute)
            return cmd_refute(bases, predictor_source, predictor_file, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_inconsistent;
    }
    return exit_usage;
}
