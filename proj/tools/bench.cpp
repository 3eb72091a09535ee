// Times the sequential reference kernels against their OpenMP counterparts
// and verifies that both produce identical results (same histograms, same
// aggregates, same node counts). Exit 0 iff every comparison matches.

#include <chrono>
#include <cstdio>
#include <string>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "ks33/coloring.hpp"
#include "ks33/protocol.hpp"
#include "ks33/ray_system.hpp"

namespace {

template <class Fn>
auto timed(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count();
    return std::pair{std::move(result), s};
}

bool row(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %9.3f s %11.3f s %8.2fx   %s\n", name, serial_s,
                parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0,
                identical ? "yes" : "NO");
    return identical;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial versus OpenMP kernel comparison"};
    std::uint64_t sweep_trials = 1000000;
    std::uint64_t campaign_trials = 100000;
    std::uint64_t seed = 42;
    int threads =
#ifdef _OPENMP
        omp_get_max_threads();
#else
        2;
#endif
    int frontier_depth = 8;
    app.add_option("--sweep-trials", sweep_trials, "assignments to sweep");
    app.add_option("--campaign-trials", campaign_trials, "campaign length");
    app.add_option("--seed", seed, "seed for all kernels");
    app.add_option("--threads", threads, "parallel worker count");
    app.add_option("--frontier-depth", frontier_depth, "search split depth");
    CLI11_PARSE(app, argc, argv);

#ifndef _OPENMP
    std::printf("note: built without OpenMP; the parallel path runs serially\n");
#endif
    ks33::RaySystem rs = ks33::build_ray_system();
    std::vector<ks33::Basis> bases = ks33::enumerate_bases(rs);
    std::printf("%-28s %11s %13s %9s   %s\n", "kernel", "serial", "parallel",
                "speedup", "identical");

    bool ok = true;
    {
        auto [a, ta] = timed([&] {
            return ks33::sweep_assignments(bases, sweep_trials, seed, 1);
        });
        auto [b, tb] = timed([&] {
            return ks33::sweep_assignments(bases, sweep_trials, seed, threads);
        });
        bool same = a.histogram == b.histogram &&
                    a.none_violated == b.none_violated;
        std::string label = "sweep " + std::to_string(sweep_trials);
        ok &= row(label.c_str(), ta, tb, same);
    }
    {
        auto [a, ta] = timed([&] {
            return ks33::run_campaign(rs, bases, campaign_trials, seed,
                                      ks33::Schedule::random, 1);
        });
        auto [b, tb] = timed([&] {
            return ks33::run_campaign(rs, bases, campaign_trials, seed,
                                      ks33::Schedule::random, threads);
        });
        bool same = a.zero_slot_counts == b.zero_slot_counts &&
                    a.twin_trials == b.twin_trials &&
                    a.twin_agreements == b.twin_agreements &&
                    a.nontwin_b_zero == b.nontwin_b_zero &&
                    a.invalid_patterns == b.invalid_patterns;
        std::string label = "campaign random " + std::to_string(campaign_trials);
        ok &= row(label.c_str(), ta, tb, same);
    }
    {
        auto [a, ta] = timed([&] {
            return ks33::run_campaign(rs, bases, campaign_trials, seed,
                                      ks33::Schedule::exhaustive_keys, 1);
        });
        auto [b, tb] = timed([&] {
            return ks33::run_campaign(rs, bases, campaign_trials, seed,
                                      ks33::Schedule::exhaustive_keys, threads);
        });
        bool same = a.key_histogram == b.key_histogram;
        std::string label = "campaign keys " + std::to_string(campaign_trials);
        ok &= row(label.c_str(), ta, tb, same);
    }
    {
        auto [a, ta] = timed([&] { return ks33::solve_coloring(bases); });
        ks33::SearchOptions opts;
        opts.threads = threads;
        opts.frontier_depth = frontier_depth;
        auto [b, tb] =
            timed([&] { return ks33::solve_coloring(bases, {}, opts); });
        ok &= row("search (full system)", ta, tb, a.same_result(b));
        std::printf("    nodes %llu, max depth %d, verdict %s\n",
                    static_cast<unsigned long long>(a.nodes_visited),
                    a.max_depth, a.satisfiable ? "SAT" : "UNSAT");
    }
    if (!ok) {
        std::printf("MISMATCH: a parallel kernel diverged from the reference\n");
        return 2;
    }
    return 0;
}
