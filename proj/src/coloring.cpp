#include "ks33/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ks33 {

Assignment Assignment::all_ones() {
    Assignment a;
    a.bits.fill(1);
    return a;
}

Assignment Assignment::all_zeros() { return {}; }

Assignment Assignment::random(SplitMix64& rng) {
    Assignment a;
    for (auto& b : a.bits) b = static_cast<std::uint8_t>(rng.next() & 1);
    return a;
}

Assignment Assignment::from_string(std::string_view text) {
    Assignment a;
    int n = 0;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c != '0' && c != '1')
            throw std::invalid_argument(
                std::string("predictor: unexpected character '") + c + "'");
        if (n == ray_count)
            throw std::invalid_argument("predictor: more than 33 bits");
        a.bits[static_cast<std::size_t>(n++)] = (c == '1');
    }
    if (n != ray_count)
        throw std::invalid_argument("predictor: expected 33 bits, got " +
                                    std::to_string(n));
    return a;
}

std::string Assignment::str() const {
    std::string s;
    s.reserve(ray_count);
    for (auto b : bits) s += static_cast<char>('0' + b);
    return s;
}

bool pattern_valid(const std::array<std::uint8_t, 3>& t) {
    return t[0] + t[1] + t[2] == 2;
}

bool basis_violated(const Basis& b, const Assignment& a) {
    if (b.is_triad())
        return a.value(b.ids[0]) + a.value(b.ids[1]) + a.value(b.ids[2]) != 2;
    return a.value(b.ids[0]) == 0 && a.value(b.ids[1]) == 0;
}

std::optional<int> first_violated_basis(const Assignment& a,
                                        std::span<const Basis> bases) {
    for (const Basis& b : bases)
        if (basis_violated(b, a)) return b.rank;
    return std::nullopt;
}

int satisfied_count(const Assignment& a, std::span<const Basis> bases) {
    int n = 0;
    for (const Basis& b : bases) n += !basis_violated(b, a);
    return n;
}

namespace {

// Basis list compiled to 0-based index form for the search inner loop.
struct Constraints {
    std::vector<std::array<int, 3>> triads;
    std::vector<std::array<int, 2>> pairs; // not-both-zero
    std::array<std::vector<int>, ray_count> ray_triads{};
    std::array<std::vector<int>, ray_count> ray_pairs{}; // partner rays
};

Constraints compile(std::span<const Basis> bases,
                    std::span<const std::array<int, 2>> extra_pairs) {
    Constraints c;
    auto check_id = [](int id) {
        if (id < 1 || id > ray_count)
            throw std::invalid_argument("constraint ray id out of range");
    };
    for (const Basis& b : bases) {
        for (int id : b.ids) check_id(id);
        if (b.is_triad())
            c.triads.push_back({b.ids[0] - 1, b.ids[1] - 1, b.ids[2] - 1});
        else
            c.pairs.push_back({b.ids[0] - 1, b.ids[1] - 1});
    }
    for (const auto& p : extra_pairs) {
        check_id(p[0]);
        check_id(p[1]);
        c.pairs.push_back({p[0] - 1, p[1] - 1});
    }
    for (int t = 0; t < static_cast<int>(c.triads.size()); ++t)
        for (int r : c.triads[static_cast<std::size_t>(t)])
            c.ray_triads[static_cast<std::size_t>(r)].push_back(t);
    for (const auto& p : c.pairs) {
        c.ray_pairs[static_cast<std::size_t>(p[0])].push_back(p[1]);
        c.ray_pairs[static_cast<std::size_t>(p[1])].push_back(p[0]);
    }
    return c;
}

/**
 * Backtracking state. assign() sets one ray and runs unit propagation to a
 * fixed point or a conflict; undo_to() rewinds to a trail mark. dfs() is the
 * sequential reference search: branch on the lowest unassigned ray, value 1
 * before value 0, one node counted per call.
 */
struct Searcher {
    const Constraints& c;
    std::array<std::int8_t, ray_count> value; // -1 unassigned
    std::vector<std::array<int, 2>> tcount;   // per triad {zeros, ones}
    std::vector<int> trail;
    std::vector<std::array<int, 2>> pending; // propagation queue scratch
    std::uint64_t nodes = 0;
    int max_depth = 0;
    std::optional<Assignment> witness;

    explicit Searcher(const Constraints& cc) : c(cc) {
        value.fill(-1);
        tcount.assign(c.triads.size(), {0, 0});
    }

    bool assign(int ray, int v) {
        pending.clear();
        pending.push_back({ray, v});
        for (std::size_t qi = 0; qi < pending.size(); ++qi) {
            auto [r, val] = pending[qi];
            if (value[static_cast<std::size_t>(r)] != -1) {
                if (value[static_cast<std::size_t>(r)] != val) return false;
                continue;
            }
            value[static_cast<std::size_t>(r)] = static_cast<std::int8_t>(val);
            trail.push_back(r);
            // commit every counter before any conflict return, so undo_to()
            // (which reverses all of them per trail entry) rewinds exactly
            for (int t : c.ray_triads[static_cast<std::size_t>(r)])
                ++tcount[static_cast<std::size_t>(t)][val == 0 ? 0 : 1];
            if (val == 0)
                for (int p : c.ray_pairs[static_cast<std::size_t>(r)]) {
                    if (value[static_cast<std::size_t>(p)] == 0) return false;
                    if (value[static_cast<std::size_t>(p)] == -1)
                        pending.push_back({p, 1});
                }
            for (int t : c.ray_triads[static_cast<std::size_t>(r)]) {
                const auto& tc = tcount[static_cast<std::size_t>(t)];
                if (tc[0] >= 2 || tc[1] == 3) return false;
                const auto& tri = c.triads[static_cast<std::size_t>(t)];
                if (val == 0) {
                    // the triad's zero is spent: everyone else reads 1
                    for (int m : tri)
                        if (value[static_cast<std::size_t>(m)] == -1)
                            pending.push_back({m, 1});
                } else if (tc[1] == 2 && tc[0] == 0) {
                    // two ones placed: the remaining member must be the zero
                    for (int m : tri)
                        if (value[static_cast<std::size_t>(m)] == -1)
                            pending.push_back({m, 0});
                }
            }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            int r = trail.back();
            trail.pop_back();
            int v = value[static_cast<std::size_t>(r)];
            for (int t : c.ray_triads[static_cast<std::size_t>(r)])
                --tcount[static_cast<std::size_t>(t)][v == 0 ? 0 : 1];
            value[static_cast<std::size_t>(r)] = -1;
        }
    }

    int lowest_unassigned() const {
        for (int r = 0; r < ray_count; ++r)
            if (value[static_cast<std::size_t>(r)] == -1) return r;
        return -1;
    }

    Assignment snapshot() const {
        Assignment a;
        for (int r = 0; r < ray_count; ++r)
            a.bits[static_cast<std::size_t>(r)] =
                static_cast<std::uint8_t>(value[static_cast<std::size_t>(r)]);
        return a;
    }

    bool dfs(int depth) {
        ++nodes;
        max_depth = std::max(max_depth, depth);
        int ray = lowest_unassigned();
        if (ray < 0) {
            witness = snapshot();
            return true;
        }
        for (int v : {1, 0}) {
            std::size_t mark = trail.size();
            if (assign(ray, v) && dfs(depth + 1)) return true;
            undo_to(mark);
        }
        return false;
    }
};

/**
 * Parallel split of the same tree. The expansion walk mimics dfs() down to
 * `limit` decisions but, instead of entering a subtree at that depth, records
 * it as a work item (its decision path plus the expansion's node count and
 * max depth at that moment). Subtrees then run independently; merge() picks
 * the counts the sequential run would have produced:
 *
 *  - sequential visits internal (above-limit) nodes and subtrees in the same
 *    preorder, so the first satisfiable subtree s in item order is exactly
 *    where dfs() would stop, with nodes = internal nodes before s + all of
 *    subtrees before s + subtree s up to its witness;
 *  - a witness found above the limit ends the expansion immediately; items
 *    already emitted precede it in preorder, so if one of them is
 *    satisfiable the sequential run would have stopped there instead.
 */
struct FrontierItem {
    std::vector<std::array<int, 2>> decisions;
    std::uint64_t nodes_before = 0;
    int max_depth_before = 0;
};

enum class Walk { exhausted, sat, frontier };

struct Expander {
    Searcher s;
    int limit;
    std::vector<FrontierItem> items;
    std::vector<std::array<int, 2>> decisions;

    Expander(const Constraints& c, int lim) : s(c), limit(lim) {}

    Walk walk(int depth) {
        if (depth == limit) {
            items.push_back({decisions, s.nodes, s.max_depth});
            return Walk::frontier;
        }
        ++s.nodes;
        s.max_depth = std::max(s.max_depth, depth);
        int ray = s.lowest_unassigned();
        if (ray < 0) {
            s.witness = s.snapshot();
            return Walk::sat;
        }
        bool any_frontier = false;
        for (int v : {1, 0}) {
            std::size_t mark = s.trail.size();
            decisions.push_back({ray, v});
            if (s.assign(ray, v)) {
                Walk w = walk(depth + 1);
                if (w == Walk::sat) return Walk::sat;
                any_frontier |= (w == Walk::frontier);
            }
            s.undo_to(mark);
            decisions.pop_back();
        }
        return any_frontier ? Walk::frontier : Walk::exhausted;
    }
};

struct SubResult {
    bool sat = false;
    std::optional<Assignment> witness;
    std::uint64_t nodes = 0;
    int max_depth = 0;
};

// Splitting deeper than this is clamped: with few constraints the frontier
// above depth d holds up to 2^d items, and nothing is gained by splitting
// into more subtrees than any machine has cores.
constexpr int max_split_depth = 14;

SearchReport solve_parallel(const Constraints& c, int limit, int threads) {
    Expander ex(c, limit);
    Walk top = ex.walk(0);

    const std::size_t m = ex.items.size();
    std::vector<SubResult> sub(m);
    std::atomic<bool> diverged{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long long i = 0; i < static_cast<long long>(m); ++i) {
        if (diverged.load(std::memory_order_relaxed)) continue;
        const FrontierItem& item = ex.items[static_cast<std::size_t>(i)];
        Searcher s(c);
        bool ok = true;
        for (auto [ray, v] : item.decisions)
            if (!s.assign(ray, v)) {
                ok = false;
                break;
            }
        if (!ok) { // every recorded path replays: its assigns all succeeded
            diverged.store(true, std::memory_order_relaxed);
            continue;
        }
        s.nodes = 0;
        s.max_depth = 0;
        bool sat = s.dfs(limit);
        sub[static_cast<std::size_t>(i)] = {sat, s.witness, s.nodes, s.max_depth};
    }
    (void)threads;
    if (diverged.load()) throw std::logic_error("frontier replay diverged");

    SearchReport rep;
    std::uint64_t nodes = 0;
    int max_depth = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (sub[i].sat) {
            rep.satisfiable = true;
            rep.witness = sub[i].witness;
            rep.nodes_visited =
                ex.items[i].nodes_before + nodes + sub[i].nodes;
            rep.max_depth = std::max({ex.items[i].max_depth_before, max_depth,
                                      sub[i].max_depth});
            return rep;
        }
        nodes += sub[i].nodes;
        max_depth = std::max(max_depth, sub[i].max_depth);
    }
    rep.nodes_visited = ex.s.nodes + nodes;
    rep.max_depth = std::max(ex.s.max_depth, max_depth);
    if (top == Walk::sat) {
        rep.satisfiable = true;
        rep.witness = ex.s.witness;
    }
    return rep;
}

} // namespace

SearchReport solve_coloring(std::span<const Basis> bases,
                            std::span<const std::array<int, 2>> extra_pairs,
                            const SearchOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    Constraints c = compile(bases, extra_pairs);
    SearchReport rep;
    if (opts.threads <= 1) {
        Searcher s(c);
        rep.satisfiable = s.dfs(0);
        rep.witness = s.witness;
        rep.nodes_visited = s.nodes;
        rep.max_depth = s.max_depth;
    } else {
        rep = solve_parallel(c, std::clamp(opts.frontier_depth, 0, max_split_depth),
                             opts.threads);
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

MaxSatReport max_satisfiable(std::span<const Basis> bases) {
    const int n = static_cast<int>(bases.size());
    MaxSatReport rep;
    for (int k = 0; k <= n; ++k) {
        // all k-subsets of dropped positions, ascending lexicographic
        std::vector<int> drop(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) drop[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<Basis> kept;
            kept.reserve(static_cast<std::size_t>(n - k));
            for (int i = 0, d = 0; i < n; ++i) {
                if (d < k && drop[static_cast<std::size_t>(d)] == i) ++d;
                else kept.push_back(bases[static_cast<std::size_t>(i)]);
            }
            SearchReport r = solve_coloring(kept);
            rep.nodes_visited += r.nodes_visited;
            if (r.satisfiable) {
                rep.best_count = n - k;
                rep.witness = *r.witness;
                rep.dropped = k;
                return rep;
            }
            // advance the combination
            int pos = k - 1;
            while (pos >= 0 &&
                   drop[static_cast<std::size_t>(pos)] == n - k + pos)
                --pos;
            if (pos < 0) break;
            ++drop[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                drop[static_cast<std::size_t>(i)] =
                    drop[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return rep; // unreachable: the empty subset is always satisfiable
}

SweepReport sweep_assignments(std::span<const Basis> bases, std::uint64_t trials,
                              std::uint64_t seed, int threads) {
    for (const Basis& b : bases)
        if (b.rank < 1 || b.rank > 40)
            throw std::invalid_argument("sweep: basis ranks must be 1..40");
    SweepReport rep;
    rep.trials = trials;
    rep.seed = seed;
#ifdef _OPENMP
#pragma omp parallel num_threads(std::max(1, threads))
    {
        std::array<std::uint64_t, 41> local{};
        std::uint64_t local_none = 0;
#pragma omp for schedule(static)
        for (long long i = 0; i < static_cast<long long>(trials); ++i) {
            SplitMix64 rng =
                SplitMix64::substream(seed, static_cast<std::uint64_t>(i));
            Assignment a = Assignment::random(rng);
            if (auto k = first_violated_basis(a, bases))
                ++local[static_cast<std::size_t>(*k)];
            else
                ++local_none;
        }
#pragma omp critical
        {
            for (std::size_t r = 0; r < local.size(); ++r)
                rep.histogram[r] += local[r];
            rep.none_violated += local_none;
        }
    }
#else
    (void)threads;
    for (std::uint64_t i = 0; i < trials; ++i) {
        SplitMix64 rng = SplitMix64::substream(seed, i);
        Assignment a = Assignment::random(rng);
        if (auto k = first_violated_basis(a, bases))
            ++rep.histogram[static_cast<std::size_t>(*k)];
        else
            ++rep.none_violated;
    }
#endif
    return rep;
}

} // namespace ks33
