#include "ks33/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ks33 {

using nlohmann::json;

bool spacelike_separated(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
    if (e1.c != e2.c)
        throw std::invalid_argument("spacelike_separated: signal speeds differ");
    if (e1.c <= 0)
        throw std::invalid_argument("spacelike_separated: c must be positive");
    double rr = 0;
    for (int i = 0; i < 3; ++i) {
        double d = e1.r[static_cast<std::size_t>(i)] -
                   e2.r[static_cast<std::size_t>(i)];
        rr += d * d;
    }
    double ct = e1.c * (e1.t - e2.t);
    return rr - ct * ct >= 0;
}

std::array<std::uint8_t, 3> sample_triple_outcome(SplitMix64& rng) {
    std::array<std::uint8_t, 3> out{1, 1, 1};
    out[rng.bounded(3)] = 0;
    return out;
}

namespace {

const Basis& basis_at_rank(std::span<const Basis> bases, int rank) {
    // ranks are 1..n in rank order for enumerate_bases output; fall back to a
    // scan so re-ranked sublists still resolve
    if (rank >= 1 && rank <= static_cast<int>(bases.size()) &&
        bases[static_cast<std::size_t>(rank) - 1].rank == rank)
        return bases[static_cast<std::size_t>(rank) - 1];
    for (const Basis& b : bases)
        if (b.rank == rank) return b;
    throw std::invalid_argument("unknown basis rank " + std::to_string(rank));
}

} // namespace

TrialRecord run_trial(const RaySystem& rs, std::span<const Basis> bases,
                      int basis_rank, int b_direction, SplitMix64& rng) {
    const Basis& basis = basis_at_rank(bases, basis_rank);
    if (b_direction < 1 || b_direction > static_cast<int>(rs.rays.size()))
        throw std::invalid_argument("unknown ray id " +
                                    std::to_string(b_direction));
    TrialRecord t;
    t.basis_rank = basis_rank;
    t.b_direction = b_direction;
    t.a_outcome = sample_triple_outcome(rng);
    for (int s = 0; s < basis.size(); ++s)
        if (basis.ids[static_cast<std::size_t>(s)] == b_direction)
            t.twin_position = s + 1;
    if (t.twin_position)
        t.b_outcome = t.a_outcome[static_cast<std::size_t>(*t.twin_position) - 1];
    else
        t.b_outcome = rng.bounded(3) == 0 ? 0 : 1;
    return t;
}

RefutationRecord refute(const Predictor& p, std::span<const Basis> bases,
                        SplitMix64& rng) {
    auto k = first_violated_basis(p.theta, bases);
    if (!k)
        throw std::logic_error(
            "refute: predictor satisfies every basis, which contradicts the "
            "non-colorability result");
    const Basis& basis = basis_at_rank(bases, *k);
    RefutationRecord r;
    r.key = *k;
    for (int id : basis.ids) r.predicted.push_back(p.theta.value(id));
    r.measured = sample_triple_outcome(rng);
    return r;
}

namespace {

struct Tally {
    std::array<std::uint64_t, 3> zero_slot{};
    std::uint64_t invalid = 0;
    std::uint64_t twin = 0;
    std::uint64_t twin_agree = 0;
    std::uint64_t nontwin = 0;
    std::uint64_t nontwin_zero = 0;
    std::array<std::uint64_t, 41> keys{};

    void add_trial(const TrialRecord& t) {
        if (!pattern_valid(t.a_outcome)) {
            ++invalid;
        } else {
            for (std::size_t s = 0; s < 3; ++s)
                if (t.a_outcome[s] == 0) ++zero_slot[s];
        }
        if (t.twin_position) {
            ++twin;
            twin_agree +=
                t.b_outcome ==
                t.a_outcome[static_cast<std::size_t>(*t.twin_position) - 1];
        } else {
            ++nontwin;
            nontwin_zero += t.b_outcome == 0;
        }
    }

    void merge(const Tally& o) {
        for (std::size_t s = 0; s < 3; ++s) zero_slot[s] += o.zero_slot[s];
        invalid += o.invalid;
        twin += o.twin;
        twin_agree += o.twin_agree;
        nontwin += o.nontwin;
        nontwin_zero += o.nontwin_zero;
        for (std::size_t k = 0; k < keys.size(); ++k) keys[k] += o.keys[k];
    }
};

} // namespace

CampaignReport run_campaign(const RaySystem& rs, std::span<const Basis> bases,
                            std::uint64_t n_trials, std::uint64_t seed,
                            Schedule schedule, int threads, bool keep_records) {
    if (n_trials < 1)
        throw std::invalid_argument("run_campaign: n_trials must be >= 1");
    CampaignReport rep;
    rep.schedule = schedule;
    rep.trials = n_trials;
    rep.seed = seed;
    if (keep_records) {
        if (schedule == Schedule::random)
            rep.trial_records.resize(n_trials);
        else
            rep.refutation_records.resize(n_trials);
    }
    Tally total;
    const auto run_one = [&](std::uint64_t i, Tally& t) {
        SplitMix64 rng = SplitMix64::substream(seed, i);
        if (schedule == Schedule::random) {
            int rank = static_cast<int>(1 + rng.bounded(bases.size()));
            int b_dir = static_cast<int>(1 + rng.bounded(rs.rays.size()));
            TrialRecord trial = run_trial(rs, bases, rank, b_dir, rng);
            t.add_trial(trial);
            if (keep_records) rep.trial_records[i] = std::move(trial);
        } else {
            Predictor p{Assignment::random(rng)};
            RefutationRecord r = refute(p, bases, rng);
            if (r.key >= 1 && r.key <= 40)
                ++t.keys[static_cast<std::size_t>(r.key)];
            if (keep_records) rep.refutation_records[i] = std::move(r);
        }
    };
#ifdef _OPENMP
#pragma omp parallel num_threads(std::max(1, threads))
    {
        Tally local;
#pragma omp for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n_trials); ++i)
            run_one(static_cast<std::uint64_t>(i), local);
#pragma omp critical
        total.merge(local);
    }
#else
    (void)threads;
    for (std::uint64_t i = 0; i < n_trials; ++i) run_one(i, total);
#endif
    rep.zero_slot_counts = total.zero_slot;
    rep.invalid_patterns = total.invalid;
    rep.twin_trials = total.twin;
    rep.twin_agreements = total.twin_agree;
    rep.nontwin_trials = total.nontwin;
    rep.nontwin_b_zero = total.nontwin_zero;
    rep.key_histogram = total.keys;
    return rep;
}

std::string CampaignReport::summary() const {
    std::ostringstream os;
    os << "schedule "
       << (schedule == Schedule::random ? "random" : "exhaustive_keys") << "\n"
       << "trials " << trials << "\n"
       << "seed " << seed << "\n";
    if (schedule == Schedule::random) {
        char rate[32];
        os << "a zero-slot counts " << zero_slot_counts[0] << " "
           << zero_slot_counts[1] << " " << zero_slot_counts[2] << "\n"
           << "invalid patterns " << invalid_patterns << "\n"
           << "twin trials " << twin_trials << "\n"
           << "twin agreements " << twin_agreements << "\n";
        std::snprintf(rate, sizeof rate, "%.6f", twin_agreement_rate());
        os << "twin agreement rate " << rate << "\n";
        std::snprintf(rate, sizeof rate, "%.6f",
                      nontwin_trials == 0
                          ? 0.0
                          : static_cast<double>(nontwin_b_zero) /
                                static_cast<double>(nontwin_trials));
        os << "non-twin b zero rate " << rate << " (" << nontwin_b_zero << "/"
           << nontwin_trials << ")\n";
    } else {
        os << "refutation keys\n";
        for (std::size_t k = 1; k < key_histogram.size(); ++k)
            if (key_histogram[k] != 0)
                os << "  key " << k << "  " << key_histogram[k] << "\n";
    }
    return os.str();
}

std::string record_json(const TrialRecord& t) {
    json j{{"rank", t.basis_rank},
           {"a", {t.a_outcome[0], t.a_outcome[1], t.a_outcome[2]}},
           {"b_direction", t.b_direction},
           {"b", t.b_outcome}};
    if (t.twin_position) j["twin_position"] = *t.twin_position;
    return j.dump();
}

std::string record_json(const RefutationRecord& r) {
    json j{{"key", r.key},
           {"predicted", r.predicted},
           {"measured", {r.measured[0], r.measured[1], r.measured[2]}}};
    return j.dump();
}

} // namespace ks33
