#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ks33/coloring.hpp"
#include "ks33/ray_system.hpp"
#include "ks33/rng.hpp"

namespace ks33 {

/** A deterministic response function on the 33 rays: what a hidden-variable
 *  model claims each squared-spin measurement would read. */
struct Predictor {
    Assignment theta;

    friend bool operator==(const Predictor&, const Predictor&) = default;
};

/**
 * One twinned measurement: A measures a full basis (slot order = ascending
 * ray ids, completion last for pair bases), B measures a single ray.
 * twin_position is the 1-based slot whose ray B shares, if any; the twin
 * correlation then forces b_outcome to copy that slot.
 */
struct TrialRecord {
    int basis_rank = 0;
    std::array<std::uint8_t, 3> a_outcome{};
    int b_direction = 0; // ray id
    std::uint8_t b_outcome = 0;
    std::optional<int> twin_position;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/**
 * The observable contradiction for one predictor: walking the bases in rank
 * order, `key` is the first whose predicted values break the one-zero rule,
 * `predicted` are the predictor's bits there (2 for a pair basis, 3 for a
 * triad) and `measured` is what the experiment shows instead, always a valid
 * pattern.
 */
struct RefutationRecord {
    int key = 0;
    std::vector<std::uint8_t> predicted;
    std::array<std::uint8_t, 3> measured{};

    friend bool operator==(const RefutationRecord&, const RefutationRecord&) = default;
};

/** An event in flat spacetime; c is the signal speed in meters/second. */
struct SpacetimeEvent {
    std::array<double, 3> r{};
    double t = 0;
    double c = 299792458.0;
};

// True iff neither event lies strictly inside the other's light cone:
// |r1 - r2|^2 - c^2 (t1 - t2)^2 >= 0 (on-cone counts as separated).
// Mismatched or nonpositive c raises std::invalid_argument.
bool spacelike_separated(const SpacetimeEvent& e1, const SpacetimeEvent& e2);

// One of (0,1,1), (1,0,1), (1,1,0), uniform: the zero slot is bounded(3).
std::array<std::uint8_t, 3> sample_triple_outcome(SplitMix64& rng);

/**
 * Runs one trial: draws A's pattern for the basis with this rank, then B's
 * outcome along b_direction (copied from the shared slot if there is one,
 * otherwise an independent draw with P(0) = 1/3 via bounded(3)). Unknown
 * rank or ray id raises std::invalid_argument.
 */
TrialRecord run_trial(const RaySystem& rs, std::span<const Basis> bases,
                      int basis_rank, int b_direction, SplitMix64& rng);

/**
 * Mechanical refutation of a predictor: key = rank of the first violated
 * basis (guaranteed to exist for the full basis list; its absence raises
 * std::logic_error since it would disprove the non-colorability result),
 * measured = a fresh valid pattern.
 */
RefutationRecord refute(const Predictor& p, std::span<const Basis> bases,
                        SplitMix64& rng);

enum class Schedule { random, exhaustive_keys };

struct CampaignReport {
    Schedule schedule = Schedule::random;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    // random schedule: per-trial measurement statistics
    std::array<std::uint64_t, 3> zero_slot_counts{};
    std::uint64_t invalid_patterns = 0;
    std::uint64_t twin_trials = 0;
    std::uint64_t twin_agreements = 0;
    std::uint64_t nontwin_trials = 0;
    std::uint64_t nontwin_b_zero = 0;

    // exhaustive_keys schedule: refutation keys per random predictor
    std::array<std::uint64_t, 41> key_histogram{};

    // populated only when records are requested
    std::vector<TrialRecord> trial_records;
    std::vector<RefutationRecord> refutation_records;

    double twin_agreement_rate() const {
        return twin_trials == 0
                   ? 1.0
                   : static_cast<double>(twin_agreements) /
                         static_cast<double>(twin_trials);
    }

    std::string summary() const;
};

/**
 * Deterministic campaign: trial i draws everything from substream(seed, i).
 * random schedule: basis rank = 1 + bounded(#bases), B's ray = 1 +
 * bounded(#rays), then run_trial. exhaustive_keys schedule: a 33-bit random
 * predictor, then its refutation. Thread count never changes the report.
 */
CampaignReport run_campaign(const RaySystem& rs, std::span<const Basis> bases,
                            std::uint64_t n_trials, std::uint64_t seed,
                            Schedule schedule, int threads = 1,
                            bool keep_records = false);

std::string record_json(const TrialRecord& t);
std::string record_json(const RefutationRecord& r);

} // namespace ks33
