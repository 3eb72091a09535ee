#pragma once

#include <cstdint>
#include <stdexcept>

namespace ks33 {

/**
 * SplitMix64: the standard 64-bit mixer-based generator (Steele, Lea and
 * Flood's SplittableRandom finalizer). State advances by the golden-gamma
 * constant; each output is the mixed state. Chosen because the whole
 * algorithm fits in a dozen lines, has published test vectors, and supports
 * cheap independent substreams, which keeps every seeded run reproducible
 * bit for bit across platforms and thread counts.
 *
 * Reference vectors (seed 0): 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4,
 * 0x06C45D188009454F, ... (pinned in the unit tests and the README).
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // next() reduced mod n. The modulo bias is below 2^-45 for every n this
    // project uses (n <= 40) and the reduction is trivially portable.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("bounded: n must be positive");
        return next() % n;
    }

    /**
     * Independent substream for item `index` of a seeded run: a SplitMix64
     * whose initial state is the (index+1)-th output of SplitMix64(seed).
     * Parallel loops give item i substream(seed, i), so results never depend
     * on scheduling or thread count.
     */
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 base(seed + 0x9E3779B97F4A7C15ULL * index);
        return SplitMix64(base.next());
    }

private:
    std::uint64_t state_;
};

} // namespace ks33
