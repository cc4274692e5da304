#ifndef SEQWLS_RNG_HPP
#define SEQWLS_RNG_HPP

#include <cstdint>

namespace seqwls {

/// Purpose tags used to derive independent substreams from one base seed.
enum class StreamPurpose : std::uint64_t {
    Sampling = 1,
    TreeGrowth = 2,
    Testing = 3,
};

/// Counter-based splittable generator. A stream is identified by
/// (seed, stream id, purpose); identical identifiers reproduce identical
/// draw sequences, and distinct identifiers give statistically independent
/// streams without any draw-order coupling between trials.
///
/// Output i is mix64(key + i * gamma) with a fixed odd increment, so the
/// state is a pure counter and streams can be created cheaply anywhere.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0,
              StreamPurpose purpose = StreamPurpose::Sampling)
        : state_(derive_key(seed, stream_id, static_cast<std::uint64_t>(purpose))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in {0, ..., n-1} (Lemire rejection).
    std::uint64_t next_below(std::uint64_t n) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0ULL - n) % n;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform integer in {lo, ..., hi} inclusive.
    int next_int_in(int lo, int hi) {
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        // Stafford's Mix13 finalizer.
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t id, std::uint64_t purpose) {
        std::uint64_t k = mix64(seed + 0x632be59bd9b4e019ULL);
        k = mix64(k ^ (id + 0x9e3779b97f4a7c15ULL));
        k = mix64(k ^ (purpose + 0xd1b54a32d192ed03ULL));
        return k;
    }

    std::uint64_t state_;
};

} // namespace seqwls

#endif
