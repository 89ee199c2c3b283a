#ifndef CDFMR_PHILOX_HPP
#define CDFMR_PHILOX_HPP

#include <array>
#include <cstdint>

namespace cdfmr {

// Philox4x32-10 counter-based generator (Salmon et al. style). Each draw is
// a pure function of (seed, chunk, counter), so parallel substreams replay
// bit-identically regardless of worker count.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t chunk)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          chunk_(chunk)
    {
    }

    // Uniform double in (0, 1].
    double next_double()
    {
        if (cached_) {
            cached_ = false;
            return to_unit(cache_);
        }
        const auto out = block(counter_++);
        cache_ = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        cached_ = true;
        return to_unit((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
    }

private:
    static double to_unit(std::uint64_t x)
    {
        // 53 random bits, shifted into (0, 1] so log() is always finite.
        return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
    }

    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
    {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    std::array<std::uint32_t, 4> block(std::uint64_t draw) const
    {
        std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(draw), static_cast<std::uint32_t>(draw >> 32),
            static_cast<std::uint32_t>(chunk_), static_cast<std::uint32_t>(chunk_ >> 32)};
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(0xD2511F53u, ctr[0], hi0, lo0);
            mulhilo(0xCD9E8D57u, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return ctr;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t chunk_;
    std::uint64_t counter_ = 0;
    std::uint64_t cache_ = 0;
    bool cached_ = false;
};

} // namespace cdfmr

#endif
