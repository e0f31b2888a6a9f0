#pragma once

// Philox4x32-10 counter-based RNG (Salmon, Moraes, Dror, Shaw: "Parallel
// random numbers: as easy as 1, 2, 3") and a coin stream on top of it.
// Counter-based means toss i of path j is a pure function of (seed, j, i),
// so any partition of paths across threads produces identical draws.

#include <array>
#include <cstdint>

#include "model.hpp"

namespace cpdo {

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t m0 = 0xD2511F53ull * ctr[0];
    const std::uint64_t m1 = 0xCD9E8D57ull * ctr[2];
    ctr = {static_cast<std::uint32_t>(m1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(m1),
           static_cast<std::uint32_t>(m0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(m0)};
}

}  // namespace detail

inline std::array<std::uint32_t, 4> philox4x32_10(
    std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {  // Weyl key schedule between rounds
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        detail::philox_round(ctr, key);
    }
    return ctr;
}

// One lazily generated coin sequence per (seed, path_id). Tosses are indexed
// from 0; four tosses per Philox block, refilled on demand. Random access is
// O(1), sequential use touches Philox once per 4 tosses.
class CoinStream {
  public:
    CoinStream(std::uint64_t seed, std::uint64_t path_id, double p_heads)
        : seed_(seed), path_(path_id) {
        if (!(p_heads >= 0.0 && p_heads <= 1.0))
            throw validation_error("p_heads must lie in [0, 1]");
        // threshold in [0, 2^32]; the compare is done in 64 bits so p = 1
        // really means always-heads
        threshold_ = static_cast<std::uint64_t>(p_heads * 4294967296.0);
    }

    CoinOutcome toss(std::uint64_t index) {
        const std::uint64_t block = index >> 2;
        if (block != cached_block_ || !cache_valid_) {
            cache_ = philox4x32_10(
                {static_cast<std::uint32_t>(block),
                 static_cast<std::uint32_t>(block >> 32),
                 static_cast<std::uint32_t>(path_),
                 static_cast<std::uint32_t>(path_ >> 32)},
                {static_cast<std::uint32_t>(seed_),
                 static_cast<std::uint32_t>(seed_ >> 32)});
            cached_block_ = block;
            cache_valid_ = true;
        }
        const std::uint64_t draw = cache_[index & 3];
        return draw < threshold_ ? heads : tails;
    }

    std::uint64_t threshold() const { return threshold_; }

  private:
    std::uint64_t seed_;
    std::uint64_t path_;
    std::uint64_t threshold_;
    std::uint64_t cached_block_ = 0;
    bool cache_valid_ = false;
    std::array<std::uint32_t, 4> cache_{};
};

}  // namespace cpdo
