#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "errors.hpp"

namespace confcauchy {

// Counter-based random numbers (Philox 2x64, 10 rounds).
//
// Every draw is a pure function of (key, stream, block, lane), so any
// sampling routine that derives its stream from (seed, operation tag,
// path index) produces the same numbers no matter how work is scheduled
// across threads. That property carries the determinism contract of the
// whole library.

namespace detail {

inline constexpr std::uint64_t philox_m0   = 0xD2B74407B1CE6E93ull;
inline constexpr std::uint64_t philox_weyl = 0x9E3779B97F4A7C15ull;

inline void philox_round(std::uint64_t& x0, std::uint64_t& x1,
                         std::uint64_t key) {
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(philox_m0) * x0;
    const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(prod);
    x0 = hi ^ key ^ x1;
    x1 = lo;
}

} // namespace detail

/// One 128-bit Philox2x64-10 block: bijection of (c0, c1) for a fixed key.
struct philox_block {
    std::uint64_t w0;
    std::uint64_t w1;
};

inline philox_block philox2x64_10(std::uint64_t key, std::uint64_t c0,
                                  std::uint64_t c1) {
    std::uint64_t x0 = c0, x1 = c1, k = key;
    for (int round = 0; round < 10; ++round) {
        detail::philox_round(x0, x1, k);
        k += detail::philox_weyl;
    }
    return {x0, x1};
}

/// Stream tags, one per sampling operation. The 64-bit stream id is
/// (tag << 48) | index, so each operation owns 2^48 independent streams
/// (per path / per coordinate), each 2^64 blocks long.
enum class stream_tag : std::uint16_t {
    fbm_path         = 1,
    fbm_marginal     = 2,
    stable_increment = 3,
    levy_path        = 4,
    mc_free          = 5,
    mc_killed        = 6,
    generic_test     = 7,
};

inline std::uint64_t make_stream(stream_tag tag, std::uint64_t index) {
    if (index >> 48)
        throw contract_error("stream index exceeds 2^48");
    return (static_cast<std::uint64_t>(tag) << 48) | index;
}

/// Deterministic stream of doubles drawn block-by-block from Philox.
class counter_rng {
public:
    counter_rng(std::uint64_t seed, std::uint64_t stream)
        : key_(seed), stream_(stream) {}

    counter_rng(std::uint64_t seed, stream_tag tag, std::uint64_t index = 0)
        : counter_rng(seed, make_stream(tag, index)) {}

    std::uint64_t next_u64() {
        if (have_ == 0) {
            const philox_block b = philox2x64_10(key_, block_++, stream_);
            buf_[0] = b.w0;
            buf_[1] = b.w1;
            have_   = 2;
        }
        return buf_[--have_];
    }

    /// Uniform on the open interval (0,1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via Box-Muller; pairs are cached.
    double normal() {
        if (has_normal_) {
            has_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r  = std::sqrt(-2.0 * std::log(u1));
        const double a  = 2.0 * std::numbers::pi * u2;
        cached_normal_  = r * std::sin(a);
        has_normal_     = true;
        return r * std::cos(a);
    }

    double exponential() { return -std::log(uniform01()); }

private:
    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t buf_[2]{};
    int have_ = 0;
    double cached_normal_ = 0.0;
    bool has_normal_      = false;
};

} // namespace confcauchy
