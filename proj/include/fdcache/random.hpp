// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace fdcache {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to derive child stream identifiers.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/**
 * Splittable counter-based random stream.
 *
 * A stream is identified by (seed, stream id); draws walk a 64-bit block
 * counter through Philox4x32-10, yielding two 64-bit words per block.
 * `split(tag)` derives an independent child stream without advancing the
 * parent, so per-trial and per-purpose streams are reproducible regardless
 * of evaluation order or thread count.
 *
 * Satisfies UniformRandomBitGenerator, so it can drive `<random>`
 * distributions.
 */
class RandomStream {
  public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : seed_(seed), id_(stream_id) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        if (index_ == 2) {
            refill();
        }
        return buffer_[index_++];
    }

    RandomStream split(std::uint64_t tag) const noexcept {
        return RandomStream(seed_, mix64(id_ ^ mix64(tag + 0x632BE59BD9B4E019ULL)));
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return id_; }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unit-mean exponential.
    double exponential() noexcept { return -std::log(uniform_open()); }

  private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int index_ = 2;
};

}  // namespace fdcache
