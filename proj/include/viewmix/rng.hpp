// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace viewmix {

// Counter-based random stream built on Philox4x32-10.
//
// A stream is identified by 128 bits (64-bit key + 64-bit stream id) and
// walks a 64-bit block counter, so draws never depend on shared mutable
// state. derive(i) maps the parent identity plus a child index through the
// block function to obtain a fresh, statistically independent child stream.
// That gives cheap hierarchical keying — (seed, step, image, view, slot) —
// with results that cannot shift when work is reordered or parallelized.
class RngStream {
public:
    RngStream() : RngStream(0) {}
    explicit RngStream(uint64_t seed);

    // Child stream for `index`. Same (parent, index) always yields the same
    // child; siblings with distinct indices are independent.
    [[nodiscard]] RngStream derive(uint64_t index) const;

    uint32_t next_u32();
    uint64_t next_u64();

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double();

    // Uniform in [lo, hi).
    double uniform(double lo, double hi);

    // Uniform integer in [0, n); n must be >= 1.
    uint64_t uniform_below(uint64_t n);

private:
    RngStream(std::array<uint32_t, 2> key, std::array<uint32_t, 2> stream);

    std::array<uint32_t, 2> key_{};
    std::array<uint32_t, 2> stream_{};
    uint64_t counter_ = 0;
    std::array<uint32_t, 4> block_{};
    int block_pos_ = 4;  // exhausted

    void refill();
};

namespace detail {
// Raw block function, exposed for known-answer tests against the published
// Random123 vectors.
std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> counter,
                                      std::array<uint32_t, 2> key);
}  // namespace detail

}  // namespace viewmix
