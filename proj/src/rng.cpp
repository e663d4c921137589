// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/rng.hpp"

#include <stdexcept>

namespace viewmix {

namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    const uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

namespace detail {

std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> counter,
                                      std::array<uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, counter[0], hi0, lo0);
        mulhilo(kMul1, counter[2], hi1, lo1);
        counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return counter;
}

}  // namespace detail

RngStream::RngStream(uint64_t seed) {
    uint64_t state = seed;
    const uint64_t a = splitmix64(state);
    const uint64_t b = splitmix64(state);
    key_ = {static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32)};
    stream_ = {static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32)};
}

RngStream::RngStream(std::array<uint32_t, 2> key, std::array<uint32_t, 2> stream)
    : key_(key), stream_(stream) {}

RngStream RngStream::derive(uint64_t index) const {
    // Child identity = block(parent key, {stream, index}). Draws place the
    // stream id in the high counter words instead, so derivation and drawing
    // never evaluate the block function on the same input.
    const std::array<uint32_t, 4> ctr = {
        stream_[0], stream_[1],
        static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32)};
    const std::array<uint32_t, 4> out = detail::philox4x32_10(ctr, key_);
    return RngStream({out[0], out[1]}, {out[2], out[3]});
}

void RngStream::refill() {
    const std::array<uint32_t, 4> ctr = {
        static_cast<uint32_t>(counter_), static_cast<uint32_t>(counter_ >> 32),
        stream_[0], stream_[1]};
    block_ = detail::philox4x32_10(ctr, key_);
    ++counter_;
    block_pos_ = 0;
}

uint32_t RngStream::next_u32() {
    if (block_pos_ >= 4) refill();
    return block_[block_pos_++];
}

uint64_t RngStream::next_u64() {
    const uint64_t lo = next_u32();
    const uint64_t hi = next_u32();
    return lo | (hi << 32);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

uint64_t RngStream::uniform_below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be >= 1");
    // Multiply-shift; bias is < 2^-64 per draw, far below anything the
    // statistical checks can see.
    const unsigned __int128 p = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<uint64_t>(p >> 64);
}

}  // namespace viewmix
