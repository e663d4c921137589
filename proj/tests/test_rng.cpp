// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "viewmix/rng.hpp"

using namespace viewmix;

TEST_CASE("philox4x32-10 matches the published Random123 vectors") {
    using A4 = std::array<uint32_t, 4>;
    using A2 = std::array<uint32_t, 2>;
    CHECK(detail::philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) ==
          A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(detail::philox4x32_10(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                A2{0xffffffffu, 0xffffffffu}) ==
          A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(detail::philox4x32_10(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                A2{0xa4093822u, 0x299f31d0u}) ==
          A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("same seed reproduces the same draw sequence") {
    RngStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds and different children diverge") {
    RngStream a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += a.next_u32() == b.next_u32();
    CHECK(same < 4);

    const RngStream root(7);
    RngStream c0 = root.derive(0);
    RngStream c1 = root.derive(1);
    same = 0;
    for (int i = 0; i < 64; ++i) same += c0.next_u32() == c1.next_u32();
    CHECK(same < 4);
}

TEST_CASE("derive is deterministic and independent of parent draw position") {
    RngStream parent(99);
    const RngStream child_before = parent.derive(5);
    parent.next_u64();
    parent.next_u64();
    const RngStream child_after = parent.derive(5);
    RngStream x = child_before, y = child_after;
    for (int i = 0; i < 16; ++i) CHECK(x.next_u32() == y.next_u32());
}

TEST_CASE("derivation chains do not collide for distinct paths") {
    // (seed, step, image, view) style paths must give distinct streams.
    std::set<uint64_t> first_draws;
    const RngStream root(3);
    for (uint64_t step = 0; step < 4; ++step)
        for (uint64_t image = 0; image < 64; ++image)
            for (uint64_t view = 0; view < 2; ++view) {
                RngStream s = root.derive(step).derive(image).derive(view);
                first_draws.insert(s.next_u64());
            }
    CHECK(first_draws.size() == 4 * 64 * 2);
}

TEST_CASE("next_double stays in [0,1) and looks uniform") {
    RngStream rng(1234);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double v = rng.next_double();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
        sum += v;
    }
    // mean of U[0,1) is 0.5 with stderr ~ 0.0009 at n=1e5
    CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("uniform honors bounds") {
    RngStream rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(0.3, 0.6);
        REQUIRE(v >= 0.3);
        REQUIRE(v < 0.6);
    }
    CHECK(rng.uniform(0.5, 0.5) == 0.5);
}

TEST_CASE("uniform_below covers the full range and rejects zero") {
    RngStream rng(6);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[rng.uniform_below(7)];
    for (int c : counts) CHECK(c > 9000);  // expected 10000 each
    CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}
