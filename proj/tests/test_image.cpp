// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "test_support.hpp"
#include "viewmix/image.hpp"

using namespace viewmix;

TEST_CASE("construction validates shape and buffer size") {
    CHECK_THROWS_AS(Image(0, 4, 3, Depth::byte), std::invalid_argument);
    CHECK_THROWS_AS(Image(4, 0, 3, Depth::byte), std::invalid_argument);
    CHECK_THROWS_AS(Image(4, 4, 2, Depth::byte), std::invalid_argument);
    CHECK_THROWS_AS(Image::from_bytes(2, 2, 3, std::vector<uint8_t>(11)),
                    std::invalid_argument);
    CHECK_THROWS_AS(Image::from_floats(2, 2, 1, {0.0f, 0.5f, 1.0f, 1.5f}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Image::from_floats(2, 2, 1, {0.0f, 0.5f, 1.0f, -0.1f}),
                    std::invalid_argument);
}

TEST_CASE("byte to float conversion is s/255") {
    const Image img = Image::from_bytes(2, 1, 1, {255, 128});
    const Image f = convert_depth(img, Depth::unit_float);
    CHECK(f.float_at(0, 0, 0) == doctest::Approx(1.0));
    CHECK(f.float_at(1, 0, 0) == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("float to byte rounds half-up") {
    CHECK(float_to_byte_sample(0.5) == 128);  // 127.5 rounds up
    CHECK(float_to_byte_sample(0.0) == 0);
    CHECK(float_to_byte_sample(1.0) == 255);
    CHECK(float_to_byte_sample(1.5) == 255);   // clamped
    CHECK(float_to_byte_sample(-0.1) == 0);    // clamped
}

TEST_CASE("depth round-trip is the identity on all 256 byte values") {
    std::vector<uint8_t> all(256);
    for (int i = 0; i < 256; ++i) all[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
    const Image img = Image::from_bytes(16, 16, 1, all);
    const Image back = convert_depth(convert_depth(img, Depth::unit_float), Depth::byte);
    CHECK(back == img);
}

TEST_CASE("image equality and hashing notice any difference") {
    const Image a = testing::random_byte_image(8, 8, 3, 1);
    Image b = a;
    CHECK(a == b);
    CHECK(image_hash(a) == image_hash(b));
    b.bytes()[17] ^= 1;
    CHECK(!(a == b));
    CHECK(image_hash(a) != image_hash(b));

    // Shape participates in the hash.
    const Image c = testing::random_byte_image(4, 16, 3, 1);
    CHECK(image_hash(a) != image_hash(c));
}

TEST_CASE("accessing the wrong depth throws") {
    const Image img(2, 2, 1, Depth::byte);
    CHECK_THROWS_AS((void)img.floats(), std::logic_error);
}
