// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "test_support.hpp"
#include "viewmix/dataset.hpp"

using namespace viewmix;
using namespace viewmix::testing;

TEST_CASE("cifar10 decodes records into interleaved 32x32x3 images") {
    TempDir tmp("cifar");
    write_bytes(tmp.file("batch.bin"), make_cifar_bytes(10, 1));
    const Dataset ds = load_cifar10(tmp.file("batch.bin"));
    REQUIRE(ds.size() == 10);
    for (const auto& item : ds.items) {
        CHECK(item.image.width() == 32);
        CHECK(item.image.height() == 32);
        CHECK(item.image.channels() == 3);
        CHECK(item.image.depth() == Depth::byte);
    }
    CHECK(ds.items[3].label == 3);
}

TEST_CASE("cifar10 plane layout: all-255 R plane lands in channel 0") {
    std::vector<uint8_t> record(3073, 0);
    record[0] = 7;
    for (size_t i = 1; i <= 1024; ++i) record[i] = 255;
    TempDir tmp("cifar_plane");
    write_bytes(tmp.file("one.bin"), record);
    const Dataset ds = load_cifar10(tmp.file("one.bin"));
    REQUIRE(ds.size() == 1);
    CHECK(ds.items[0].label == 7);
    CHECK(ds.image(0).byte_at(0, 0, 0) == 255);
    CHECK(ds.image(0).byte_at(0, 0, 1) == 0);
    CHECK(ds.image(0).byte_at(0, 0, 2) == 0);
    CHECK(ds.image(0).byte_at(31, 31, 0) == 255);
}

TEST_CASE("cifar10 rejects truncated files naming the offset") {
    TempDir tmp("cifar_trunc");
    auto bytes = make_cifar_bytes(2, 2);
    bytes.resize(3073 + 100);  // second record cut short
    write_bytes(tmp.file("bad.bin"), bytes);
    CHECK_THROWS_WITH_AS(load_cifar10(tmp.file("bad.bin")),
                         doctest::Contains("byte offset 3073"), std::runtime_error);
}

TEST_CASE("cifar10 rejects label bytes above 9") {
    auto bytes = make_cifar_bytes(3, 3);
    bytes[2 * 3073] = 10;
    TempDir tmp("cifar_label");
    write_bytes(tmp.file("bad.bin"), bytes);
    CHECK_THROWS_WITH_AS(load_cifar10(tmp.file("bad.bin")),
                         doctest::Contains("record 2"), std::runtime_error);
}

TEST_CASE("cifar10 decode then encode is byte-lossless") {
    TempDir tmp("cifar_rt");
    const auto bytes = make_cifar_bytes(50, 4);
    write_bytes(tmp.file("batch.bin"), bytes);
    const Dataset ds = load_cifar10(tmp.file("batch.bin"));
    CHECK(encode_cifar10(ds) == bytes);
}

TEST_CASE("image folder loads PNGs sorted by filename") {
    TempDir tmp("folder");
    // deliberately written out of order
    write_png(random_byte_image(24, 24, 3, 11), tmp.file("b.png"));
    write_png(random_byte_image(24, 24, 3, 12), tmp.file("a.png"));
    write_png(random_byte_image(24, 24, 3, 13), tmp.file("c.png"));
    const Dataset ds = load_image_folder(tmp.path);
    REQUIRE(ds.size() == 3);
    const Dataset a_only = load_image_folder(tmp.path);  // stable ordering
    CHECK(ds.image(0) == a_only.image(0));
    CHECK(ds.image(0).width() == 24);
    CHECK(ds.image(0).channels() == 3);
}

TEST_CASE("png round-trips through write and folder load") {
    TempDir tmp("png_rt");
    const Image img = random_byte_image(16, 16, 3, 5);
    write_png(img, tmp.file("x.png"));
    const Dataset ds = load_image_folder(tmp.path);
    REQUIRE(ds.size() == 1);
    CHECK(ds.image(0) == img);  // PNG is lossless
}

TEST_CASE("image folder rejects undecodable files by name") {
    TempDir tmp("folder_bad");
    write_png(random_byte_image(8, 8, 3, 1), tmp.file("ok.png"));
    write_bytes(tmp.file("broken.jpeg"), {0x00, 0x01, 0x02});
    CHECK_THROWS_WITH_AS(load_image_folder(tmp.path), doctest::Contains("broken.jpeg"),
                         std::runtime_error);
}

TEST_CASE("image folder resizes when asked and rejects mixed sizes otherwise") {
    TempDir tmp("folder_mixed");
    write_png(random_byte_image(64, 48, 3, 2), tmp.file("wide.png"));
    write_png(random_byte_image(32, 32, 3, 3), tmp.file("square.png"));
    CHECK_THROWS_WITH_AS(load_image_folder(tmp.path), doctest::Contains("mixed"),
                         std::runtime_error);
    const Dataset ds = load_image_folder(tmp.path, 32);
    REQUIRE(ds.size() == 2);
    for (const auto& item : ds.items) {
        CHECK(item.image.width() == 32);
        CHECK(item.image.height() == 32);
    }
}

TEST_CASE("empty or missing folders are errors") {
    TempDir tmp("folder_empty");
    CHECK_THROWS_AS(load_image_folder(tmp.path), std::runtime_error);
    CHECK_THROWS_AS(load_image_folder(tmp.path / "nope"), std::runtime_error);
}
