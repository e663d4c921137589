// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_support.hpp"
#include "viewmix/regional.hpp"

using namespace viewmix;
using namespace viewmix::testing;

namespace {

// Written before the implementation: per-pixel nested-loop evaluation of
// out = M==1 ? a : b over the rasterized mask.
Image selection_oracle(const Image& a, const Image& b, const Mask& mask) {
    Image out(a.width(), a.height(), a.channels(), a.depth());
    const auto raster = mask.rasterize();
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) {
            const bool keep_a = raster[static_cast<size_t>(y) * a.width() + x] == 1;
            for (int c = 0; c < a.channels(); ++c) {
                if (a.depth() == Depth::byte) {
                    out.bytes()[(static_cast<size_t>(y) * a.width() + x) * a.channels() + c] =
                        keep_a ? a.byte_at(x, y, c) : b.byte_at(x, y, c);
                } else {
                    out.floats()[(static_cast<size_t>(y) * a.width() + x) * a.channels() + c] =
                        keep_a ? a.float_at(x, y, c) : b.float_at(x, y, c);
                }
            }
        }
    return out;
}

// Independent Monte-Carlo estimate of E[clipped area]/(W*H): std::mt19937_64
// draws, pixel-membership counting straight from the rounded box edges.
double mc_mean_clip_fraction(int W, int H, double r_min, double r_max, int samples,
                             uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ux(0.0, W), uy(0.0, H), ul(r_min, r_max);
    auto half_up = [](double v) { return static_cast<int>(std::floor(v + 0.5)); };
    double total = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double cx = ux(gen), cy = uy(gen), lambda = ul(gen);
        const int bw = std::max(1, half_up(lambda * W));
        const int bh = std::max(1, half_up(lambda * H));
        const int left = half_up(cx - bw / 2.0), right = half_up(cx + bw / 2.0);
        const int top = half_up(cy - bh / 2.0), bottom = half_up(cy + bh / 2.0);
        long long count = 0;
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x)
                if (x >= left && x < right && y >= top && y < bottom) ++count;
        total += static_cast<double>(count) / (static_cast<double>(W) * H);
    }
    return total / samples;
}

}  // namespace

TEST_CASE("forced center box: lambda 0.5 at (16,16) on 32x32") {
    const BBox box = make_bbox(32, 32, 16.0, 16.0, 0.5);
    CHECK(box.nominal_w == 16);
    CHECK(box.nominal_h == 16);
    CHECK(box.clipped == Rect{8, 8, 24, 24});
    CHECK(box.clipped.area() == 256);
}

TEST_CASE("corner centers clip to a quarter box") {
    const BBox box = make_bbox(32, 32, 0.0, 0.0, 0.5);
    CHECK(box.clipped == Rect{0, 0, 8, 8});
    CHECK(box.clipped.area() == 64);
}

TEST_CASE("clipping never exceeds the nominal box and stays non-empty") {
    RngStream rng(3);
    for (int i = 0; i < 5000; ++i) {
        const double cx = rng.uniform(-2.0, 34.0);  // includes off-image centers
        const double cy = rng.uniform(-2.0, 34.0);
        const double lambda = rng.uniform(0.05, 0.95);
        const BBox box = make_bbox(32, 32, cx, cy, lambda);
        CHECK(box.clipped.area() >= 1);
        CHECK(box.clipped.area() <=
              static_cast<long long>(box.nominal_w) * box.nominal_h);
        CHECK(box.clipped.left >= 0);
        CHECK(box.clipped.top >= 0);
        CHECK(box.clipped.right <= 32);
        CHECK(box.clipped.bottom <= 32);
    }
    // extreme corner with a tiny box still keeps one pixel
    const BBox corner = make_bbox(32, 32, 32.0, 32.0, 0.01);
    CHECK(corner.clipped.area() == 1);
    CHECK(corner.clipped == Rect{31, 31, 32, 32});
}

TEST_CASE("sampled lambda respects bounds in both modes") {
    RngStream rng(4);
    for (int i = 0; i < 2000; ++i) {
        const BBox lin = sample_bbox(32, 32, 0.3, 0.6, rng, LambdaMode::linear);
        CHECK(lin.lambda >= 0.3);
        CHECK(lin.lambda <= 0.6);
        const BBox area = sample_bbox(32, 32, 0.3, 0.6, rng, LambdaMode::area);
        CHECK(area.lambda >= std::sqrt(0.3));
        CHECK(area.lambda <= std::sqrt(0.6));
    }
    CHECK_THROWS_AS(sample_bbox(32, 32, 0.0, 0.6, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_bbox(32, 32, 0.7, 0.6, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_bbox(32, 32, 0.3, 1.0, rng), std::invalid_argument);
}

TEST_CASE("mean clipped-area fraction tracks the Monte-Carlo oracle within 1%") {
    const int n = 20000;  // the acceptance suite runs the full 100k protocol
    RngStream rng(5);
    double impl_total = 0.0;
    for (int i = 0; i < n; ++i) {
        const BBox box = sample_bbox(32, 32, 0.3, 0.6, rng);
        impl_total += static_cast<double>(box.clipped.area()) / 1024.0;
    }
    const double impl_mean = impl_total / n;
    const double oracle_mean = mc_mean_clip_fraction(32, 32, 0.3, 0.6, n, 999);
    CHECK(std::abs(impl_mean - oracle_mean) < 0.01);
}

TEST_CASE("mask rasterizes zeros exactly inside the clipped box") {
    const BBox box = make_bbox(8, 8, 4.0, 4.0, 0.5);
    const Mask mask = mask_from(box, 8, 8);
    const auto raster = mask.rasterize();
    long long zeros = 0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            const bool inside = box.clipped.contains(x, y);
            CHECK(raster[static_cast<size_t>(y) * 8 + x] == (inside ? 0 : 1));
            zeros += inside;
        }
    CHECK(zeros == box.clipped.area());

    const auto comp = complement(mask).rasterize();
    for (size_t i = 0; i < raster.size(); ++i) CHECK(comp[i] == 1 - raster[i]);
}

TEST_CASE("viewmix equals the per-pixel selection oracle exactly") {
    RngStream rng(6);
    for (int i = 0; i < 200; ++i) {
        RngStream sub = rng.derive(i);
        const int size = i % 2 == 0 ? 8 : 32;
        const Image a = random_byte_image(size, size, 3, 1000 + i);
        const Image b = random_byte_image(size, size, 3, 2000 + i);
        const Mask mask = mask_from(sample_bbox(size, size, 0.1, 0.9, sub), size, size);
        CHECK(apply_viewmix(a, b, mask) == selection_oracle(a, b, mask));
    }
}

TEST_CASE("viewmix masking algebra") {
    const Image a = random_byte_image(16, 16, 3, 1);
    const Image b = random_byte_image(16, 16, 3, 2);

    const Mask all_ones{16, 16, Rect{0, 0, 0, 0}, false};  // empty zero-region
    CHECK(apply_viewmix(a, b, all_ones) == a);

    const Mask all_zeros{16, 16, Rect{0, 0, 16, 16}, false};
    CHECK(apply_viewmix(a, b, all_zeros) == b);

    RngStream rng(7);
    for (int i = 0; i < 100; ++i) {
        RngStream sub = rng.derive(i);
        const Mask mask = mask_from(sample_bbox(16, 16, 0.2, 0.8, sub), 16, 16);
        CHECK(apply_viewmix(a, b, mask) == apply_viewmix(b, a, complement(mask)));
    }
}

TEST_CASE("viewmix validates shapes") {
    const Image a = random_byte_image(8, 8, 3, 1);
    const Image b = random_byte_image(8, 4, 3, 2);
    const Mask mask{8, 8, Rect{0, 0, 2, 2}, false};
    CHECK_THROWS_AS(apply_viewmix(a, b, mask), std::invalid_argument);
    const Mask wrong{4, 4, Rect{0, 0, 2, 2}, false};
    CHECK_THROWS_AS(apply_viewmix(a, a, wrong), std::invalid_argument);
    const Image f = random_float_image(8, 8, 3, 3);
    CHECK_THROWS_AS(apply_viewmix(a, f, mask), std::invalid_argument);
}

TEST_CASE("cutout fills exactly the clipped rectangle") {
    const Image img = random_byte_image(32, 32, 3, 8);
    const BBox box = make_bbox(32, 32, 10.0, 20.0, 0.4);
    const Image out = apply_cutout(img, box, 0.0);

    long long changed = 0;
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) {
            const bool inside = box.clipped.contains(x, y);
            for (int c = 0; c < 3; ++c) {
                if (inside)
                    CHECK(out.byte_at(x, y, c) == 0);
                else
                    CHECK(out.byte_at(x, y, c) == img.byte_at(x, y, c));
            }
            changed += inside;
        }
    CHECK(changed == box.clipped.area());

    // whole-image box wipes everything
    const BBox full{16.0, 16.0, 1.0, 32, 32, Rect{0, 0, 32, 32}};
    const Image wiped = apply_cutout(img, full, 0.0);
    for (uint8_t v : wiped.bytes()) CHECK(v == 0);

    // empty-clip box is the identity
    const BBox empty{0, 0, 0.0, 1, 1, Rect{0, 0, 0, 0}};
    CHECK(apply_cutout(img, empty, 0.0) == img);
}

TEST_CASE("cutmix returns the donor patch and the exact area ratio") {
    const Image a = random_byte_image(32, 32, 3, 9);
    const Image b = random_byte_image(32, 32, 3, 10);

    const BBox empty{0, 0, 0.0, 1, 1, Rect{0, 0, 0, 0}};
    const auto none = apply_cutmix(a, b, empty);
    CHECK(none.image == a);
    CHECK(none.area_ratio == 0.0);

    const BBox full{16.0, 16.0, 1.0, 32, 32, Rect{0, 0, 32, 32}};
    const auto all = apply_cutmix(a, b, full);
    CHECK(all.image == b);
    CHECK(all.area_ratio == 1.0);

    const BBox quarter = make_bbox(32, 32, 16.0, 16.0, 0.5);
    CHECK(apply_cutmix(a, b, quarter).area_ratio == 0.25);

    const Image small = random_byte_image(8, 8, 3, 11);
    CHECK_THROWS_AS(apply_cutmix(a, small, quarter), std::invalid_argument);
}

TEST_CASE("replaced fraction with r_max 0.6 never exceeds 0.36 plus rounding slack") {
    RngStream rng(12);
    for (int i = 0; i < 5000; ++i) {
        const BBox box = sample_bbox(32, 32, 0.3, 0.6, rng);
        const double max_area =
            (std::floor(0.6 * 32 + 0.5) + 1) * (std::floor(0.6 * 32 + 0.5) + 1);
        CHECK(static_cast<double>(box.clipped.area()) <= max_area);
        CHECK(static_cast<double>(box.clipped.area()) / 1024.0 <= 0.36 + 2.0 * 20.0 / 1024.0);
    }
}
