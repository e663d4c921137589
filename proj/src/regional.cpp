// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/regional.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace viewmix {

namespace {

inline int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

// Shifts [lo, hi) minimally so it overlaps [0, limit) in at least one unit.
void shift_into(int& lo, int& hi, int limit) {
    if (hi <= 0) {
        const int d = 1 - hi;
        lo += d;
        hi += d;
    } else if (lo >= limit) {
        const int d = lo - (limit - 1);
        lo -= d;
        hi -= d;
    }
}

void check_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(what) + ": images must share shape and depth");
}

// Copies the rectangle `r` from src into dst (same shape).
void paste_rect(Image& dst, const Image& src, const Rect& r) {
    if (r.empty()) return;
    const int ch = dst.channels();
    const size_t px = dst.sample_size() * ch;
    const size_t row = static_cast<size_t>(dst.width()) * px;
    const size_t off = static_cast<size_t>(r.left) * px;
    const size_t len = static_cast<size_t>(r.width()) * px;
    uint8_t* d = dst.raw();
    const uint8_t* s = src.raw();
    for (int y = r.top; y < r.bottom; ++y)
        std::memcpy(d + y * row + off, s + y * row + off, len);
}

}  // namespace

Rect intersect(const Rect& a, const Rect& b) {
    Rect r{std::max(a.left, b.left), std::max(a.top, b.top),
           std::min(a.right, b.right), std::min(a.bottom, b.bottom)};
    if (r.empty()) r = {0, 0, 0, 0};
    return r;
}

BBox make_bbox(int width, int height, double center_x, double center_y, double lambda) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("make_bbox: image dimensions must be >= 1");
    BBox box;
    box.center_x = center_x;
    box.center_y = center_y;
    box.lambda = lambda;
    box.nominal_w = std::max(1, round_half_up(lambda * width));
    box.nominal_h = std::max(1, round_half_up(lambda * height));

    int left = round_half_up(center_x - box.nominal_w / 2.0);
    int right = round_half_up(center_x + box.nominal_w / 2.0);
    int top = round_half_up(center_y - box.nominal_h / 2.0);
    int bottom = round_half_up(center_y + box.nominal_h / 2.0);
    shift_into(left, right, width);
    shift_into(top, bottom, height);
    box.clipped = intersect({left, top, right, bottom}, {0, 0, width, height});
    return box;
}

BBox sample_bbox(int width, int height, double r_min, double r_max, RngStream& rng,
                 LambdaMode mode) {
    if (!(r_min > 0.0 && r_min <= r_max && r_max < 1.0))
        throw std::invalid_argument("sample_bbox: need 0 < r_min <= r_max < 1");
    const double cx = rng.uniform(0.0, width);
    const double cy = rng.uniform(0.0, height);
    double lambda = rng.uniform(r_min, r_max);
    if (mode == LambdaMode::area) lambda = std::sqrt(lambda);
    return make_bbox(width, height, cx, cy, lambda);
}

std::vector<uint8_t> Mask::rasterize() const {
    std::vector<uint8_t> out(static_cast<size_t>(width) * height, 1);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (zero_at(x, y)) out[static_cast<size_t>(y) * width + x] = 0;
    return out;
}

Mask mask_from(const BBox& box, int width, int height) {
    return Mask{width, height, box.clipped, false};
}

Mask complement(const Mask& m) { return Mask{m.width, m.height, m.zero_region, !m.inverted}; }

Image apply_viewmix(const Image& view_a, const Image& view_b, const Mask& mask) {
    check_same_shape(view_a, view_b, "viewmix");
    if (mask.width != view_a.width() || mask.height != view_a.height())
        throw std::invalid_argument("viewmix: mask dimensions must match the views");
    const Rect r = intersect(mask.zero_region, {0, 0, mask.width, mask.height});
    // Non-inverted: keep a, paste b's patch. Inverted: keep b, paste a's patch.
    Image out = mask.inverted ? view_b : view_a;
    paste_rect(out, mask.inverted ? view_a : view_b, r);
    return out;
}

Image apply_cutout(const Image& img, const BBox& box, double fill) {
    const Rect r = intersect(box.clipped, {0, 0, img.width(), img.height()});
    if (r != box.clipped)
        throw std::invalid_argument("cutout: box lies outside the image");
    Image out = img;
    if (r.empty()) return out;
    const int ch = out.channels();
    if (out.depth() == Depth::byte) {
        const auto v = static_cast<uint8_t>(std::clamp(round_half_up(fill), 0, 255));
        auto data = out.bytes();
        for (int y = r.top; y < r.bottom; ++y) {
            auto* row = data.data() + (static_cast<size_t>(y) * out.width() + r.left) * ch;
            std::fill_n(row, static_cast<size_t>(r.width()) * ch, v);
        }
    } else {
        const auto v = static_cast<float>(std::clamp(fill, 0.0, 1.0));
        auto data = out.floats();
        for (int y = r.top; y < r.bottom; ++y) {
            auto* row = data.data() + (static_cast<size_t>(y) * out.width() + r.left) * ch;
            std::fill_n(row, static_cast<size_t>(r.width()) * ch, v);
        }
    }
    return out;
}

CutMixResult apply_cutmix(const Image& img_a, const Image& img_b, const BBox& box) {
    check_same_shape(img_a, img_b, "cutmix");
    const Rect bounds{0, 0, img_a.width(), img_a.height()};
    const Rect r = intersect(box.clipped, bounds);
    Image out = img_a;
    paste_rect(out, img_b, r);
    const double ratio = static_cast<double>(r.area()) /
                         (static_cast<double>(img_a.width()) * img_a.height());
    return {std::move(out), ratio};
}

}  // namespace viewmix
