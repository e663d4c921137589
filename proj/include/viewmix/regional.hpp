// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "viewmix/image.hpp"
#include "viewmix/rng.hpp"

namespace viewmix {

// Half-open pixel rectangle [left, right) x [top, bottom).
struct Rect {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;

    int width() const { return right - left; }
    int height() const { return bottom - top; }
    long long area() const {
        return empty() ? 0 : static_cast<long long>(width()) * height();
    }
    bool empty() const { return right <= left || bottom <= top; }
    bool contains(int x, int y) const {
        return x >= left && x < right && y >= top && y < bottom;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

Rect intersect(const Rect& a, const Rect& b);

// Replacement-box geometry: a continuous center, the linear scale lambda,
// the nominal rounded box, and the box clipped to image bounds. The nominal
// box keeps the image's aspect ratio (width = round(lambda*W), height =
// round(lambda*H)).
struct BBox {
    double center_x = 0.0;
    double center_y = 0.0;
    double lambda = 0.0;
    int nominal_w = 0;
    int nominal_h = 0;
    Rect clipped;
};

enum class LambdaMode {
    linear,  // lambda ~ U[r_min, r_max] scales each side
    area     // lambda = sqrt(a), a ~ U[r_min, r_max] of the area
};

// Deterministic geometry for a given center and lambda. Box edges round
// half-up; if clipping would leave nothing, the box is shifted minimally
// inward so at least one pixel remains.
BBox make_bbox(int width, int height, double center_x, double center_y, double lambda);

// center ~ U[0,W] x U[0,H]; lambda from [r_min, r_max] per `mode`.
// Requires 0 < r_min <= r_max < 1.
BBox sample_bbox(int width, int height, double r_min, double r_max, RngStream& rng,
                 LambdaMode mode = LambdaMode::linear);

// Binary mask over a view: 0 inside zero_region (the replaced patch),
// 1 elsewhere. `inverted` swaps the regions so mask algebra stays closed
// under complement.
struct Mask {
    int width = 0;
    int height = 0;
    Rect zero_region;
    bool inverted = false;

    bool zero_at(int x, int y) const { return zero_region.contains(x, y) != inverted; }
    std::vector<uint8_t> rasterize() const;
};

Mask mask_from(const BBox& box, int width, int height);
Mask complement(const Mask& m);

// out = mask==1 ? view_a : view_b, pixel-wise hard selection.
Image apply_viewmix(const Image& view_a, const Image& view_b, const Mask& mask);

// Fills the clipped box with a constant sample value (native scale).
Image apply_cutout(const Image& img, const BBox& box, double fill = 0.0);

struct CutMixResult {
    Image image;
    double area_ratio = 0.0;  // clipped area / (W*H)
};

// Same selection as viewmix but the patch comes from a different image.
CutMixResult apply_cutmix(const Image& img_a, const Image& img_b, const BBox& box);

}  // namespace viewmix
