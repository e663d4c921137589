// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "viewmix/image.hpp"
#include "viewmix/rng.hpp"

namespace viewmix {

enum class TransformKind {
    crop_rescale,
    horizontal_flip,
    color_jitter,
    grayscale,
    gaussian_blur,
    solarize,
};
inline constexpr int kNumTransformKinds = 6;

const char* to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& name);

struct CropRescaleParams {
    double area_min = 0.75;
    double area_max = 1.0;
    double aspect_min = 3.0 / 4.0;
    double aspect_max = 4.0 / 3.0;
};

struct ColorJitterParams {
    double brightness = 0.8;
    double contrast = 0.8;
    double saturation = 0.8;
    double hue = 0.2;  // fraction of the full hue circle
};

struct GaussianBlurParams {
    double sigma_min = 0.1;
    double sigma_max = 2.0;
};

struct SolarizeParams {
    double threshold = 0.5;  // unit scale; byte images compare against threshold*255
};

// One probability-gated step of a pipeline.
struct TransformSpec {
    TransformKind kind = TransformKind::horizontal_flip;
    double probability = 1.0;
    std::variant<std::monostate, CropRescaleParams, ColorJitterParams,
                 GaussianBlurParams, SolarizeParams>
        params;

    void validate() const;
};

// Ordered gated transform list. The first step must be crop_rescale with
// probability 1 (the only step allowed to change geometry), so every view
// comes out at output_size x output_size.
struct PipelineSpec {
    std::vector<TransformSpec> steps;
    int output_size = 32;

    void validate() const;
};

// The standard stack: crop@1.0, flip@0.5, jitter@0.8, grayscale@0.2,
// blur@0.2, solarize@0.2.
PipelineSpec default_pipeline(int output_size);

// Per-step record of the gate decision and every value drawn, for
// stream-isolation checks and empirical statistics.
struct StepTrace {
    TransformKind kind;
    bool fired = false;
    std::vector<double> draws;
};

// Thread-safe execution counters, one slot per transform kind plus the
// regional (viewmix/cutout/cutmix) step.
struct InvocationCounters {
    std::array<std::atomic<uint64_t>, kNumTransformKinds> fired{};
    std::atomic<uint64_t> regional{0};

    void add(TransformKind kind) { fired[static_cast<int>(kind)].fetch_add(1, std::memory_order_relaxed); }
    std::array<uint64_t, kNumTransformKinds> snapshot() const;
    void reset();
};

// --- deterministic kernels -------------------------------------------------

// Bilinear rescale of the given crop window to out_size x out_size.
Image crop_resize(const Image& img, int left, int top, int crop_w, int crop_h,
                  int out_size);

Image horizontal_flip(const Image& img);

// Photometric kernels run in unit-float; byte images round-trip through
// float with half-up rounding on the way back.
Image adjust_brightness(const Image& img, double factor);
Image adjust_contrast(const Image& img, double factor);
Image adjust_saturation(const Image& img, double factor);
Image adjust_hue(const Image& img, double delta);  // delta in hue-circle fractions

// ITU-R 601 luma (0.299, 0.587, 0.114) copied to all channels.
Image to_grayscale(const Image& img);

// Separable kernel of radius ceil(3*sigma), replicate-edge padding.
Image gaussian_blur_fixed(const Image& img, double sigma);

Image solarize(const Image& img, double threshold_unit);

// --- stochastic operations -------------------------------------------------

// Samples area in [area_min,area_max] and aspect in [aspect_min,aspect_max],
// derives the crop as w = round(sqrt(a*W*H*r)), h = round(sqrt(a*W*H/r)),
// retries up to 10 times if it does not fit, then falls back to a centered
// square of side min(W, H).
Image crop_rescale(const Image& img, RngStream& rng, const CropRescaleParams& p,
                   int out_size, std::vector<double>* trace = nullptr);

// Applies brightness/contrast/saturation/hue in a random order; a strength
// of zero skips that sub-adjustment.
Image color_jitter(const Image& img, RngStream& rng, const ColorJitterParams& p,
                   std::vector<double>* trace = nullptr);

Image gaussian_blur(const Image& img, RngStream& rng, const GaussianBlurParams& p,
                    std::vector<double>* trace = nullptr);

// Runs the gated steps in order. Step k draws exclusively from the child
// stream rng.derive(k) — the first draw is the gate — so toggling one step
// can never shift another step's randomness.
Image apply_pipeline(const Image& img, const PipelineSpec& spec, const RngStream& rng,
                     std::vector<StepTrace>* trace = nullptr,
                     InvocationCounters* counters = nullptr);

}  // namespace viewmix
