// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace viewmix {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

inline int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

inline float clamp01(float v) { return v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v); }

// Runs `fn` on a unit-float copy, converting back if the input was byte.
template <typename Fn>
Image run_unit_float(const Image& img, Fn&& fn) {
    const bool was_byte = img.depth() == Depth::byte;
    Image work = was_byte ? convert_depth(img, Depth::unit_float) : img;
    fn(work);
    return was_byte ? convert_depth(work, Depth::byte) : work;
}

inline double luma(double r, double g, double b) {
    return kLumaR * r + kLumaG * g + kLumaB * b;
}

void brightness_inplace(Image& img, double factor) {
    const float f = static_cast<float>(factor);
    for (float& s : img.floats()) s = clamp01(s * f);
}

void contrast_inplace(Image& img, double factor) {
    auto data = img.floats();
    double mean = 0.0;
    if (img.channels() == 3) {
        for (size_t i = 0; i + 2 < data.size(); i += 3)
            mean += luma(data[i], data[i + 1], data[i + 2]);
        mean /= static_cast<double>(img.width()) * img.height();
    } else {
        for (float s : data) mean += s;
        mean /= static_cast<double>(data.size());
    }
    const float f = static_cast<float>(factor);
    const float off = static_cast<float>((1.0 - factor) * mean);
    for (float& s : data) s = clamp01(s * f + off);
}

void saturation_inplace(Image& img, double factor) {
    if (img.channels() != 3) return;
    auto data = img.floats();
    const float f = static_cast<float>(factor);
    for (size_t i = 0; i + 2 < data.size(); i += 3) {
        const float l = static_cast<float>(luma(data[i], data[i + 1], data[i + 2]));
        const float base = (1.0f - f) * l;
        data[i] = clamp01(f * data[i] + base);
        data[i + 1] = clamp01(f * data[i + 1] + base);
        data[i + 2] = clamp01(f * data[i + 2] + base);
    }
}

inline void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
    const double maxc = std::max({r, g, b});
    const double minc = std::min({r, g, b});
    v = maxc;
    const double d = maxc - minc;
    s = maxc <= 0.0 ? 0.0 : d / maxc;
    if (d <= 0.0) {
        h = 0.0;
        return;
    }
    if (maxc == r) {
        h = std::fmod((g - b) / d, 6.0);
    } else if (maxc == g) {
        h = (b - r) / d + 2.0;
    } else {
        h = (r - g) / d + 4.0;
    }
    h /= 6.0;
    if (h < 0.0) h += 1.0;
}

inline void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
    const double h6 = (h - std::floor(h)) * 6.0;
    const int sector = std::min(5, static_cast<int>(h6));
    const double f = h6 - sector;
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    switch (sector) {
        case 0: r = v; g = t; b = p; break;
        case 1: r = q; g = v; b = p; break;
        case 2: r = p; g = v; b = t; break;
        case 3: r = p; g = q; b = v; break;
        case 4: r = t; g = p; b = v; break;
        default: r = v; g = p; b = q; break;
    }
}

void hue_inplace(Image& img, double delta) {
    if (img.channels() != 3) return;
    auto data = img.floats();
    for (size_t i = 0; i + 2 < data.size(); i += 3) {
        double h, s, v;
        rgb_to_hsv(data[i], data[i + 1], data[i + 2], h, s, v);
        double r, g, b;
        hsv_to_rgb(h + delta, s, v, r, g, b);
        data[i] = clamp01(static_cast<float>(r));
        data[i + 1] = clamp01(static_cast<float>(g));
        data[i + 2] = clamp01(static_cast<float>(b));
    }
}

}  // namespace

const char* to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::crop_rescale: return "crop_rescale";
        case TransformKind::horizontal_flip: return "horizontal_flip";
        case TransformKind::color_jitter: return "color_jitter";
        case TransformKind::grayscale: return "grayscale";
        case TransformKind::gaussian_blur: return "gaussian_blur";
        case TransformKind::solarize: return "solarize";
    }
    return "?";
}

TransformKind transform_kind_from_string(const std::string& name) {
    for (int k = 0; k < kNumTransformKinds; ++k) {
        const auto kind = static_cast<TransformKind>(k);
        if (name == to_string(kind)) return kind;
    }
    throw std::invalid_argument("unknown transform kind: " + name);
}

void TransformSpec::validate() const {
    if (!(probability >= 0.0 && probability <= 1.0))
        throw std::invalid_argument(std::string(to_string(kind)) +
                                    ": probability must be in [0,1]");
    switch (kind) {
        case TransformKind::crop_rescale: {
            const auto* p = std::get_if<CropRescaleParams>(&params);
            if (!p) throw std::invalid_argument("crop_rescale: missing parameters");
            if (!(p->area_min > 0.0 && p->area_min <= p->area_max && p->area_max <= 1.0))
                throw std::invalid_argument("crop_rescale: area range must satisfy 0 < min <= max <= 1");
            if (!(p->aspect_min > 0.0 && p->aspect_min <= p->aspect_max))
                throw std::invalid_argument("crop_rescale: aspect range must satisfy 0 < min <= max");
            break;
        }
        case TransformKind::color_jitter: {
            const auto* p = std::get_if<ColorJitterParams>(&params);
            if (!p) throw std::invalid_argument("color_jitter: missing parameters");
            if (p->brightness < 0 || p->contrast < 0 || p->saturation < 0 || p->hue < 0)
                throw std::invalid_argument("color_jitter: strengths must be >= 0");
            break;
        }
        case TransformKind::gaussian_blur: {
            const auto* p = std::get_if<GaussianBlurParams>(&params);
            if (!p) throw std::invalid_argument("gaussian_blur: missing parameters");
            if (!(p->sigma_min > 0.0 && p->sigma_min <= p->sigma_max))
                throw std::invalid_argument("gaussian_blur: sigma range must satisfy 0 < min <= max");
            break;
        }
        case TransformKind::solarize: {
            const auto* p = std::get_if<SolarizeParams>(&params);
            if (!p) throw std::invalid_argument("solarize: missing parameters");
            if (!(p->threshold >= 0.0 && p->threshold <= 1.0))
                throw std::invalid_argument("solarize: threshold must be in [0,1]");
            break;
        }
        case TransformKind::horizontal_flip:
        case TransformKind::grayscale:
            if (!std::holds_alternative<std::monostate>(params))
                throw std::invalid_argument(std::string(to_string(kind)) +
                                            ": takes no parameters");
            break;
    }
}

void PipelineSpec::validate() const {
    if (output_size < 1) throw std::invalid_argument("pipeline: output_size must be >= 1");
    if (steps.empty()) throw std::invalid_argument("pipeline: needs at least one step");
    if (steps.front().kind != TransformKind::crop_rescale)
        throw std::invalid_argument("pipeline: first step must be crop_rescale");
    int crops = 0;
    for (const auto& s : steps) {
        s.validate();
        if (s.kind == TransformKind::crop_rescale) ++crops;
    }
    if (crops != 1) throw std::invalid_argument("pipeline: exactly one crop_rescale step allowed");
    if (steps.front().probability != 1.0)
        throw std::invalid_argument("pipeline: crop_rescale probability must be 1");
}

PipelineSpec default_pipeline(int output_size) {
    PipelineSpec spec;
    spec.output_size = output_size;
    spec.steps = {
        {TransformKind::crop_rescale, 1.0, CropRescaleParams{}},
        {TransformKind::horizontal_flip, 0.5, std::monostate{}},
        {TransformKind::color_jitter, 0.8, ColorJitterParams{}},
        {TransformKind::grayscale, 0.2, std::monostate{}},
        {TransformKind::gaussian_blur, 0.2, GaussianBlurParams{}},
        {TransformKind::solarize, 0.2, SolarizeParams{}},
    };
    return spec;
}

std::array<uint64_t, kNumTransformKinds> InvocationCounters::snapshot() const {
    std::array<uint64_t, kNumTransformKinds> out{};
    for (int i = 0; i < kNumTransformKinds; ++i)
        out[i] = fired[i].load(std::memory_order_relaxed);
    return out;
}

void InvocationCounters::reset() {
    for (auto& f : fired) f.store(0, std::memory_order_relaxed);
    regional.store(0, std::memory_order_relaxed);
}

Image crop_resize(const Image& img, int left, int top, int crop_w, int crop_h,
                  int out_size) {
    if (out_size < 1) throw std::invalid_argument("crop_resize: out_size must be >= 1");
    if (crop_w < 1 || crop_h < 1 || left < 0 || top < 0 ||
        left + crop_w > img.width() || top + crop_h > img.height())
        throw std::invalid_argument("crop_resize: crop window outside image");

    const int ch = img.channels();
    Image out(out_size, out_size, ch, img.depth());

    // Pixel-center mapping: src = (dst + 0.5) * scale - 0.5, clamped to the
    // crop window. scale == 1 copies samples exactly.
    const double sx_scale = static_cast<double>(crop_w) / out_size;
    const double sy_scale = static_cast<double>(crop_h) / out_size;
    std::vector<int> x0(out_size), x1(out_size);
    std::vector<float> wx(out_size);
    for (int dx = 0; dx < out_size; ++dx) {
        double sx = (dx + 0.5) * sx_scale - 0.5;
        sx = std::clamp(sx, 0.0, static_cast<double>(crop_w - 1));
        const int ix = static_cast<int>(sx);
        x0[dx] = left + ix;
        x1[dx] = left + std::min(ix + 1, crop_w - 1);
        wx[dx] = static_cast<float>(sx - ix);
    }

    const size_t row_stride = static_cast<size_t>(img.width()) * ch;
    for (int dy = 0; dy < out_size; ++dy) {
        double sy = (dy + 0.5) * sy_scale - 0.5;
        sy = std::clamp(sy, 0.0, static_cast<double>(crop_h - 1));
        const int iy = static_cast<int>(sy);
        const int y0 = top + iy;
        const int y1 = top + std::min(iy + 1, crop_h - 1);
        const float fy = static_cast<float>(sy - iy);

        if (img.depth() == Depth::byte) {
            const uint8_t* r0 = img.bytes().data() + y0 * row_stride;
            const uint8_t* r1 = img.bytes().data() + y1 * row_stride;
            uint8_t* dst = out.bytes().data() + static_cast<size_t>(dy) * out_size * ch;
            for (int dx = 0; dx < out_size; ++dx) {
                const size_t o0 = static_cast<size_t>(x0[dx]) * ch;
                const size_t o1 = static_cast<size_t>(x1[dx]) * ch;
                const float fx = wx[dx];
                for (int c = 0; c < ch; ++c) {
                    const float topv = r0[o0 + c] + fx * (r0[o1 + c] - static_cast<float>(r0[o0 + c]));
                    const float botv = r1[o0 + c] + fx * (r1[o1 + c] - static_cast<float>(r1[o0 + c]));
                    const float v = topv + fy * (botv - topv);
                    dst[static_cast<size_t>(dx) * ch + c] =
                        static_cast<uint8_t>(std::clamp(static_cast<int>(std::floor(v + 0.5f)), 0, 255));
                }
            }
        } else {
            const float* r0 = img.floats().data() + y0 * row_stride;
            const float* r1 = img.floats().data() + y1 * row_stride;
            float* dst = out.floats().data() + static_cast<size_t>(dy) * out_size * ch;
            for (int dx = 0; dx < out_size; ++dx) {
                const size_t o0 = static_cast<size_t>(x0[dx]) * ch;
                const size_t o1 = static_cast<size_t>(x1[dx]) * ch;
                const float fx = wx[dx];
                for (int c = 0; c < ch; ++c) {
                    const float topv = r0[o0 + c] + fx * (r0[o1 + c] - r0[o0 + c]);
                    const float botv = r1[o0 + c] + fx * (r1[o1 + c] - r1[o0 + c]);
                    dst[static_cast<size_t>(dx) * ch + c] = clamp01(topv + fy * (botv - topv));
                }
            }
        }
    }
    return out;
}

Image horizontal_flip(const Image& img) {
    Image out(img.width(), img.height(), img.channels(), img.depth());
    const int w = img.width();
    const int ch = img.channels();
    const size_t px = img.sample_size() * ch;
    const size_t row = static_cast<size_t>(w) * px;
    const uint8_t* src = img.raw();
    uint8_t* dst = out.raw();
    for (int y = 0; y < img.height(); ++y) {
        const uint8_t* srow = src + y * row;
        uint8_t* drow = dst + y * row;
        for (int x = 0; x < w; ++x)
            std::copy_n(srow + static_cast<size_t>(w - 1 - x) * px, px, drow + x * px);
    }
    return out;
}

Image adjust_brightness(const Image& img, double factor) {
    return run_unit_float(img, [&](Image& f) { brightness_inplace(f, factor); });
}

Image adjust_contrast(const Image& img, double factor) {
    return run_unit_float(img, [&](Image& f) { contrast_inplace(f, factor); });
}

Image adjust_saturation(const Image& img, double factor) {
    return run_unit_float(img, [&](Image& f) { saturation_inplace(f, factor); });
}

Image adjust_hue(const Image& img, double delta) {
    return run_unit_float(img, [&](Image& f) { hue_inplace(f, delta); });
}

Image to_grayscale(const Image& img) {
    if (img.channels() != 3) return img;
    Image out(img.width(), img.height(), 3, img.depth());
    const size_t pixels = static_cast<size_t>(img.width()) * img.height();
    if (img.depth() == Depth::byte) {
        const auto src = img.bytes();
        auto dst = out.bytes();
        for (size_t i = 0; i < pixels; ++i) {
            const double l = luma(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
            const auto b = static_cast<uint8_t>(std::clamp(round_half_up(l), 0, 255));
            dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = b;
        }
    } else {
        const auto src = img.floats();
        auto dst = out.floats();
        for (size_t i = 0; i < pixels; ++i) {
            const auto l = static_cast<float>(luma(src[3 * i], src[3 * i + 1], src[3 * i + 2]));
            dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = clamp01(l);
        }
    }
    return out;
}

Image gaussian_blur_fixed(const Image& img, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur: sigma must be > 0");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> weights(2 * radius + 1);
    double sum = 0.0;
    for (int d = -radius; d <= radius; ++d) {
        weights[d + radius] = std::exp(-(static_cast<double>(d) * d) / (2.0 * sigma * sigma));
        sum += weights[d + radius];
    }
    for (double& w : weights) w /= sum;

    return run_unit_float(img, [&](Image& f) {
        const int w = f.width(), h = f.height(), ch = f.channels();
        const size_t row = static_cast<size_t>(w) * ch;
        auto data = f.floats();
        std::vector<float> tmp(data.size());
        // Horizontal pass, replicate edges.
        for (int y = 0; y < h; ++y) {
            const float* src = data.data() + y * row;
            float* dst = tmp.data() + y * row;
            for (int x = 0; x < w; ++x) {
                for (int c = 0; c < ch; ++c) {
                    double acc = 0.0;
                    for (int d = -radius; d <= radius; ++d) {
                        const int sx = std::clamp(x + d, 0, w - 1);
                        acc += weights[d + radius] * src[static_cast<size_t>(sx) * ch + c];
                    }
                    dst[static_cast<size_t>(x) * ch + c] = static_cast<float>(acc);
                }
            }
        }
        // Vertical pass.
        for (int y = 0; y < h; ++y) {
            float* dst = data.data() + y * row;
            for (int x = 0; x < w; ++x) {
                for (int c = 0; c < ch; ++c) {
                    double acc = 0.0;
                    for (int d = -radius; d <= radius; ++d) {
                        const int sy = std::clamp(y + d, 0, h - 1);
                        acc += weights[d + radius] * tmp[sy * row + static_cast<size_t>(x) * ch + c];
                    }
                    dst[static_cast<size_t>(x) * ch + c] = clamp01(static_cast<float>(acc));
                }
            }
        }
    });
}

Image solarize(const Image& img, double threshold_unit) {
    Image out = img;
    if (img.depth() == Depth::byte) {
        const double thr = threshold_unit * 255.0;
        for (uint8_t& s : out.bytes())
            if (s >= thr) s = static_cast<uint8_t>(255 - s);
    } else {
        const auto thr = static_cast<float>(threshold_unit);
        for (float& s : out.floats())
            if (s >= thr) s = 1.0f - s;
    }
    return out;
}

Image crop_rescale(const Image& img, RngStream& rng, const CropRescaleParams& p,
                   int out_size, std::vector<double>* trace) {
    if (out_size < 1) throw std::invalid_argument("crop_rescale: out_size must be >= 1");
    const int W = img.width(), H = img.height();
    const double full_area = static_cast<double>(W) * H;
    for (int attempt = 0; attempt < 10; ++attempt) {
        const double area = rng.uniform(p.area_min, p.area_max);
        const double aspect = rng.uniform(p.aspect_min, p.aspect_max);
        if (trace) {
            trace->push_back(area);
            trace->push_back(aspect);
        }
        const double target = area * full_area;
        const int cw = round_half_up(std::sqrt(target * aspect));
        const int chh = round_half_up(std::sqrt(target / aspect));
        if (cw >= 1 && chh >= 1 && cw <= W && chh <= H) {
            const int x = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(W - cw) + 1));
            const int y = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(H - chh) + 1));
            if (trace) {
                trace->push_back(x);
                trace->push_back(y);
            }
            return crop_resize(img, x, y, cw, chh, out_size);
        }
    }
    // Fallback: centered square of the largest valid side.
    const int side = std::min(W, H);
    return crop_resize(img, (W - side) / 2, (H - side) / 2, side, side, out_size);
}

Image color_jitter(const Image& img, RngStream& rng, const ColorJitterParams& p,
                   std::vector<double>* trace) {
    if (p.brightness < 0 || p.contrast < 0 || p.saturation < 0 || p.hue < 0)
        throw std::invalid_argument("color_jitter: strengths must be >= 0");
    int order[4] = {0, 1, 2, 3};
    for (int i = 3; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
        if (trace) trace->push_back(j);
    }
    return run_unit_float(img, [&](Image& f) {
        for (int idx : order) {
            switch (idx) {
                case 0:
                    if (p.brightness > 0) {
                        const double v = rng.uniform(std::max(0.0, 1.0 - p.brightness), 1.0 + p.brightness);
                        if (trace) trace->push_back(v);
                        brightness_inplace(f, v);
                    }
                    break;
                case 1:
                    if (p.contrast > 0) {
                        const double v = rng.uniform(std::max(0.0, 1.0 - p.contrast), 1.0 + p.contrast);
                        if (trace) trace->push_back(v);
                        contrast_inplace(f, v);
                    }
                    break;
                case 2:
                    if (p.saturation > 0) {
                        const double v = rng.uniform(std::max(0.0, 1.0 - p.saturation), 1.0 + p.saturation);
                        if (trace) trace->push_back(v);
                        saturation_inplace(f, v);
                    }
                    break;
                default:
                    if (p.hue > 0) {
                        const double v = rng.uniform(-p.hue, p.hue);
                        if (trace) trace->push_back(v);
                        hue_inplace(f, v);
                    }
                    break;
            }
        }
    });
}

Image gaussian_blur(const Image& img, RngStream& rng, const GaussianBlurParams& p,
                    std::vector<double>* trace) {
    if (!(p.sigma_min > 0.0 && p.sigma_min <= p.sigma_max))
        throw std::invalid_argument("gaussian_blur: sigma range must satisfy 0 < min <= max");
    const double sigma = rng.uniform(p.sigma_min, p.sigma_max);
    if (trace) trace->push_back(sigma);
    return gaussian_blur_fixed(img, sigma);
}

Image apply_pipeline(const Image& img, const PipelineSpec& spec, const RngStream& rng,
                     std::vector<StepTrace>* trace, InvocationCounters* counters) {
    spec.validate();
    Image cur = img;
    for (size_t k = 0; k < spec.steps.size(); ++k) {
        const TransformSpec& step = spec.steps[k];
        RngStream sub = rng.derive(k);
        const double gate = sub.next_double();
        const bool fire = gate < step.probability;
        StepTrace* entry = nullptr;
        if (trace) {
            trace->push_back({step.kind, fire, {}});
            entry = &trace->back();
        }
        if (!fire) continue;
        if (counters) counters->add(step.kind);
        std::vector<double>* draws = entry ? &entry->draws : nullptr;
        switch (step.kind) {
            case TransformKind::crop_rescale:
                cur = crop_rescale(cur, sub, std::get<CropRescaleParams>(step.params),
                                   spec.output_size, draws);
                break;
            case TransformKind::horizontal_flip:
                cur = horizontal_flip(cur);
                break;
            case TransformKind::color_jitter:
                cur = color_jitter(cur, sub, std::get<ColorJitterParams>(step.params), draws);
                break;
            case TransformKind::grayscale:
                cur = to_grayscale(cur);
                break;
            case TransformKind::gaussian_blur:
                cur = gaussian_blur(cur, sub, std::get<GaussianBlurParams>(step.params), draws);
                break;
            case TransformKind::solarize:
                cur = solarize(cur, std::get<SolarizeParams>(step.params).threshold);
                break;
        }
    }
    return cur;
}

}  // namespace viewmix
