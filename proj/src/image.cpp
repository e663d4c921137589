// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace viewmix {

namespace {

void check_shape(int width, int height, int channels) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("image dimensions must be >= 1, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    if (channels != 1 && channels != 3)
        throw std::invalid_argument("image must have 1 or 3 channels, got " +
                                    std::to_string(channels));
}

}  // namespace

Image::Image(int width, int height, int channels, Depth depth)
    : width_(width), height_(height), channels_(channels), depth_(depth) {
    check_shape(width, height, channels);
    if (depth_ == Depth::byte) {
        u8_.resize(sample_count());
    } else {
        f32_.resize(sample_count());
    }
}

Image Image::from_bytes(int width, int height, int channels, std::vector<uint8_t> data) {
    check_shape(width, height, channels);
    Image img;
    img.width_ = width;
    img.height_ = height;
    img.channels_ = channels;
    img.depth_ = Depth::byte;
    if (data.size() != img.sample_count())
        throw std::invalid_argument("byte buffer size " + std::to_string(data.size()) +
                                    " does not match width*height*channels = " +
                                    std::to_string(img.sample_count()));
    img.u8_ = std::move(data);
    return img;
}

Image Image::from_floats(int width, int height, int channels, std::vector<float> data) {
    check_shape(width, height, channels);
    Image img;
    img.width_ = width;
    img.height_ = height;
    img.channels_ = channels;
    img.depth_ = Depth::unit_float;
    if (data.size() != img.sample_count())
        throw std::invalid_argument("float buffer size " + std::to_string(data.size()) +
                                    " does not match width*height*channels = " +
                                    std::to_string(img.sample_count()));
    for (float v : data) {
        if (!(v >= 0.0f && v <= 1.0f))
            throw std::invalid_argument("unit-float sample out of [0,1]: " + std::to_string(v));
    }
    img.f32_ = std::move(data);
    return img;
}

std::span<const uint8_t> Image::bytes() const {
    if (depth_ != Depth::byte) throw std::logic_error("bytes() on unit-float image");
    return u8_;
}

std::span<uint8_t> Image::bytes() {
    if (depth_ != Depth::byte) throw std::logic_error("bytes() on unit-float image");
    return u8_;
}

std::span<const float> Image::floats() const {
    if (depth_ != Depth::unit_float) throw std::logic_error("floats() on byte image");
    return f32_;
}

std::span<float> Image::floats() {
    if (depth_ != Depth::unit_float) throw std::logic_error("floats() on byte image");
    return f32_;
}

uint8_t Image::byte_at(int x, int y, int c) const {
    return u8_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
}

float Image::float_at(int x, int y, int c) const {
    return f32_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
}

const uint8_t* Image::raw() const {
    return depth_ == Depth::byte ? u8_.data()
                                 : reinterpret_cast<const uint8_t*>(f32_.data());
}

uint8_t* Image::raw() {
    return depth_ == Depth::byte ? u8_.data() : reinterpret_cast<uint8_t*>(f32_.data());
}

bool operator==(const Image& a, const Image& b) {
    if (!a.same_shape(b)) return false;
    if (a.depth_ == Depth::byte) return a.u8_ == b.u8_;
    return a.f32_ == b.f32_;
}

uint8_t float_to_byte_sample(double v) {
    const double scaled = std::floor(v * 255.0 + 0.5);  // half-up
    if (scaled <= 0.0) return 0;
    if (scaled >= 255.0) return 255;
    return static_cast<uint8_t>(scaled);
}

Image convert_depth(const Image& img, Depth target) {
    if (img.depth() == target) return img;
    Image out(img.width(), img.height(), img.channels(), target);
    const size_t n = img.sample_count();
    if (target == Depth::unit_float) {
        const auto src = img.bytes();
        auto dst = out.floats();
        for (size_t i = 0; i < n; ++i) dst[i] = byte_to_float_sample(src[i]);
    } else {
        const auto src = img.floats();
        auto dst = out.bytes();
        for (size_t i = 0; i < n; ++i) dst[i] = float_to_byte_sample(src[i]);
    }
    return out;
}

uint64_t fnv1a64(const void* data, size_t n, uint64_t h) {
    const auto* p = static_cast<const uint8_t*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t image_hash(const Image& img) {
    const int32_t header[4] = {img.width(), img.height(), img.channels(),
                               img.depth() == Depth::byte ? 0 : 1};
    uint64_t h = fnv1a64(header, sizeof(header));
    return fnv1a64(img.raw(), img.raw_size(), h);
}

}  // namespace viewmix
