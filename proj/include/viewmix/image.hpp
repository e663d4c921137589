// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace viewmix {

// Sample representation of an image buffer.
enum class Depth {
    byte,       // uint8 samples in [0, 255]
    unit_float  // float32 samples in [0.0, 1.0]
};

// Owned pixel buffer: interleaved, row-major, 1 or 3 channels.
// Images are treated as immutable once built; transforms return new buffers.
// Safe to share read-only across threads.
class Image {
public:
    Image() = default;
    Image(int width, int height, int channels, Depth depth);

    // Validating factories for data that crosses an API boundary.
    static Image from_bytes(int width, int height, int channels,
                            std::vector<uint8_t> data);
    static Image from_floats(int width, int height, int channels,
                             std::vector<float> data);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    Depth depth() const { return depth_; }

    size_t sample_count() const {
        return static_cast<size_t>(width_) * height_ * channels_;
    }
    // Bytes per sample (1 for byte, 4 for unit_float).
    size_t sample_size() const { return depth_ == Depth::byte ? 1 : 4; }

    std::span<const uint8_t> bytes() const;
    std::span<uint8_t> bytes();
    std::span<const float> floats() const;
    std::span<float> floats();

    uint8_t byte_at(int x, int y, int c) const;
    float float_at(int x, int y, int c) const;

    // Raw sample storage regardless of depth.
    const uint8_t* raw() const;
    uint8_t* raw();
    size_t raw_size() const { return sample_count() * sample_size(); }

    bool same_shape(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_ && depth_ == other.depth_;
    }

    friend bool operator==(const Image& a, const Image& b);

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    Depth depth_ = Depth::byte;
    std::vector<uint8_t> u8_;
    std::vector<float> f32_;
};

// byte -> float maps s/255; float -> byte rounds half-up and clamps.
// Round-trip byte -> float -> byte is the identity.
Image convert_depth(const Image& img, Depth target);

uint8_t float_to_byte_sample(double v);
inline float byte_to_float_sample(uint8_t v) { return static_cast<float>(v) / 255.0f; }

// FNV-1a over a byte range; `h` chains multiple ranges.
uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 0xcbf29ce484222325ull);

// Hash of shape, depth and raw samples.
uint64_t image_hash(const Image& img);

}  // namespace viewmix
