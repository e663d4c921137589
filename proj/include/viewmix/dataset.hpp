// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "viewmix/image.hpp"

namespace viewmix {

struct LabeledImage {
    Image image;
    int label = 0;  // used only for CutMix donor bookkeeping and ingest audit
};

// Non-empty, uniformly shaped image collection held fully in memory.
struct Dataset {
    std::vector<LabeledImage> items;
    std::string source;

    size_t size() const { return items.size(); }
    const Image& image(size_t i) const { return items[i].image; }
};

// CIFAR-10 binary batch: 3073-byte records, 1 label byte then the R, G and B
// 32x32 planes. Planes are interleaved at ingest so downstream kernels see a
// single layout.
Dataset load_cifar10(const std::filesystem::path& path);

// Inverse of load_cifar10; decode-then-encode reproduces the input bytes.
std::vector<uint8_t> encode_cifar10(const Dataset& dataset);
void save_cifar10(const Dataset& dataset, const std::filesystem::path& path);

// Loads every *.png / *.jpg / *.jpeg in `dir` (non-recursive), sorted by
// filename, as 3-channel byte images. With `resize_to` set, every image is
// bilinearly rescaled to resize_to x resize_to; otherwise mixed sizes are an
// error.
Dataset load_image_folder(const std::filesystem::path& dir,
                          std::optional<int> resize_to = std::nullopt);

// PNG write for preview grids (RGB byte images).
void write_png(const Image& img, const std::filesystem::path& path);

}  // namespace viewmix
