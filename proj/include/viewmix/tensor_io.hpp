// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "viewmix/multiview.hpp"

namespace viewmix {

// Container layout (byte-exact, little-endian):
//   bytes 0..8   magic "VMIXTENS1"
//   then one UTF-8 header line "dtype=<u8|f32> shape=<d0,d1,...>\n"
//   then the payload in C order.
inline constexpr char kTensorMagic[] = "VMIXTENS1";

enum class TensorDtype { u8, f32 };

struct Tensor {
    TensorDtype dtype = TensorDtype::u8;
    std::vector<uint64_t> shape;
    std::vector<uint8_t> payload;  // raw little-endian bytes

    uint64_t element_count() const;
};

void write_tensor(const Tensor& tensor, const std::filesystem::path& path);
Tensor read_tensor(const std::filesystem::path& path);

enum class ExportDtype { from_views, u8, f32 };

// Serializes batches as shape (num_images, num_views, height, width,
// channels). All views must share one shape; violations are reported before
// any bytes are written. Identical input always produces identical bytes.
void export_batch(const std::vector<ViewBatch>& batches, const std::filesystem::path& path,
                  ExportDtype dtype = ExportDtype::from_views);

Tensor batch_to_tensor(const std::vector<ViewBatch>& batches,
                       ExportDtype dtype = ExportDtype::from_views);

}  // namespace viewmix
