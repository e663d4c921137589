// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "tensor container assumes a little-endian host");

namespace viewmix {

namespace {

constexpr size_t kMagicLen = 9;

const char* dtype_name(TensorDtype d) { return d == TensorDtype::u8 ? "u8" : "f32"; }

size_t dtype_size(TensorDtype d) { return d == TensorDtype::u8 ? 1 : 4; }

}  // namespace

uint64_t Tensor::element_count() const {
    uint64_t n = 1;
    for (uint64_t d : shape) n *= d;
    return shape.empty() ? 0 : n;
}

void write_tensor(const Tensor& tensor, const std::filesystem::path& path) {
    if (tensor.shape.empty()) throw std::invalid_argument("tensor: shape must be non-empty");
    if (tensor.payload.size() != tensor.element_count() * dtype_size(tensor.dtype))
        throw std::invalid_argument("tensor: payload size does not match shape");
    std::ostringstream header;
    header << kTensorMagic << "dtype=" << dtype_name(tensor.dtype) << " shape=";
    for (size_t i = 0; i < tensor.shape.size(); ++i) {
        if (i) header << ',';
        header << tensor.shape[i];
    }
    header << '\n';
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    const std::string h = header.str();
    out.write(h.data(), static_cast<std::streamsize>(h.size()));
    out.write(reinterpret_cast<const char*>(tensor.payload.data()),
              static_cast<std::streamsize>(tensor.payload.size()));
    if (!out) throw std::runtime_error("short write: " + path.string());
}

Tensor read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::string all{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (all.size() < kMagicLen || all.compare(0, kMagicLen, kTensorMagic) != 0)
        throw std::runtime_error("tensor: bad magic in " + path.string());
    const size_t nl = all.find('\n', kMagicLen);
    if (nl == std::string::npos)
        throw std::runtime_error("tensor: missing header line in " + path.string());
    const std::string header = all.substr(kMagicLen, nl - kMagicLen);

    Tensor t;
    std::istringstream hs(header);
    std::string dtype_field, shape_field;
    if (!(hs >> dtype_field >> shape_field) || dtype_field.rfind("dtype=", 0) != 0 ||
        shape_field.rfind("shape=", 0) != 0)
        throw std::runtime_error("tensor: malformed header '" + header + "'");
    const std::string dtype = dtype_field.substr(6);
    if (dtype == "u8")
        t.dtype = TensorDtype::u8;
    else if (dtype == "f32")
        t.dtype = TensorDtype::f32;
    else
        throw std::runtime_error("tensor: unknown dtype '" + dtype + "'");
    std::istringstream dims(shape_field.substr(6));
    std::string dim;
    while (std::getline(dims, dim, ',')) {
        if (dim.empty() || dim.find_first_not_of("0123456789") != std::string::npos)
            throw std::runtime_error("tensor: bad shape entry '" + dim + "'");
        t.shape.push_back(std::stoull(dim));
    }
    if (t.shape.empty()) throw std::runtime_error("tensor: empty shape");

    t.payload.assign(all.begin() + static_cast<std::ptrdiff_t>(nl) + 1, all.end());
    if (t.payload.size() != t.element_count() * dtype_size(t.dtype))
        throw std::runtime_error("tensor: payload size " + std::to_string(t.payload.size()) +
                                 " does not match advertised shape");
    return t;
}

Tensor batch_to_tensor(const std::vector<ViewBatch>& batches, ExportDtype dtype) {
    if (batches.empty()) throw std::invalid_argument("export: empty batch list");
    const size_t num_views = batches.front().views.size();
    if (num_views == 0) throw std::invalid_argument("export: batch has no views");
    const Image& ref = batches.front().views.front();
    for (const auto& b : batches) {
        if (b.views.size() != num_views)
            throw std::invalid_argument("export: inconsistent view count across batches");
        for (const auto& v : b.views)
            if (!v.same_shape(ref))
                throw std::invalid_argument("export: views do not share one shape");
    }

    Depth want = ref.depth();
    if (dtype == ExportDtype::u8) want = Depth::byte;
    if (dtype == ExportDtype::f32) want = Depth::unit_float;

    Tensor t;
    t.dtype = want == Depth::byte ? TensorDtype::u8 : TensorDtype::f32;
    t.shape = {batches.size(), num_views, static_cast<uint64_t>(ref.height()),
               static_cast<uint64_t>(ref.width()), static_cast<uint64_t>(ref.channels())};
    t.payload.reserve(t.element_count() * (want == Depth::byte ? 1 : 4));
    for (const auto& b : batches) {
        for (const auto& v : b.views) {
            if (v.depth() == want) {
                t.payload.insert(t.payload.end(), v.raw(), v.raw() + v.raw_size());
            } else {
                const Image conv = convert_depth(v, want);
                t.payload.insert(t.payload.end(), conv.raw(), conv.raw() + conv.raw_size());
            }
        }
    }
    return t;
}

void export_batch(const std::vector<ViewBatch>& batches, const std::filesystem::path& path,
                  ExportDtype dtype) {
    write_tensor(batch_to_tensor(batches, dtype), path);
}

}  // namespace viewmix
