// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "viewmix/transforms.hpp"

namespace viewmix {

namespace {

constexpr size_t kCifarSide = 32;
constexpr size_t kCifarPlane = kCifarSide * kCifarSide;
constexpr size_t kCifarRecord = 1 + 3 * kCifarPlane;

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string lower_ext(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

}  // namespace

Dataset load_cifar10(const std::filesystem::path& path) {
    const std::vector<uint8_t> bytes = read_file(path);
    if (bytes.empty()) throw std::runtime_error("cifar10: empty file: " + path.string());
    if (bytes.size() % kCifarRecord != 0)
        throw std::runtime_error("cifar10: truncated record starting at byte offset " +
                                 std::to_string(bytes.size() - bytes.size() % kCifarRecord) +
                                 " in " + path.string());
    const size_t records = bytes.size() / kCifarRecord;
    Dataset ds;
    ds.source = path.string();
    ds.items.reserve(records);
    for (size_t r = 0; r < records; ++r) {
        const uint8_t* rec = bytes.data() + r * kCifarRecord;
        if (rec[0] > 9)
            throw std::runtime_error("cifar10: invalid label " + std::to_string(rec[0]) +
                                     " in record " + std::to_string(r) + " at byte offset " +
                                     std::to_string(r * kCifarRecord));
        std::vector<uint8_t> data(3 * kCifarPlane);
        const uint8_t* planes = rec + 1;
        for (size_t p = 0; p < kCifarPlane; ++p) {
            data[3 * p] = planes[p];
            data[3 * p + 1] = planes[kCifarPlane + p];
            data[3 * p + 2] = planes[2 * kCifarPlane + p];
        }
        ds.items.push_back({Image::from_bytes(kCifarSide, kCifarSide, 3, std::move(data)),
                            rec[0]});
    }
    return ds;
}

std::vector<uint8_t> encode_cifar10(const Dataset& dataset) {
    std::vector<uint8_t> out;
    out.reserve(dataset.size() * kCifarRecord);
    for (const auto& item : dataset.items) {
        const Image& img = item.image;
        if (img.width() != static_cast<int>(kCifarSide) ||
            img.height() != static_cast<int>(kCifarSide) || img.channels() != 3 ||
            img.depth() != Depth::byte)
            throw std::invalid_argument("cifar10 encode: images must be 32x32x3 byte");
        out.push_back(static_cast<uint8_t>(item.label));
        const auto data = img.bytes();
        for (int c = 0; c < 3; ++c)
            for (size_t p = 0; p < kCifarPlane; ++p) out.push_back(data[3 * p + c]);
    }
    return out;
}

void save_cifar10(const Dataset& dataset, const std::filesystem::path& path) {
    const auto bytes = encode_cifar10(dataset);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

Dataset load_image_folder(const std::filesystem::path& dir, std::optional<int> resize_to) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = lower_ext(entry.path());
        if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    if (files.empty())
        throw std::runtime_error("no PNG/JPEG files in directory: " + dir.string());

    Dataset ds;
    ds.source = dir.string();
    ds.items.reserve(files.size());
    for (const auto& file : files) {
        cv::Mat mat = cv::imread(file.string(), cv::IMREAD_COLOR);
        if (mat.empty())
            throw std::runtime_error("cannot decode image file: " + file.string());
        std::vector<uint8_t> data(static_cast<size_t>(mat.rows) * mat.cols * 3);
        for (int y = 0; y < mat.rows; ++y) {
            const auto* row = mat.ptr<cv::Vec3b>(y);
            for (int x = 0; x < mat.cols; ++x) {
                const size_t o = (static_cast<size_t>(y) * mat.cols + x) * 3;
                data[o] = row[x][2];  // BGR -> RGB
                data[o + 1] = row[x][1];
                data[o + 2] = row[x][0];
            }
        }
        Image img = Image::from_bytes(mat.cols, mat.rows, 3, std::move(data));
        if (resize_to)
            img = crop_resize(img, 0, 0, img.width(), img.height(), *resize_to);
        ds.items.push_back({std::move(img), 0});
    }
    for (size_t i = 1; i < ds.items.size(); ++i) {
        if (!ds.items[i].image.same_shape(ds.items[0].image))
            throw std::runtime_error("mixed image sizes in " + dir.string() +
                                     " (pass a resize target to unify)");
    }
    return ds;
}

void write_png(const Image& img, const std::filesystem::path& path) {
    const Image byte_img = convert_depth(img, Depth::byte);
    cv::Mat mat(byte_img.height(), byte_img.width(),
                byte_img.channels() == 3 ? CV_8UC3 : CV_8UC1);
    const auto data = byte_img.bytes();
    for (int y = 0; y < mat.rows; ++y) {
        for (int x = 0; x < mat.cols; ++x) {
            const size_t o =
                (static_cast<size_t>(y) * mat.cols + x) * byte_img.channels();
            if (byte_img.channels() == 3)
                mat.at<cv::Vec3b>(y, x) = {data[o + 2], data[o + 1], data[o]};  // RGB -> BGR
            else
                mat.at<uint8_t>(y, x) = data[o];
        }
    }
    if (!cv::imwrite(path.string(), mat))
        throw std::runtime_error("cannot write PNG: " + path.string());
}

}  // namespace viewmix
