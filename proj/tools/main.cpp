// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "viewmix/bench.hpp"
#include "viewmix/config.hpp"
#include "viewmix/multiview.hpp"
#include "viewmix/parallel.hpp"
#include "viewmix/stats.hpp"
#include "viewmix/tensor_io.hpp"

namespace {

using namespace viewmix;

Dataset dataset_from(const EngineConfig& cfg) {
    if (!cfg.dataset)
        throw std::runtime_error("config has no 'dataset' section");
    return cfg.dataset->load();
}

std::string shape_string(const Tensor& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.shape.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t.shape[i]);
    }
    return s + ")";
}

void write_provenance(const std::vector<ViewBatch>& batches, Strategy strategy,
                      const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write provenance file: " + path.string());
    for (const auto& batch : batches) {
        for (size_t v = 0; v < batch.provenance.size(); ++v) {
            const auto& p = batch.provenance[v];
            char buf[512];
            int n = std::snprintf(buf, sizeof(buf),
                                  "{\"source_index\":%d,\"view\":%zu,\"strategy\":\"%s\","
                                  "\"applied\":%s",
                                  batch.source_index, v, to_string(strategy),
                                  p.applied ? "true" : "false");
            std::string line(buf, static_cast<size_t>(n));
            if (p.applied && p.bbox) {
                std::snprintf(buf, sizeof(buf),
                              ",\"bbox\":{\"center_x\":%.17g,\"center_y\":%.17g,"
                              "\"lambda\":%.17g,\"nominal_w\":%d,\"nominal_h\":%d,"
                              "\"left\":%d,\"top\":%d,\"right\":%d,\"bottom\":%d}",
                              p.bbox->center_x, p.bbox->center_y, p.bbox->lambda,
                              p.bbox->nominal_w, p.bbox->nominal_h, p.bbox->clipped.left,
                              p.bbox->clipped.top, p.bbox->clipped.right, p.bbox->clipped.bottom);
                line += buf;
            }
            if (p.donor_view) line += ",\"donor_view\":" + std::to_string(*p.donor_view);
            if (p.donor_image) line += ",\"donor_image\":" + std::to_string(*p.donor_image);
            if (p.base_hash) {
                std::snprintf(buf, sizeof(buf), ",\"base_hash\":\"%016" PRIx64 "\"", p.base_hash);
                line += buf;
            }
            out << line << "}\n";
        }
    }
}

// Cells are pasted onto a white canvas with a 2px gutter.
Image compose_grid(const std::vector<std::vector<Image>>& rows) {
    constexpr int pad = 2;
    const int cell = rows.front().front().width();
    const int cols = static_cast<int>(rows.front().size());
    const int grid_w = cols * cell + (cols + 1) * pad;
    const int grid_h = static_cast<int>(rows.size()) * cell + (static_cast<int>(rows.size()) + 1) * pad;
    Image grid(grid_w, grid_h, 3, Depth::byte);
    std::fill(grid.bytes().begin(), grid.bytes().end(), uint8_t{255});
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < rows[r].size(); ++c) {
            const Image cell_img = convert_depth(rows[r][c], Depth::byte);
            const int x0 = pad + static_cast<int>(c) * (cell + pad);
            const int y0 = pad + static_cast<int>(r) * (cell + pad);
            for (int y = 0; y < cell_img.height(); ++y) {
                for (int x = 0; x < cell_img.width(); ++x) {
                    for (int ch = 0; ch < 3; ++ch) {
                        const int src_c = cell_img.channels() == 3 ? ch : 0;
                        grid.bytes()[((static_cast<size_t>(y0 + y) * grid_w) + x0 + x) * 3 + ch] =
                            cell_img.byte_at(x, y, src_c);
                    }
                }
            }
        }
    }
    return grid;
}

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    int threads = 0;  // 0 = hardware concurrency
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "experiment config file (JSON)")->required();
    sub->add_option("--set", args.overrides,
                    "config override path.to.key=value, last one wins; repeatable");
    sub->add_option("--threads", args.threads, "worker threads (0 = hardware)");
}

int cmd_ingest(const CommonArgs& common, const std::string& output) {
    const EngineConfig cfg = load_config(common.config_path, common.overrides);
    const Dataset ds = dataset_from(cfg);
    const Image& first = ds.image(0);
    std::printf("dataset: %zu items, %dx%dx%d %s, source %s\n", ds.size(), first.width(),
                first.height(), first.channels(),
                first.depth() == Depth::byte ? "u8" : "f32", ds.source.c_str());
    if (!output.empty()) {
        Tensor t;
        t.dtype = TensorDtype::u8;
        t.shape = {ds.size(), static_cast<uint64_t>(first.height()),
                   static_cast<uint64_t>(first.width()),
                   static_cast<uint64_t>(first.channels())};
        for (const auto& item : ds.items) {
            const Image img = convert_depth(item.image, Depth::byte);
            t.payload.insert(t.payload.end(), img.raw(), img.raw() + img.raw_size());
        }
        write_tensor(t, output);
        std::printf("wrote %s shape %s\n", output.c_str(), shape_string(t).c_str());
    }
    return 0;
}

int cmd_augment(const CommonArgs& common, uint64_t seed, uint64_t step, size_t limit,
                const std::string& output, const std::string& provenance_path) {
    const EngineConfig cfg = load_config(common.config_path, common.overrides);
    const Dataset ds = dataset_from(cfg);
    const size_t count = limit == 0 ? ds.size() : std::min(limit, ds.size());
    std::vector<size_t> indices(count);
    std::iota(indices.begin(), indices.end(), size_t{0});

    RunOptions opts;
    opts.threads = common.threads;
    opts.record_base_hash = !provenance_path.empty();
    const auto batches = generate_batch(ds, indices, cfg.multiview, seed, step, opts);
    const Tensor t = batch_to_tensor(batches);
    write_tensor(t, output);
    if (!provenance_path.empty())
        write_provenance(batches, cfg.multiview.strategy, provenance_path);
    std::printf("augmented %zu images x %d views, strategy %s, seed %" PRIu64
                ", step %" PRIu64 ", threads %d\n",
                count, cfg.multiview.num_views, to_string(cfg.multiview.strategy), seed, step,
                resolve_threads(common.threads));
    std::printf("wrote %s shape %s dtype %s\n", output.c_str(), shape_string(t).c_str(),
                t.dtype == TensorDtype::u8 ? "u8" : "f32");
    return 0;
}

int cmd_preview(const CommonArgs& common, uint64_t seed, size_t count,
                const std::string& output) {
    const EngineConfig cfg = load_config(common.config_path, common.overrides);
    const Dataset ds = dataset_from(cfg);
    count = std::min(count, ds.size());
    const Strategy strategy = cfg.multiview.strategy;
    if (strategy == Strategy::cutmix && count < 2)
        throw std::runtime_error("preview: cutmix needs at least 2 images");

    MultiViewConfig base_cfg = cfg.multiview;
    base_cfg.strategy = Strategy::baseline;
    std::vector<size_t> indices(count);
    std::iota(indices.begin(), indices.end(), size_t{0});
    RunOptions opts;
    opts.threads = common.threads;
    const auto batches = generate_batch(ds, indices, base_cfg, seed, 0, opts);

    // Column order: original, view A, view B, then the strategy result built
    // on view A (forced on, so the panel always shows the effect).
    constexpr uint64_t kPreviewDomain = 0x70726576u;  // distinct from batch streams
    const RngStream preview_root = RngStream(seed).derive(kPreviewDomain);
    const int out_size = cfg.multiview.base_pipeline.output_size;
    std::vector<std::vector<Image>> rows;
    for (size_t i = 0; i < count; ++i) {
        const Image& src = ds.image(indices[i]);
        std::vector<Image> row;
        row.push_back(crop_resize(src, 0, 0, src.width(), src.height(), out_size));
        row.push_back(batches[i].views[0]);
        row.push_back(batches[i].views[1]);
        if (strategy != Strategy::baseline) {
            RngStream prng = preview_root.derive(i);
            const BBox box = sample_bbox(out_size, out_size, cfg.multiview.r_min,
                                         cfg.multiview.r_max, prng, cfg.multiview.lambda_mode);
            switch (strategy) {
                case Strategy::viewmix:
                    row.push_back(apply_viewmix(batches[i].views[0], batches[i].views[1],
                                                mask_from(box, out_size, out_size)));
                    break;
                case Strategy::cutout:
                    row.push_back(apply_cutout(batches[i].views[0], box, cfg.multiview.cutout_fill));
                    break;
                case Strategy::cutmix:
                    row.push_back(apply_cutmix(batches[i].views[0],
                                               batches[(i + 1) % count].views[0], box)
                                      .image);
                    break;
                case Strategy::baseline:
                    break;
            }
        }
        rows.push_back(std::move(row));
    }
    write_png(compose_grid(rows), output);
    std::printf("wrote %s (%zu rows x %zu cols, strategy %s, seed %" PRIu64 ")\n",
                output.c_str(), rows.size(), rows.front().size(), to_string(strategy), seed);
    return 0;
}

int cmd_stats(const CommonArgs& common, uint64_t seed, uint64_t samples) {
    const EngineConfig cfg = load_config(common.config_path, common.overrides);
    const Dataset ds = dataset_from(cfg);
    const StatsReport report = collect_stats(ds, cfg.multiview, seed, samples, common.threads);
    std::fputs(format_stats(report).c_str(), stdout);
    return 0;
}

int cmd_bench(const CommonArgs& common, uint64_t seed, const std::string& delimited_out,
              bool threads_set) {
    const EngineConfig cfg = load_config(common.config_path, common.overrides);
    const Dataset ds = dataset_from(cfg);
    BenchConfig bench = cfg.bench;
    if (threads_set) bench.threads = common.threads;
    const BenchReport report = run_benchmark(bench, ds, seed);
    std::fputs(emit_report(report, ReportFormat::human).c_str(), stdout);
    const std::string delimited = emit_report(report, ReportFormat::delimited);
    std::fputs(delimited.c_str(), stdout);
    if (!delimited_out.empty()) {
        std::ofstream out(delimited_out, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write report file: " + delimited_out);
        out << delimited;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"viewmix: deterministic multi-view image augmentation engine"};
    app.require_subcommand(1);

    CommonArgs common;
    uint64_t seed = 0;
    uint64_t step = 0;
    uint64_t samples = 10000;
    size_t limit = 0;
    size_t count = 3;
    std::string output;
    std::string provenance_path;
    std::string delimited_out;

    CLI::App* ingest = app.add_subcommand("ingest", "load a dataset and report its shape");
    add_common(ingest, common);
    ingest->add_option("--output", output, "optional raw tensor dump of the dataset");

    CLI::App* augment =
        app.add_subcommand("augment", "generate views and export the tensor container");
    add_common(augment, common);
    augment->add_option("--seed", seed, "RNG seed")->required();
    augment->add_option("--step", step, "batch step id mixed into the streams");
    augment->add_option("--limit", limit, "augment only the first N images (0 = all)");
    augment->add_option("--output", output, "tensor container path")->required();
    augment->add_option("--provenance", provenance_path,
                        "write line-delimited per-view provenance records");

    CLI::App* preview = app.add_subcommand("preview", "render a PNG grid of views");
    add_common(preview, common);
    preview->add_option("--seed", seed, "RNG seed");
    preview->add_option("--count", count, "rows (source images)");
    preview->add_option("--output", output, "PNG path")->required();

    CLI::App* stats =
        app.add_subcommand("stats", "empirical firing rates and mask geometry histograms");
    add_common(stats, common);
    stats->add_option("--seed", seed, "RNG seed");
    stats->add_option("--samples", samples, "number of view generations");

    CLI::App* bench = app.add_subcommand("bench", "transformation-only timing protocol");
    add_common(bench, common);
    bench->add_option("--seed", seed, "RNG seed")->required();
    bench->add_option("--delimited-out", delimited_out, "also write the delimited report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(common, output);
        if (augment->parsed())
            return cmd_augment(common, seed, step, limit, output, provenance_path);
        if (preview->parsed()) return cmd_preview(common, seed, count, output);
        if (stats->parsed()) return cmd_stats(common, seed, samples);
        if (bench->parsed())
            return cmd_bench(common, seed, delimited_out,
                             bench->count("--threads") > 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
