// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "viewmix/parallel.hpp"

namespace viewmix {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<size_t> batch_indices(int step, int batch_size, size_t dataset_size) {
    std::vector<size_t> indices(static_cast<size_t>(batch_size));
    for (int i = 0; i < batch_size; ++i)
        indices[static_cast<size_t>(i)] =
            (static_cast<size_t>(step) * batch_size + static_cast<size_t>(i)) % dataset_size;
    return indices;
}

const char* kDelimitedHeader =
    "strategy,resolution,batch_size,steps,repeats,threads,total_seconds,"
    "sec_per_step_mean,sec_per_step_std,images_per_second,relative_overhead,"
    "crop_rescale_count,horizontal_flip_count,color_jitter_count,grayscale_count,"
    "gaussian_blur_count,solarize_count,regional_count,base_view_hash";

}  // namespace

void BenchConfig::validate() const {
    if (resolution < 1) throw std::invalid_argument("bench: resolution must be >= 1");
    if (batch_size < 1) throw std::invalid_argument("bench: batch_size must be >= 1");
    if (steps < 1) throw std::invalid_argument("bench: steps must be >= 1");
    if (repeats < 1) throw std::invalid_argument("bench: repeats must be >= 1");
    if (warmup_steps < 0) throw std::invalid_argument("bench: warmup_steps must be >= 0");
    if (threads < 0) throw std::invalid_argument("bench: threads must be >= 0");
    multiview.validate();
    if (multiview.base_pipeline.output_size != resolution)
        throw std::invalid_argument("bench: pipeline output_size must equal resolution");
}

BenchReport run_benchmark(const BenchConfig& cfg, const Dataset& dataset, uint64_t seed) {
    cfg.validate();
    if (dataset.size() < static_cast<size_t>(cfg.batch_size))
        throw std::invalid_argument("bench: dataset smaller than batch_size");
    for (const auto& item : dataset.items)
        if (item.image.width() != cfg.resolution || item.image.height() != cfg.resolution)
            throw std::invalid_argument("bench: dataset images must match the resolution");

    BenchReport report;
    report.resolution = cfg.resolution;
    report.batch_size = cfg.batch_size;
    report.steps = cfg.steps;
    report.repeats = cfg.repeats;
    report.threads = resolve_threads(cfg.threads);
    report.seed = seed;

    for (Strategy strategy : cfg.strategies) {
        MultiViewConfig mv = cfg.multiview;
        mv.strategy = strategy;

        StrategyTiming row;
        row.strategy = strategy;

        // Untimed verification pass: fold base-view hashes of step 0 so the
        // shared-base-view invariant is checkable across strategies.
        {
            RunOptions opts;
            opts.threads = cfg.threads;
            opts.record_base_hash = true;
            const auto indices = batch_indices(0, cfg.batch_size, dataset.size());
            const auto batches = generate_batch(dataset, indices, mv, seed, 0, opts);
            uint64_t fold = 0xcbf29ce484222325ull;
            for (const auto& b : batches)
                for (const auto& p : b.provenance)
                    fold = fnv1a64(&p.base_hash, sizeof(p.base_hash), fold);
            row.base_view_hash = fold;
        }

        InvocationCounters counters;
        RunOptions opts;
        opts.threads = cfg.threads;
        opts.counters = &counters;

        for (int w = 0; w < cfg.warmup_steps; ++w) {
            const auto indices = batch_indices(w, cfg.batch_size, dataset.size());
            generate_batch(dataset, indices, mv, seed, static_cast<uint64_t>(w),
                           RunOptions{cfg.threads, nullptr, false, false});
        }

        std::vector<double> totals(static_cast<size_t>(cfg.repeats));
        for (int rep = 0; rep < cfg.repeats; ++rep) {
            const auto start = Clock::now();
            for (int step = 0; step < cfg.steps; ++step) {
                const auto indices = batch_indices(step, cfg.batch_size, dataset.size());
                generate_batch(dataset, indices, mv, seed, static_cast<uint64_t>(step), opts);
            }
            totals[static_cast<size_t>(rep)] =
                std::chrono::duration<double>(Clock::now() - start).count();
        }

        row.total_seconds = std::accumulate(totals.begin(), totals.end(), 0.0) /
                            static_cast<double>(cfg.repeats);
        row.sec_per_step_mean = row.total_seconds / cfg.steps;
        if (cfg.repeats > 1) {
            double var = 0.0;
            for (double t : totals) {
                const double d = t / cfg.steps - row.sec_per_step_mean;
                var += d * d;
            }
            row.sec_per_step_std = std::sqrt(var / (cfg.repeats - 1));
        }
        row.images_per_second = static_cast<double>(cfg.steps) * cfg.batch_size /
                                row.total_seconds;
        row.invocation_counts = counters.snapshot();
        row.regional_count = counters.regional.load(std::memory_order_relaxed);
        report.rows.push_back(row);
    }

    // Shared seeds must give every strategy identical base views.
    for (size_t i = 1; i < report.rows.size(); ++i)
        if (report.rows[i].base_view_hash != report.rows[0].base_view_hash)
            throw std::logic_error("bench: base views diverged across strategies");

    double baseline_total = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : report.rows)
        if (row.strategy == Strategy::baseline) baseline_total = row.total_seconds;
    for (auto& row : report.rows) {
        row.relative_overhead = row.strategy == Strategy::baseline
                                    ? 0.0
                                    : row.total_seconds / baseline_total - 1.0;
    }
    return report;
}

std::string emit_report(const BenchReport& report, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::delimited) {
        os << kDelimitedHeader << "\n";
        for (const auto& row : report.rows) {
            char buf[512];
            std::snprintf(buf, sizeof(buf),
                          "%s,%d,%d,%d,%d,%d,%.9g,%.9g,%.9g,%.9g,%.9g,%llu,%llu,%llu,%llu,%llu,"
                          "%llu,%llu,%016llx",
                          to_string(row.strategy), report.resolution, report.batch_size,
                          report.steps, report.repeats, report.threads, row.total_seconds,
                          row.sec_per_step_mean, row.sec_per_step_std, row.images_per_second,
                          row.relative_overhead,
                          static_cast<unsigned long long>(row.invocation_counts[0]),
                          static_cast<unsigned long long>(row.invocation_counts[1]),
                          static_cast<unsigned long long>(row.invocation_counts[2]),
                          static_cast<unsigned long long>(row.invocation_counts[3]),
                          static_cast<unsigned long long>(row.invocation_counts[4]),
                          static_cast<unsigned long long>(row.invocation_counts[5]),
                          static_cast<unsigned long long>(row.regional_count),
                          static_cast<unsigned long long>(row.base_view_hash));
            os << buf << "\n";
        }
        return os.str();
    }

    char head[256];
    std::snprintf(head, sizeof(head),
                  "resolution %dx%d  batch %d  steps %d  repeats %d  threads %d  seed %llu\n",
                  report.resolution, report.resolution, report.batch_size, report.steps,
                  report.repeats, report.threads, static_cast<unsigned long long>(report.seed));
    os << head;
    os << "strategy   total_s      s/step       +/-std       img/s        overhead\n";
    for (const auto& row : report.rows) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%-10s %-12.4f %-12.6f %-12.6f %-12.1f %+.2f%%\n",
                      to_string(row.strategy), row.total_seconds, row.sec_per_step_mean,
                      row.sec_per_step_std, row.images_per_second,
                      row.relative_overhead * 100.0);
        os << buf;
    }
    return os.str();
}

std::vector<std::map<std::string, std::string>> parse_delimited_report(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(s);
        while (std::getline(fs, field, ',')) fields.push_back(field);
        return fields;
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header.empty()) {
            header = split(line);
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != header.size())
            throw std::runtime_error("report: malformed row '" + line + "'");
        std::map<std::string, std::string> row;
        for (size_t i = 0; i < header.size(); ++i) row[header[i]] = fields[i];
        rows.push_back(std::move(row));
    }
    if (header.empty()) throw std::runtime_error("report: missing header line");
    return rows;
}

}  // namespace viewmix
