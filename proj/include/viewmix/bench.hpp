// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "viewmix/multiview.hpp"

namespace viewmix {

// Transformation-only timing protocol: fixed batch index sequence, identical
// seeds for every strategy, warmup excluded, dataset resident in memory.
struct BenchConfig {
    int resolution = 32;
    int batch_size = 128;
    int steps = 1000;
    std::vector<Strategy> strategies = {Strategy::baseline, Strategy::viewmix,
                                        Strategy::cutout, Strategy::cutmix};
    int warmup_steps = 3;
    int repeats = 3;
    int threads = 1;  // 0 = hardware concurrency
    MultiViewConfig multiview;  // strategy field is overridden per row

    void validate() const;
};

struct StrategyTiming {
    Strategy strategy = Strategy::baseline;
    double total_seconds = 0.0;  // mean across repeats
    double sec_per_step_mean = 0.0;
    double sec_per_step_std = 0.0;  // sample stddev across repeats
    double images_per_second = 0.0;
    // strategy_total / baseline_total - 1 against the same run's baseline;
    // NaN when baseline was not part of the run.
    double relative_overhead = 0.0;
    std::array<uint64_t, kNumTransformKinds> invocation_counts{};  // across all timed repeats
    uint64_t regional_count = 0;
    uint64_t base_view_hash = 0;  // fold over one untimed verification step
};

struct BenchReport {
    int resolution = 0;
    int batch_size = 0;
    int steps = 0;
    int repeats = 0;
    int threads = 0;
    uint64_t seed = 0;
    std::vector<StrategyTiming> rows;  // in config order
};

// Runs every strategy over the same batch index sequence with the same
// seeds. Base views are checked hash-identical across strategies in an
// untimed verification pass before timing starts.
BenchReport run_benchmark(const BenchConfig& cfg, const Dataset& dataset, uint64_t seed);

enum class ReportFormat { human, delimited };

std::string emit_report(const BenchReport& report, ReportFormat format);

// Parses the delimited form back into header-keyed string fields, one map
// per strategy row.
std::vector<std::map<std::string, std::string>> parse_delimited_report(const std::string& text);

}  // namespace viewmix
