// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viewmix/multiview.hpp"

namespace viewmix {

// Two-sided 99.9% normal quantile used for all binomial rate intervals.
inline constexpr double kRateZ = 3.290526731492265;

struct RateStat {
    std::string name;
    double configured = 0.0;
    uint64_t fired = 0;
    uint64_t trials = 0;
    double rate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    bool within = true;
};

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<uint64_t> bins;
    uint64_t count = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;

    void accumulate(double v);
};

// Empirical behaviour of a configuration over `samples` view generations,
// cycling through the dataset.
struct StatsReport {
    uint64_t samples = 0;
    std::vector<RateStat> step_rates;  // one per base-pipeline step
    RateStat strategy_rate;
    Histogram lambda_hist;
    Histogram clip_fraction_hist;
    std::vector<uint64_t> donor_counts;  // viewmix, per donor view index
    bool all_within_ci = true;
};

RateStat make_rate_stat(const std::string& name, double configured, uint64_t fired,
                        uint64_t trials);

StatsReport collect_stats(const Dataset& dataset, const MultiViewConfig& cfg, uint64_t seed,
                          uint64_t samples, int threads = 1);

std::string format_stats(const StatsReport& report);

}  // namespace viewmix
