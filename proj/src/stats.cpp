// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace viewmix {

void Histogram::accumulate(double v) {
    if (count == 0) {
        min = max = v;
    } else {
        min = std::min(min, v);
        max = std::max(max, v);
    }
    mean += (v - mean) / static_cast<double>(count + 1);
    ++count;
    if (bins.empty()) return;
    size_t bin = 0;
    if (hi > lo) {
        const double t = (v - lo) / (hi - lo);
        bin = static_cast<size_t>(std::clamp(t * static_cast<double>(bins.size()), 0.0,
                                             static_cast<double>(bins.size()) - 1.0));
    }
    ++bins[bin];
}

RateStat make_rate_stat(const std::string& name, double configured, uint64_t fired,
                        uint64_t trials) {
    RateStat r;
    r.name = name;
    r.configured = configured;
    r.fired = fired;
    r.trials = trials;
    r.rate = trials ? static_cast<double>(fired) / static_cast<double>(trials) : 0.0;
    const double half =
        trials ? kRateZ * std::sqrt(configured * (1.0 - configured) / static_cast<double>(trials))
               : 0.0;
    r.ci_lo = std::max(0.0, configured - half);
    r.ci_hi = std::min(1.0, configured + half);
    r.within = r.rate >= r.ci_lo && r.rate <= r.ci_hi;
    return r;
}

StatsReport collect_stats(const Dataset& dataset, const MultiViewConfig& cfg, uint64_t seed,
                          uint64_t samples, int threads) {
    cfg.validate();
    if (samples == 0) throw std::invalid_argument("stats: samples must be >= 1");
    if (dataset.size() == 0) throw std::invalid_argument("stats: empty dataset");

    StatsReport report;
    report.samples = samples;

    const double lambda_lo =
        cfg.lambda_mode == LambdaMode::linear ? cfg.r_min : std::sqrt(cfg.r_min);
    const double lambda_hi =
        cfg.lambda_mode == LambdaMode::linear ? cfg.r_max : std::sqrt(cfg.r_max);
    report.lambda_hist.lo = lambda_lo;
    report.lambda_hist.hi = lambda_hi;
    report.lambda_hist.bins.assign(lambda_hi > lambda_lo ? 20 : 1, 0);
    report.clip_fraction_hist.lo = 0.0;
    report.clip_fraction_hist.hi = 1.0;
    report.clip_fraction_hist.bins.assign(20, 0);
    report.donor_counts.assign(static_cast<size_t>(cfg.num_views), 0);

    InvocationCounters counters;
    RunOptions opts;
    opts.threads = threads;
    opts.counters = &counters;

    uint64_t applied = 0;
    uint64_t done = 0;
    uint64_t step = 0;
    const double out_area = static_cast<double>(cfg.base_pipeline.output_size) *
                            cfg.base_pipeline.output_size;
    while (done < samples) {
        const size_t take =
            static_cast<size_t>(std::min<uint64_t>(dataset.size(), samples - done));
        std::vector<size_t> indices(take);
        std::iota(indices.begin(), indices.end(), size_t{0});
        const auto batches = generate_batch(dataset, indices, cfg, seed, step, opts);
        for (const auto& batch : batches) {
            for (const auto& prov : batch.provenance) {
                if (!prov.applied) continue;
                ++applied;
                report.lambda_hist.accumulate(prov.bbox->lambda);
                report.clip_fraction_hist.accumulate(
                    static_cast<double>(prov.bbox->clipped.area()) / out_area);
                if (prov.donor_view)
                    ++report.donor_counts[static_cast<size_t>(*prov.donor_view)];
            }
        }
        done += take;
        ++step;
    }

    const uint64_t views_total = samples * static_cast<uint64_t>(cfg.num_views);
    const ExpectedCounts expected = count_invocations(cfg);
    const auto fired = counters.snapshot();
    for (size_t k = 0; k < cfg.base_pipeline.steps.size(); ++k) {
        const auto kind = cfg.base_pipeline.steps[k].kind;
        // Effective per-view probability; differs from the base step only
        // when per-view overrides change it.
        const double p = expected.per_image[static_cast<int>(kind)] / cfg.num_views;
        report.step_rates.push_back(
            make_rate_stat(to_string(kind), p, fired[static_cast<int>(kind)], views_total));
    }
    const uint64_t strategy_trials =
        cfg.gate_scope == GateScope::per_view ? views_total : samples;
    report.strategy_rate = make_rate_stat(to_string(cfg.strategy),
                                          cfg.strategy == Strategy::baseline
                                              ? 0.0
                                              : cfg.strategy_probability,
                                          applied, strategy_trials);
    report.all_within_ci = report.strategy_rate.within;
    for (const auto& r : report.step_rates) report.all_within_ci &= r.within;
    return report;
}

namespace {

std::string rate_line(const RateStat& r) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "  %-16s configured %.4f  observed %.4f  (%llu/%llu)  ci [%.4f, %.4f]  %s",
                  r.name.c_str(), r.configured, r.rate,
                  static_cast<unsigned long long>(r.fired),
                  static_cast<unsigned long long>(r.trials), r.ci_lo, r.ci_hi,
                  r.within ? "ok" : "OUTSIDE-CI");
    return buf;
}

std::string hist_line(const Histogram& h) {
    std::ostringstream os;
    char head[96];
    std::snprintf(head, sizeof(head), "count %llu  mean %.5f  min %.5f  max %.5f  bins ",
                  static_cast<unsigned long long>(h.count), h.mean, h.min, h.max);
    os << head;
    for (size_t i = 0; i < h.bins.size(); ++i) {
        if (i) os << ' ';
        os << h.bins[i];
    }
    return os.str();
}

}  // namespace

std::string format_stats(const StatsReport& report) {
    std::ostringstream os;
    os << "samples: " << report.samples << "\n";
    os << "step firing rates (99.9% binomial CI):\n";
    for (const auto& r : report.step_rates) os << rate_line(r) << "\n";
    os << "strategy rate:\n" << rate_line(report.strategy_rate) << "\n";
    os << "lambda: " << hist_line(report.lambda_hist) << "\n";
    os << "clipped-area fraction: " << hist_line(report.clip_fraction_hist) << "\n";
    os << "donor views:";
    for (size_t i = 0; i < report.donor_counts.size(); ++i)
        os << " v" << i << ":" << report.donor_counts[i];
    os << "\n";
    os << (report.all_within_ci ? "all rates within 99.9% CI\n"
                                : "WARNING: rate outside 99.9% CI\n");
    return os.str();
}

}  // namespace viewmix
