// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/multiview.hpp"

#include <stdexcept>

#include "viewmix/parallel.hpp"

namespace viewmix {

namespace {

// Stream slots under an image's root stream. Base views must derive from the
// same slots no matter which strategy runs, so strategy toggles can never
// change what the base views are.
constexpr uint64_t kViewSlotBase = 0;
constexpr uint64_t kStrategySlotBase = uint64_t{1} << 32;
constexpr uint64_t kPairSlot = uint64_t{1} << 33;

struct Decision {
    bool applied = false;
    int donor_view = -1;
    int donor_pos = -1;  // batch position for cutmix
    BBox bbox;
};

// Draw order per stream: gate, donor, then bbox (center x, center y, lambda).
std::vector<Decision> decide(const MultiViewConfig& cfg, const RngStream& rng,
                             size_t self_pos, size_t batch_size) {
    std::vector<Decision> out(cfg.num_views);
    const int w = cfg.base_pipeline.output_size;
    const int h = cfg.base_pipeline.output_size;
    if (cfg.strategy == Strategy::baseline) return out;

    auto draw_tail = [&](RngStream& srng, int view) {
        Decision d;
        d.applied = true;
        if (cfg.strategy == Strategy::viewmix) {
            uint64_t j = srng.uniform_below(static_cast<uint64_t>(cfg.num_views) - 1);
            if (j >= static_cast<uint64_t>(view)) ++j;
            d.donor_view = static_cast<int>(j);
        } else if (cfg.strategy == Strategy::cutmix) {
            uint64_t j = srng.uniform_below(batch_size - 1);
            if (j >= self_pos) ++j;
            d.donor_pos = static_cast<int>(j);
        }
        d.bbox = sample_bbox(w, h, cfg.r_min, cfg.r_max, srng, cfg.lambda_mode);
        return d;
    };

    if (cfg.gate_scope == GateScope::per_view) {
        for (int i = 0; i < cfg.num_views; ++i) {
            RngStream srng = rng.derive(kStrategySlotBase + static_cast<uint64_t>(i));
            if (srng.next_double() < cfg.strategy_probability) out[i] = draw_tail(srng, i);
        }
    } else {
        RngStream srng = rng.derive(kPairSlot);
        if (srng.next_double() < cfg.strategy_probability) {
            const int target =
                static_cast<int>(srng.uniform_below(static_cast<uint64_t>(cfg.num_views)));
            out[target] = draw_tail(srng, target);
        }
    }
    return out;
}

ViewBatch make_base_views(const Image& img, const MultiViewConfig& cfg,
                          const RngStream& rng, const RunOptions& opts) {
    ViewBatch batch;
    batch.views.reserve(cfg.num_views);
    batch.provenance.resize(cfg.num_views);
    for (int i = 0; i < cfg.num_views; ++i) {
        batch.views.push_back(apply_pipeline(img, cfg.pipeline_for(i),
                                             rng.derive(kViewSlotBase + static_cast<uint64_t>(i)),
                                             nullptr, opts.counters));
        if (opts.record_base_hash)
            batch.provenance[i].base_hash = image_hash(batch.views.back());
    }
    if (opts.keep_base_views) batch.base_views = batch.views;
    return batch;
}

// Applies decisions, reading donors only from pre-replacement views.
std::vector<Image> mix_views(const ViewBatch& self, const std::vector<Decision>& decisions,
                             const MultiViewConfig& cfg,
                             const std::vector<ViewBatch>* all, const RunOptions& opts) {
    std::vector<Image> out;
    out.reserve(self.views.size());
    for (size_t i = 0; i < self.views.size(); ++i) {
        const Decision& d = decisions[i];
        if (!d.applied) {
            out.push_back(self.views[i]);
            continue;
        }
        if (opts.counters) opts.counters->regional.fetch_add(1, std::memory_order_relaxed);
        switch (cfg.strategy) {
            case Strategy::viewmix: {
                const Mask mask = mask_from(d.bbox, self.views[i].width(), self.views[i].height());
                out.push_back(apply_viewmix(self.views[i], self.views[d.donor_view], mask));
                break;
            }
            case Strategy::cutout:
                out.push_back(apply_cutout(self.views[i], d.bbox, cfg.cutout_fill));
                break;
            case Strategy::cutmix: {
                const ViewBatch& donor = (*all)[d.donor_pos];
                out.push_back(apply_cutmix(self.views[i], donor.views[i], d.bbox).image);
                break;
            }
            case Strategy::baseline:
                out.push_back(self.views[i]);
                break;
        }
    }
    return out;
}

void record_provenance(ViewBatch& batch, const std::vector<Decision>& decisions,
                       const MultiViewConfig& cfg, std::span<const size_t> indices) {
    for (size_t i = 0; i < batch.provenance.size(); ++i) {
        const Decision& d = decisions[i];
        auto& p = batch.provenance[i];
        p.applied = d.applied;
        if (!d.applied) continue;
        p.bbox = d.bbox;
        if (cfg.strategy == Strategy::viewmix) p.donor_view = d.donor_view;
        if (cfg.strategy == Strategy::cutmix)
            p.donor_image = static_cast<int>(indices[d.donor_pos]);
    }
}

}  // namespace

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::baseline: return "baseline";
        case Strategy::viewmix: return "viewmix";
        case Strategy::cutout: return "cutout";
        case Strategy::cutmix: return "cutmix";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& name) {
    for (Strategy s : {Strategy::baseline, Strategy::viewmix, Strategy::cutout, Strategy::cutmix})
        if (name == to_string(s)) return s;
    throw std::invalid_argument("unknown strategy: " + name);
}

void MultiViewConfig::validate() const {
    if (num_views < 2) throw std::invalid_argument("multiview: num_views must be >= 2");
    if (!(strategy_probability >= 0.0 && strategy_probability <= 1.0))
        throw std::invalid_argument("multiview: strategy_probability must be in [0,1]");
    if (!(r_min > 0.0 && r_min <= r_max && r_max < 1.0))
        throw std::invalid_argument("multiview: need 0 < r_min <= r_max < 1");
    base_pipeline.validate();
    if (!view_pipelines.empty()) {
        if (view_pipelines.size() != static_cast<size_t>(num_views))
            throw std::invalid_argument("multiview: view_pipelines must list one entry per view");
        for (const auto& vp : view_pipelines) {
            if (!vp) continue;
            vp->validate();
            if (vp->output_size != base_pipeline.output_size)
                throw std::invalid_argument("multiview: per-view pipelines must share output_size");
        }
    }
    if (cutout_fill < 0.0) throw std::invalid_argument("multiview: cutout_fill must be >= 0");
}

const PipelineSpec& MultiViewConfig::pipeline_for(int view) const {
    if (!view_pipelines.empty() && view_pipelines[view]) return *view_pipelines[view];
    return base_pipeline;
}

ViewBatch generate_views(const Image& img, const MultiViewConfig& cfg,
                         const RngStream& rng, const RunOptions& opts) {
    cfg.validate();
    if (cfg.strategy == Strategy::cutmix)
        throw std::invalid_argument(
            "cutmix needs donor images from a batch; use generate_batch");
    ViewBatch batch = make_base_views(img, cfg, rng, opts);
    const auto decisions = decide(cfg, rng, 0, 1);
    batch.views = mix_views(batch, decisions, cfg, nullptr, opts);
    record_provenance(batch, decisions, cfg, {});
    return batch;
}

std::vector<ViewBatch> generate_batch(const Dataset& dataset,
                                      std::span<const size_t> indices,
                                      const MultiViewConfig& cfg, uint64_t seed,
                                      uint64_t step, const RunOptions& opts) {
    cfg.validate();
    if (indices.empty()) throw std::invalid_argument("generate_batch: empty index list");
    for (size_t idx : indices)
        if (idx >= dataset.size())
            throw std::invalid_argument("generate_batch: index " + std::to_string(idx) +
                                        " out of range");
    if (cfg.strategy == Strategy::cutmix && indices.size() < 2)
        throw std::invalid_argument("cutmix needs at least 2 images in the batch");

    const RngStream step_root = RngStream(seed).derive(step);
    std::vector<ViewBatch> batches(indices.size());

    parallel_for(indices.size(), opts.threads, [&](size_t k) {
        const RngStream img_rng = step_root.derive(indices[k]);
        batches[k] = make_base_views(dataset.image(indices[k]), cfg, img_rng, opts);
        batches[k].source_index = static_cast<int>(indices[k]);
    });

    if (cfg.strategy == Strategy::baseline) return batches;

    // Regional pass. Mixed outputs land in a staging array so donor reads
    // always see pre-replacement views, then results are swapped in.
    std::vector<std::vector<Image>> mixed(indices.size());
    std::vector<std::vector<Decision>> decisions(indices.size());
    parallel_for(indices.size(), opts.threads, [&](size_t k) {
        const RngStream img_rng = step_root.derive(indices[k]);
        decisions[k] = decide(cfg, img_rng, k, indices.size());
        mixed[k] = mix_views(batches[k], decisions[k], cfg, &batches, opts);
    });
    for (size_t k = 0; k < indices.size(); ++k) {
        batches[k].views = std::move(mixed[k]);
        record_provenance(batches[k], decisions[k], cfg, indices);
    }
    return batches;
}

ExpectedCounts count_invocations(const MultiViewConfig& cfg) {
    cfg.validate();
    ExpectedCounts out;
    for (int i = 0; i < cfg.num_views; ++i)
        for (const auto& step : cfg.pipeline_for(i).steps)
            out.per_image[static_cast<int>(step.kind)] += step.probability;
    if (cfg.strategy != Strategy::baseline) {
        out.regional = cfg.gate_scope == GateScope::per_view
                           ? cfg.num_views * cfg.strategy_probability
                           : cfg.strategy_probability;
    }
    return out;
}

}  // namespace viewmix
