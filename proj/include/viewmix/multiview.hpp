// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "viewmix/dataset.hpp"
#include "viewmix/regional.hpp"
#include "viewmix/transforms.hpp"

namespace viewmix {

enum class Strategy { baseline, viewmix, cutout, cutmix };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

enum class GateScope {
    per_view,  // each view independently passes the strategy gate
    per_pair   // one gate per image; a uniformly chosen view is targeted
};

struct MultiViewConfig {
    int num_views = 2;
    PipelineSpec base_pipeline = default_pipeline(32);
    // Optional per-view pipeline; empty entry means base_pipeline. When
    // non-empty the list length must equal num_views.
    std::vector<std::optional<PipelineSpec>> view_pipelines;
    Strategy strategy = Strategy::baseline;
    double strategy_probability = 0.33;
    double r_min = 0.3;
    double r_max = 0.6;
    LambdaMode lambda_mode = LambdaMode::linear;
    GateScope gate_scope = GateScope::per_view;
    double cutout_fill = 0.0;  // native sample scale

    void validate() const;
    const PipelineSpec& pipeline_for(int view) const;
};

struct ViewProvenance {
    bool applied = false;              // regional strategy fired on this view
    std::optional<BBox> bbox;          // present iff applied
    std::optional<int> donor_view;     // viewmix: sibling view supplying the patch
    std::optional<int> donor_image;    // cutmix: dataset index of the donor image
    uint64_t base_hash = 0;            // hash of the pre-replacement view, if recorded
};

struct ViewBatch {
    int source_index = 0;
    std::vector<Image> views;
    std::vector<ViewProvenance> provenance;
    std::vector<Image> base_views;  // populated only with keep_base_views
};

struct RunOptions {
    int threads = 1;
    InvocationCounters* counters = nullptr;
    bool record_base_hash = false;
    bool keep_base_views = false;
};

// Produces n views of one image. Base views are generated from per-view
// derived streams; the regional step afterwards only selects rectangles
// between already-generated views, so enabling it never runs an extra base
// transform and never changes what the base views are. Donor patches always
// come from pre-replacement views.
ViewBatch generate_views(const Image& img, const MultiViewConfig& cfg,
                         const RngStream& rng, const RunOptions& opts = {});

// Batch driver. Image k draws from seed -> step -> dataset-index streams, so
// results do not depend on execution order or thread count. CutMix donors
// are drawn uniformly from the batch excluding self.
std::vector<ViewBatch> generate_batch(const Dataset& dataset,
                                      std::span<const size_t> indices,
                                      const MultiViewConfig& cfg, uint64_t seed,
                                      uint64_t step, const RunOptions& opts = {});

// Expected executions per source image, by transform kind; `regional` is the
// expected number of strategy applications. The base-transform counts do not
// depend on the strategy.
struct ExpectedCounts {
    std::array<double, kNumTransformKinds> per_image{};
    double regional = 0.0;
};
ExpectedCounts count_invocations(const MultiViewConfig& cfg);

}  // namespace viewmix
