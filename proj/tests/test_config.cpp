// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "test_support.hpp"
#include "viewmix/config.hpp"

using namespace viewmix;

namespace {

const char* kFullConfig = R"({
  "pipeline": {
    "output_size": 32,
    "steps": [
      {"kind": "crop_rescale", "probability": 1.0, "area_range": [0.75, 1.0],
       "aspect_range": [0.75, 1.3333333333]},
      {"kind": "horizontal_flip", "probability": 0.5},
      {"kind": "color_jitter", "probability": 0.8, "brightness": 0.8, "contrast": 0.8,
       "saturation": 0.8, "hue": 0.2},
      {"kind": "grayscale", "probability": 0.2},
      {"kind": "gaussian_blur", "probability": 0.2, "sigma_range": [0.1, 2.0]},
      {"kind": "solarize", "probability": 0.2, "threshold": 0.5}
    ]
  },
  "multiview": {
    "num_views": 2,
    "strategy": "viewmix",
    "strategy_probability": 0.33,
    "r_min": 0.3,
    "r_max": 0.6,
    "lambda_mode": "linear",
    "gate_scope": "per_view",
    "cutout_fill": 0.0
  },
  "dataset": {"kind": "cifar10", "path": "data/batch.bin"},
  "bench": {
    "resolution": 32,
    "batch_size": 128,
    "steps": 1000,
    "warmup_steps": 3,
    "repeats": 3,
    "threads": 1,
    "strategies": ["baseline", "viewmix", "cutout", "cutmix"]
  }
})";

}  // namespace

TEST_CASE("full config parses into the expected structures") {
    const EngineConfig cfg = parse_config_text(kFullConfig);
    CHECK(cfg.multiview.num_views == 2);
    CHECK(cfg.multiview.strategy == Strategy::viewmix);
    CHECK(cfg.multiview.strategy_probability == doctest::Approx(0.33));
    CHECK(cfg.multiview.r_min == doctest::Approx(0.3));
    CHECK(cfg.multiview.r_max == doctest::Approx(0.6));
    CHECK(cfg.multiview.lambda_mode == LambdaMode::linear);
    CHECK(cfg.multiview.gate_scope == GateScope::per_view);
    REQUIRE(cfg.multiview.base_pipeline.steps.size() == 6);
    CHECK(cfg.multiview.base_pipeline.output_size == 32);
    CHECK(cfg.multiview.base_pipeline.steps[1].probability == doctest::Approx(0.5));

    REQUIRE(cfg.dataset);
    CHECK(cfg.dataset->kind == DatasetConfig::Kind::cifar10);
    CHECK(cfg.dataset->path == "data/batch.bin");

    CHECK(cfg.bench.resolution == 32);
    CHECK(cfg.bench.batch_size == 128);
    CHECK(cfg.bench.steps == 1000);
    REQUIRE(cfg.bench.strategies.size() == 4);
    CHECK(cfg.bench.strategies[3] == Strategy::cutmix);
    // bench carries the shared multiview config
    CHECK(cfg.bench.multiview.num_views == 2);
}

TEST_CASE("defaults cover an empty config") {
    const EngineConfig cfg = parse_config_text("{}");
    CHECK(cfg.multiview.num_views == 2);
    CHECK(cfg.multiview.strategy == Strategy::baseline);
    CHECK(cfg.multiview.base_pipeline.steps.size() == 6);
    CHECK(cfg.multiview.base_pipeline.steps[0].probability == 1.0);
    CHECK(!cfg.dataset);
    CHECK(cfg.bench.strategies.size() == 4);
}

TEST_CASE("step probabilities default to the published stack") {
    const EngineConfig cfg = parse_config_text(R"({
      "pipeline": {"steps": [
        {"kind": "crop_rescale"},
        {"kind": "horizontal_flip"},
        {"kind": "color_jitter"},
        {"kind": "grayscale"},
        {"kind": "gaussian_blur"},
        {"kind": "solarize"}
      ]}
    })");
    const auto& steps = cfg.multiview.base_pipeline.steps;
    CHECK(steps[0].probability == 1.0);
    CHECK(steps[1].probability == 0.5);
    CHECK(steps[2].probability == 0.8);
    CHECK(steps[3].probability == 0.2);
    CHECK(steps[4].probability == 0.2);
    CHECK(steps[5].probability == 0.2);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"pipelines": {}})"),
                         doctest::Contains("pipelines"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"multiview": {"nviews": 2}})"),
                         doctest::Contains("nviews"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"pipeline": {"steps": [{"kind": "solarize", "thresold": 0.5}]}})"),
        doctest::Contains("thresold"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"bench": {"step": 10}})"),
                         doctest::Contains("step"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"dataset": {"kind": "cifar10", "path": "x",
                                                           "resise": 32}})"),
                         doctest::Contains("resise"), std::runtime_error);
}

TEST_CASE("invalid values are rejected with context") {
    CHECK_THROWS_AS(parse_config_text(R"({"multiview": {"strategy": "mixup"}})"),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_config_text(R"({"multiview": {"lambda_mode": "quadratic"}})"),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_config_text(R"({"multiview": {"r_min": 0.9, "r_max": 0.5}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text(R"({"pipeline": {"steps": [{"kind": "grayscale"}]}})"),
                    std::invalid_argument);  // first step must be the crop
    CHECK_THROWS_AS(parse_config_text("not json"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text(R"({"dataset": {"kind": "cifar10"}})"),
                    std::runtime_error);  // missing path
    CHECK_THROWS_AS(
        parse_config_text(R"({"dataset": {"kind": "cifar10", "path": "x", "resize": 32}})"),
        std::runtime_error);  // resize is folder-only
}

TEST_CASE("overrides apply with last-wins semantics") {
    const EngineConfig cfg = parse_config_text(
        kFullConfig, {"multiview.strategy=cutout", "multiview.strategy=cutmix",
                      "bench.steps=10", "pipeline.steps.1.probability=0.25",
                      "dataset.path=other.bin"});
    CHECK(cfg.multiview.strategy == Strategy::cutmix);
    CHECK(cfg.bench.steps == 10);
    CHECK(cfg.multiview.base_pipeline.steps[1].probability == doctest::Approx(0.25));
    CHECK(cfg.dataset->path == "other.bin");
}

TEST_CASE("overrides that miss the schema or the array bounds fail") {
    CHECK_THROWS_WITH_AS(parse_config_text("{}", {"multiview.strateg=cutout"}),
                         doctest::Contains("strateg"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text(kFullConfig, {"pipeline.steps.9.probability=1"}),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("{}", {"no_equals_sign"}), std::runtime_error);
}

TEST_CASE("view_pipelines parse with nulls and inherit output_size") {
    const EngineConfig cfg = parse_config_text(R"({
      "multiview": {
        "view_pipelines": [null, {"steps": [
          {"kind": "crop_rescale"}, {"kind": "horizontal_flip", "probability": 0.0}
        ]}]
      }
    })");
    REQUIRE(cfg.multiview.view_pipelines.size() == 2);
    CHECK(!cfg.multiview.view_pipelines[0]);
    REQUIRE(cfg.multiview.view_pipelines[1]);
    CHECK(cfg.multiview.view_pipelines[1]->output_size == 32);
    CHECK(cfg.multiview.view_pipelines[1]->steps.size() == 2);
}
