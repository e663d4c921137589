// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "viewmix/bench.hpp"
#include "viewmix/multiview.hpp"

namespace viewmix {

struct DatasetConfig {
    enum class Kind { cifar10, folder };
    Kind kind = Kind::cifar10;
    std::string path;
    std::optional<int> resize;  // folder only

    Dataset load() const;
};

// Top-level experiment config. The file is the source of truth; CLI flags
// apply dotted-path overrides with last-wins semantics. Unknown keys are
// rejected everywhere.
struct EngineConfig {
    MultiViewConfig multiview;
    std::optional<DatasetConfig> dataset;
    BenchConfig bench;  // bench.multiview mirrors `multiview`
};

EngineConfig parse_config_text(const std::string& text,
                               const std::vector<std::string>& overrides = {});
EngineConfig load_config(const std::filesystem::path& path,
                         const std::vector<std::string>& overrides = {});

}  // namespace viewmix
