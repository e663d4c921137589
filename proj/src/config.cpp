// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#include "viewmix/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace viewmix {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("config: " + msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok |= key == a;
        if (!ok) fail("unknown key '" + where + "." + key + "'");
    }
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + " must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where + " must be an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where + " must be a string");
    return j.get<std::string>();
}

void get_range(const json& j, const std::string& where, double& lo, double& hi) {
    if (!j.is_array() || j.size() != 2) fail(where + " must be a [min, max] pair");
    lo = get_number(j[0], where + "[0]");
    hi = get_number(j[1], where + "[1]");
}

double default_probability(TransformKind kind) {
    switch (kind) {
        case TransformKind::crop_rescale: return 1.0;
        case TransformKind::horizontal_flip: return 0.5;
        case TransformKind::color_jitter: return 0.8;
        case TransformKind::grayscale: return 0.2;
        case TransformKind::gaussian_blur: return 0.2;
        case TransformKind::solarize: return 0.2;
    }
    return 1.0;
}

TransformSpec parse_step(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + " must be an object");
    if (!j.contains("kind")) fail(where + ": missing 'kind'");
    TransformSpec spec;
    try {
        spec.kind = transform_kind_from_string(get_string(j.at("kind"), where + ".kind"));
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
    spec.probability = j.contains("probability")
                           ? get_number(j.at("probability"), where + ".probability")
                           : default_probability(spec.kind);
    switch (spec.kind) {
        case TransformKind::crop_rescale: {
            check_keys(j, where, {"kind", "probability", "area_range", "aspect_range"});
            CropRescaleParams p;
            if (j.contains("area_range"))
                get_range(j.at("area_range"), where + ".area_range", p.area_min, p.area_max);
            if (j.contains("aspect_range"))
                get_range(j.at("aspect_range"), where + ".aspect_range", p.aspect_min,
                          p.aspect_max);
            spec.params = p;
            break;
        }
        case TransformKind::color_jitter: {
            check_keys(j, where,
                       {"kind", "probability", "brightness", "contrast", "saturation", "hue"});
            ColorJitterParams p;
            if (j.contains("brightness")) p.brightness = get_number(j.at("brightness"), where + ".brightness");
            if (j.contains("contrast")) p.contrast = get_number(j.at("contrast"), where + ".contrast");
            if (j.contains("saturation")) p.saturation = get_number(j.at("saturation"), where + ".saturation");
            if (j.contains("hue")) p.hue = get_number(j.at("hue"), where + ".hue");
            spec.params = p;
            break;
        }
        case TransformKind::gaussian_blur: {
            check_keys(j, where, {"kind", "probability", "sigma_range"});
            GaussianBlurParams p;
            if (j.contains("sigma_range"))
                get_range(j.at("sigma_range"), where + ".sigma_range", p.sigma_min, p.sigma_max);
            spec.params = p;
            break;
        }
        case TransformKind::solarize: {
            check_keys(j, where, {"kind", "probability", "threshold"});
            SolarizeParams p;
            if (j.contains("threshold")) p.threshold = get_number(j.at("threshold"), where + ".threshold");
            spec.params = p;
            break;
        }
        case TransformKind::horizontal_flip:
        case TransformKind::grayscale:
            check_keys(j, where, {"kind", "probability"});
            spec.params = std::monostate{};
            break;
    }
    return spec;
}

PipelineSpec parse_pipeline(const json& j, const std::string& where,
                            const PipelineSpec& defaults) {
    check_keys(j, where, {"output_size", "steps"});
    PipelineSpec spec = defaults;
    if (j.contains("output_size"))
        spec.output_size = get_int(j.at("output_size"), where + ".output_size");
    if (j.contains("steps")) {
        const json& steps = j.at("steps");
        if (!steps.is_array()) fail(where + ".steps must be an array");
        spec.steps.clear();
        for (size_t i = 0; i < steps.size(); ++i)
            spec.steps.push_back(
                parse_step(steps[i], where + ".steps." + std::to_string(i)));
    }
    return spec;
}

void parse_multiview(const json& j, EngineConfig& cfg) {
    check_keys(j, "multiview",
               {"num_views", "strategy", "strategy_probability", "r_min", "r_max",
                "lambda_mode", "gate_scope", "cutout_fill", "view_pipelines"});
    MultiViewConfig& mv = cfg.multiview;
    if (j.contains("num_views")) mv.num_views = get_int(j.at("num_views"), "multiview.num_views");
    if (j.contains("strategy")) {
        try {
            mv.strategy = strategy_from_string(get_string(j.at("strategy"), "multiview.strategy"));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
    if (j.contains("strategy_probability"))
        mv.strategy_probability = get_number(j.at("strategy_probability"),
                                             "multiview.strategy_probability");
    if (j.contains("r_min")) mv.r_min = get_number(j.at("r_min"), "multiview.r_min");
    if (j.contains("r_max")) mv.r_max = get_number(j.at("r_max"), "multiview.r_max");
    if (j.contains("lambda_mode")) {
        const std::string mode = get_string(j.at("lambda_mode"), "multiview.lambda_mode");
        if (mode == "linear")
            mv.lambda_mode = LambdaMode::linear;
        else if (mode == "area")
            mv.lambda_mode = LambdaMode::area;
        else
            fail("multiview.lambda_mode must be 'linear' or 'area'");
    }
    if (j.contains("gate_scope")) {
        const std::string scope = get_string(j.at("gate_scope"), "multiview.gate_scope");
        if (scope == "per_view")
            mv.gate_scope = GateScope::per_view;
        else if (scope == "per_pair")
            mv.gate_scope = GateScope::per_pair;
        else
            fail("multiview.gate_scope must be 'per_view' or 'per_pair'");
    }
    if (j.contains("cutout_fill"))
        mv.cutout_fill = get_number(j.at("cutout_fill"), "multiview.cutout_fill");
    if (j.contains("view_pipelines")) {
        const json& vps = j.at("view_pipelines");
        if (!vps.is_array()) fail("multiview.view_pipelines must be an array");
        mv.view_pipelines.clear();
        for (size_t i = 0; i < vps.size(); ++i) {
            if (vps[i].is_null()) {
                mv.view_pipelines.emplace_back(std::nullopt);
            } else {
                mv.view_pipelines.emplace_back(parse_pipeline(
                    vps[i], "multiview.view_pipelines." + std::to_string(i), mv.base_pipeline));
            }
        }
    }
}

void parse_dataset(const json& j, EngineConfig& cfg) {
    check_keys(j, "dataset", {"kind", "path", "resize"});
    DatasetConfig ds;
    if (!j.contains("kind")) fail("dataset: missing 'kind'");
    const std::string kind = get_string(j.at("kind"), "dataset.kind");
    if (kind == "cifar10")
        ds.kind = DatasetConfig::Kind::cifar10;
    else if (kind == "folder")
        ds.kind = DatasetConfig::Kind::folder;
    else
        fail("dataset.kind must be 'cifar10' or 'folder'");
    if (!j.contains("path")) fail("dataset: missing 'path'");
    ds.path = get_string(j.at("path"), "dataset.path");
    if (j.contains("resize")) {
        if (ds.kind != DatasetConfig::Kind::folder)
            fail("dataset.resize is only valid for kind 'folder'");
        ds.resize = get_int(j.at("resize"), "dataset.resize");
    }
    cfg.dataset = ds;
}

void parse_bench(const json& j, EngineConfig& cfg) {
    check_keys(j, "bench",
               {"resolution", "batch_size", "steps", "warmup_steps", "repeats", "threads",
                "strategies"});
    BenchConfig& b = cfg.bench;
    if (j.contains("resolution")) b.resolution = get_int(j.at("resolution"), "bench.resolution");
    if (j.contains("batch_size")) b.batch_size = get_int(j.at("batch_size"), "bench.batch_size");
    if (j.contains("steps")) b.steps = get_int(j.at("steps"), "bench.steps");
    if (j.contains("warmup_steps"))
        b.warmup_steps = get_int(j.at("warmup_steps"), "bench.warmup_steps");
    if (j.contains("repeats")) b.repeats = get_int(j.at("repeats"), "bench.repeats");
    if (j.contains("threads")) b.threads = get_int(j.at("threads"), "bench.threads");
    if (j.contains("strategies")) {
        const json& arr = j.at("strategies");
        if (!arr.is_array()) fail("bench.strategies must be an array");
        b.strategies.clear();
        for (const auto& s : arr) {
            try {
                b.strategies.push_back(strategy_from_string(get_string(s, "bench.strategies[]")));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
    }
}

void apply_override(json& root, const std::string& kv) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        fail("override must look like path.to.key=value, got '" + kv + "'");
    const std::string path = kv.substr(0, eq);
    const std::string value_text = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(value_text);
    } catch (const json::parse_error&) {
        value = value_text;  // bare strings need no quotes
    }

    std::vector<std::string> segments;
    std::string seg;
    std::istringstream ps(path);
    while (std::getline(ps, seg, '.')) {
        if (seg.empty()) fail("override path has an empty segment: '" + path + "'");
        segments.push_back(seg);
    }
    json* cur = &root;
    for (size_t i = 0; i < segments.size(); ++i) {
        const bool last = i + 1 == segments.size();
        if (cur->is_array()) {
            size_t idx = 0;
            try {
                idx = std::stoul(segments[i]);
            } catch (...) {
                fail("override: '" + segments[i] + "' is not an array index in '" + path + "'");
            }
            if (idx >= cur->size())
                fail("override: index " + segments[i] + " out of range in '" + path + "'");
            if (last)
                (*cur)[idx] = value;
            else
                cur = &(*cur)[idx];
        } else {
            if (last)
                (*cur)[segments[i]] = value;
            else
                cur = &(*cur)[segments[i]];
        }
    }
}

}  // namespace

Dataset DatasetConfig::load() const {
    if (kind == Kind::cifar10) return load_cifar10(path);
    return load_image_folder(path, resize);
}

EngineConfig parse_config_text(const std::string& text,
                               const std::vector<std::string>& overrides) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    for (const auto& kv : overrides) apply_override(root, kv);

    check_keys(root, "<top>", {"pipeline", "multiview", "dataset", "bench"});
    EngineConfig cfg;
    if (root.contains("pipeline"))
        cfg.multiview.base_pipeline =
            parse_pipeline(root.at("pipeline"), "pipeline", default_pipeline(32));
    if (root.contains("multiview")) parse_multiview(root.at("multiview"), cfg);
    if (root.contains("dataset")) parse_dataset(root.at("dataset"), cfg);
    if (root.contains("bench")) parse_bench(root.at("bench"), cfg);
    cfg.multiview.validate();
    cfg.bench.multiview = cfg.multiview;
    return cfg;
}

EngineConfig load_config(const std::filesystem::path& path,
                         const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_config_text(text, overrides);
}

}  // namespace viewmix
