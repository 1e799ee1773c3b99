// Copyright 2026 The qrff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrff_cli/config.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "qrff/errors.h"

namespace qrff::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *a : allowed) ok = ok || item.key() == a;
        if (!ok) throw ConfigError("unknown key '" + where + item.key() + "'");
    }
}

const json &object_at(const json &parent, const char *key, const std::string &where) {
    const json &v = parent.at(key);
    if (!v.is_object()) throw ConfigError("'" + where + key + "' must be an object");
    return v;
}

double number_at(const json &parent, const char *key, const std::string &where) {
    const json &v = parent.at(key);
    if (!v.is_number()) throw ConfigError("'" + where + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t count_at(const json &parent, const char *key, const std::string &where) {
    const json &v = parent.at(key);
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ConfigError("'" + where + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::string string_at(const json &parent, const char *key, const std::string &where) {
    const json &v = parent.at(key);
    if (!v.is_string()) throw ConfigError("'" + where + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

EstimatorMode parse_mode(const std::string &s) {
    if (s == "exact") return EstimatorMode::kExact;
    if (s == "sampled") return EstimatorMode::kSampled;
    throw ConfigError("mode must be 'exact' or 'sampled', got '" + s + "'");
}

InputLayout parse_layout(const std::string &s) {
    if (s == "uniform") return InputLayout::kUniform;
    if (s == "random") return InputLayout::kRandom;
    throw ConfigError("input_layout must be 'uniform' or 'random', got '" + s + "'");
}

RunConfig parse_run_config(const std::string &json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(root, "", {"n_points", "n_features", "dim", "kernel", "grid", "tau", "shots", "seeds", "delta_r",
                              "mode", "input_layout", "output_dir", "threads"});

    RunConfig cfg;
    if (root.contains("n_points")) cfg.n_points = static_cast<Eigen::Index>(count_at(root, "n_points", ""));
    if (root.contains("n_features")) cfg.n_features = static_cast<Eigen::Index>(count_at(root, "n_features", ""));
    if (root.contains("dim")) cfg.dim = static_cast<Eigen::Index>(count_at(root, "dim", ""));
    if (root.contains("kernel")) {
        const json &k = object_at(root, "kernel", "");
        reject_unknown(k, "kernel.", {"signal_std", "length_scale", "noise_std"});
        if (k.contains("signal_std")) cfg.hyper.signal_std = number_at(k, "signal_std", "kernel.");
        if (k.contains("length_scale")) cfg.hyper.length_scale = number_at(k, "length_scale", "kernel.");
        if (k.contains("noise_std")) cfg.hyper.noise_std = number_at(k, "noise_std", "kernel.");
    }
    if (root.contains("grid")) {
        const json &g = root.at("grid");
        if (g.is_array()) {
            cfg.grid.clear();
            for (const json &v : g) {
                if (!v.is_number()) throw ConfigError("'grid' entries must be numbers");
                cfg.grid.push_back(v.get<double>());
            }
        } else if (g.is_object()) {
            reject_unknown(g, "grid.", {"start", "stop", "count"});
            for (const char *key : {"start", "stop", "count"}) {
                if (!g.contains(key)) throw ConfigError(std::string("'grid.") + key + "' is required");
            }
            cfg.grid = RunConfig::linspace(number_at(g, "start", "grid."), number_at(g, "stop", "grid."),
                                           count_at(g, "count", "grid."));
        } else {
            throw ConfigError("'grid' must be an array of numbers or {start, stop, count}");
        }
    }
    if (root.contains("tau")) cfg.tau = static_cast<int>(count_at(root, "tau", ""));
    if (root.contains("shots")) cfg.shots = count_at(root, "shots", "");
    if (root.contains("seeds")) {
        const json &s = object_at(root, "seeds", "");
        reject_unknown(s, "seeds.", {"data", "freq", "shots"});
        if (s.contains("data")) cfg.seed_data = count_at(s, "data", "seeds.");
        if (s.contains("freq")) cfg.seed_freq = count_at(s, "freq", "seeds.");
        if (s.contains("shots")) cfg.seed_shots = count_at(s, "shots", "seeds.");
    }
    if (root.contains("delta_r") && !root.at("delta_r").is_null()) cfg.delta_r = number_at(root, "delta_r", "");
    if (root.contains("mode")) cfg.mode = parse_mode(string_at(root, "mode", ""));
    if (root.contains("input_layout")) cfg.layout = parse_layout(string_at(root, "input_layout", ""));
    if (root.contains("output_dir")) cfg.output_dir = string_at(root, "output_dir", "");
    if (root.contains("threads")) cfg.threads = static_cast<unsigned>(count_at(root, "threads", ""));
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_run_config(text.str());
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string dump_run_config(const RunConfig &cfg) {
    json j;
    j["n_points"] = cfg.n_points;
    j["n_features"] = cfg.n_features;
    j["dim"] = cfg.dim;
    j["kernel"] = {{"signal_std", cfg.hyper.signal_std},
                   {"length_scale", cfg.hyper.length_scale},
                   {"noise_std", cfg.hyper.noise_std}};
    j["grid"] = cfg.grid;
    j["tau"] = cfg.tau;
    j["shots"] = cfg.shots;
    j["seeds"] = {{"data", cfg.seed_data}, {"freq", cfg.seed_freq}, {"shots", cfg.seed_shots}};
    j["delta_r"] = cfg.delta_r ? json(*cfg.delta_r) : json(nullptr);
    j["mode"] = cfg.mode == EstimatorMode::kExact ? "exact" : "sampled";
    j["input_layout"] = cfg.layout == InputLayout::kUniform ? "uniform" : "random";
    j["output_dir"] = cfg.output_dir.string();
    j["threads"] = cfg.threads;
    return j.dump(2) + "\n";
}

}  // namespace qrff::cli
