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

// End-to-end experiment: exact GP, classical RFF GP and the simulated quantum
// pipeline evaluated on a common query grid, plus report emission.

#ifndef QRFF_EXPERIMENT_H_
#define QRFF_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qrff/kernel.h"
#include "qrff/pipeline.h"

namespace qrff {

enum class InputLayout { kUniform, kRandom };

struct RunConfig {
    Eigen::Index n_points = 16;
    Eigen::Index n_features = 2;
    Eigen::Index dim = 1;
    KernelHyper hyper{1.5, 1.0, 0.1};
    std::vector<double> grid = linspace(0.0, 2.0 * std::numbers::pi, 50);
    int tau = 13;
    std::uint64_t shots = 1'000'000;
    std::uint64_t seed_data = 1;
    std::uint64_t seed_freq = 2;
    std::uint64_t seed_shots = 3;
    std::optional<double> delta_r;
    EstimatorMode mode = EstimatorMode::kExact;
    InputLayout layout = InputLayout::kUniform;
    std::filesystem::path output_dir = "out";
    unsigned threads = 0;  // 0: hardware concurrency

    /// Throws ConfigError on any violated constraint.
    void validate() const;

    static std::vector<double> linspace(double start, double stop, std::size_t count);
};

/// Inputs on [0, 2 pi] (evenly spaced, or uniform random with the data seed),
/// targets sin(x) + Normal(0, sigma_n^2) noise drawn with the data seed.
Dataset generate_dataset(const RunConfig &cfg);

enum Stage : unsigned {
    kStageExact = 1u << 0,
    kStageRff = 1u << 1,
    kStageQuantum = 1u << 2,
    kAllStages = kStageExact | kStageRff | kStageQuantum,
};

struct PointRecord {
    double x = 0.0;
    double mean_exact = 0.0;
    double var_exact = 0.0;
    double mean_rff = 0.0;
    double var_rff = 0.0;
    double mean_qrff = 0.0;
    double var_qrff = 0.0;
    double var_qrff_unclamped = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    std::uint64_t shots_mean = 0;
    std::uint64_t shots_variance = 0;
};

struct StageTimes {
    double exact_s = 0.0;
    double rff_s = 0.0;
    double quantum_setup_s = 0.0;
    double quantum_readout_s = 0.0;
};

struct ReportSummary {
    double rmse_mean_qrff_vs_rff = 0.0;
    double rmse_mean_qrff_vs_exact = 0.0;
    double rmse_mean_rff_vs_exact = 0.0;
    double max_abs_mean_gap_qrff_vs_rff = 0.0;
    double max_abs_var_gap_qrff_vs_rff = 0.0;
    double max_abs_var_gap_rff_vs_exact = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double delta_r = 0.0;
    double uncompute_mean = 0.0;
    double uncompute_variance = 0.0;
    Eigen::Index rank = 0;
};

struct ComparisonReport {
    unsigned stages = kAllStages;
    std::vector<PointRecord> records;
    ReportSummary summary;
    StageTimes times;
};

ComparisonReport run_experiment(const RunConfig &cfg, unsigned stages = kAllStages);

struct OutputFiles {
    std::filesystem::path csv;
    std::filesystem::path summary;
    std::filesystem::path plot;
};

/// Column header of the results CSV for the given stages.
std::string csv_header(unsigned stages);
/// Results CSV body: header line then one line per record, %.9g floats, LF endings.
std::string render_csv(const ComparisonReport &report);
std::string render_summary(const ComparisonReport &report, const RunConfig &cfg);
std::string render_plot_data(const ComparisonReport &report);

/// Writes results.csv, summary.txt and plot.dat into cfg.output_dir.
OutputFiles emit_outputs(const ComparisonReport &report, const RunConfig &cfg);

}  // namespace qrff

#endif  // QRFF_EXPERIMENT_H_
