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

#include "qrff/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "qrff/errors.h"
#include "qrff/rff.h"
#include "qrff/rng.h"

namespace qrff {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

[[noreturn]] void rethrow_at(const Error &e, std::size_t index, double x) {
    std::ostringstream msg;
    msg << "grid point " << index << " (x = " << x << "): " << e.what();
    const std::string m = msg.str();
    if (dynamic_cast<const ResolutionError *>(&e)) throw ResolutionError(m);
    if (dynamic_cast<const ConfigError *>(&e)) throw ConfigError(m);
    if (dynamic_cast<const CapacityError *>(&e)) throw CapacityError(m);
    if (dynamic_cast<const PostselectionError *>(&e)) throw PostselectionError(m);
    if (dynamic_cast<const DomainError *>(&e)) throw DomainError(m);
    if (dynamic_cast<const IoError *>(&e)) throw IoError(m);
    throw NumericalError(m);
}

// Runs body(i) for i in [0, n) on a small pool. Results must be written by index;
// the first failing index (lowest) is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body) {
    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double rmse(const std::vector<PointRecord> &rs, double PointRecord::*a, double PointRecord::*b) {
    double acc = 0.0;
    for (const auto &r : rs) acc += std::pow(r.*a - r.*b, 2);
    return rs.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(rs.size()));
}

double max_gap(const std::vector<PointRecord> &rs, double PointRecord::*a, double PointRecord::*b) {
    double m = 0.0;
    for (const auto &r : rs) m = std::max(m, std::abs(r.*a - r.*b));
    return m;
}

struct Column {
    const char *name;
    unsigned stage;
    double PointRecord::*field;
};

constexpr Column kColumns[] = {
    {"x", 0, &PointRecord::x},
    {"mean_exact", kStageExact, &PointRecord::mean_exact},
    {"var_exact", kStageExact, &PointRecord::var_exact},
    {"mean_rff", kStageRff, &PointRecord::mean_rff},
    {"var_rff", kStageRff, &PointRecord::var_rff},
    {"mean_qrff", kStageQuantum, &PointRecord::mean_qrff},
    {"var_qrff", kStageQuantum, &PointRecord::var_qrff},
    {"p1", kStageQuantum, &PointRecord::p1},
    {"p2", kStageQuantum, &PointRecord::p2},
};

std::vector<Column> columns_for(unsigned stages) {
    std::vector<Column> out;
    for (const Column &c : kColumns) {
        if (c.stage == 0 || (stages & c.stage)) out.push_back(c);
    }
    return out;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    f << content;
    f.close();
    if (!f) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace

std::vector<double> RunConfig::linspace(double start, double stop, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = count == 1 ? start
                            : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

void RunConfig::validate() const {
    if (n_points < 1) throw ConfigError("N must be >= 1");
    if (n_features < 1) throw ConfigError("M must be >= 1");
    if (dim != 1) throw ConfigError("the experiment driver supports d = 1 only");
    if (grid.empty()) throw ConfigError("query grid is empty");
    for (double g : grid) {
        if (!std::isfinite(g)) throw ConfigError("query grid has a non-finite point");
    }
    if (tau < 1) throw ConfigError("tau must be >= 1");
    if (shots < 1) throw ConfigError("shots must be >= 1");
    if (delta_r && !(*delta_r > 0.0 && std::isfinite(*delta_r))) {
        throw ConfigError("delta_R must be positive");
    }
    try {
        hyper.validate();
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
}

Dataset generate_dataset(const RunConfig &cfg) {
    cfg.validate();
    Dataset ds;
    const Eigen::Index n = cfg.n_points;
    ds.inputs.resize(n, 1);
    ds.targets.resize(n);
    Rng rng = make_rng(derive_seed(cfg.seed_data, {0}));
    if (cfg.layout == InputLayout::kUniform) {
        const std::vector<double> xs = RunConfig::linspace(0.0, 2.0 * std::numbers::pi, static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) ds.inputs(i, 0) = xs[static_cast<std::size_t>(i)];
    } else {
        std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
        for (Eigen::Index i = 0; i < n; ++i) ds.inputs(i, 0) = u(rng);
    }
    Rng noise_rng = make_rng(derive_seed(cfg.seed_data, {1}));
    std::normal_distribution<double> noise(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double eps = noise(noise_rng);
        ds.targets(i) = std::sin(ds.inputs(i, 0)) + cfg.hyper.noise_std * eps;
    }
    return ds;
}

ComparisonReport run_experiment(const RunConfig &cfg, unsigned stages) {
    cfg.validate();
    const Dataset ds = generate_dataset(cfg);
    ComparisonReport report;
    report.stages = stages;
    const std::size_t n = cfg.grid.size();
    report.records.resize(n);
    for (std::size_t i = 0; i < n; ++i) report.records[i].x = cfg.grid[i];
    auto query = [&](std::size_t i) { return Eigen::VectorXd::Constant(1, cfg.grid[i]); };

    if (stages & kStageExact) {
        const auto start = Clock::now();
        const ExactGp gp(ds, cfg.hyper);
        for (std::size_t i = 0; i < n; ++i) {
            const Posterior p = gp.predict(query(i));
            report.records[i].mean_exact = p.mean;
            report.records[i].var_exact = p.variance;
        }
        report.times.exact_s = seconds_since(start);
    }

    std::optional<FeatureModel> fm;
    if (stages & (kStageRff | kStageQuantum)) {
        const auto start = Clock::now();
        fm.emplace(build_feature_model(ds, sample_frequencies(cfg.n_features, cfg.hyper, cfg.dim, cfg.seed_freq),
                                       cfg.hyper));
        report.summary.rank = fm->svd().rank();
        if (stages & kStageRff) {
            const RffGp gp(*fm, ds.targets);
            for (std::size_t i = 0; i < n; ++i) {
                const Posterior p = gp.predict(query(i));
                report.records[i].mean_rff = p.mean;
                report.records[i].var_rff = p.variance;
            }
        }
        report.times.rff_s = seconds_since(start);
    }

    if (stages & kStageQuantum) {
        PipelineConfig pc;
        pc.tau = cfg.tau;
        pc.delta_r = cfg.delta_r;
        pc.mode = cfg.mode;
        pc.shots = cfg.shots;
        pc.seed = cfg.seed_shots;
        const auto setup_start = Clock::now();
        const QuantumGp qgp(*fm, pc);
        report.times.quantum_setup_s = seconds_since(setup_start);

        const auto readout_start = Clock::now();
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            try {
                const PosteriorEstimate m = qgp.estimate_mean(ds.targets, query(i), i);
                const PosteriorEstimate v = qgp.estimate_variance(query(i), i);
                PointRecord &r = report.records[i];
                r.mean_qrff = m.mean;
                r.var_qrff = v.variance;
                r.var_qrff_unclamped = v.variance_unclamped;
                r.p1 = m.p1;
                r.p2 = v.p2;
                r.shots_mean = m.shots_used;
                r.shots_variance = v.shots_used;
            } catch (const Error &e) {
                rethrow_at(e, i, cfg.grid[i]);
            }
        });
        report.times.quantum_readout_s = seconds_since(readout_start);

        ReportSummary &s = report.summary;
        s.p1 = qgp.mean_branch().p_ancilla;
        s.p2 = qgp.variance_branch().p_ancilla;
        s.c1 = qgp.constants().c1;
        s.c2 = qgp.constants().c2;
        s.delta_r = qgp.spectral().delta_r;
        s.uncompute_mean = qgp.mean_branch().p_uncompute;
        s.uncompute_variance = qgp.variance_branch().p_uncompute;
    }

    ReportSummary &s = report.summary;
    const auto &rs = report.records;
    if ((stages & kStageQuantum) && (stages & kStageRff)) {
        s.rmse_mean_qrff_vs_rff = rmse(rs, &PointRecord::mean_qrff, &PointRecord::mean_rff);
        s.max_abs_mean_gap_qrff_vs_rff = max_gap(rs, &PointRecord::mean_qrff, &PointRecord::mean_rff);
        s.max_abs_var_gap_qrff_vs_rff = max_gap(rs, &PointRecord::var_qrff, &PointRecord::var_rff);
    }
    if ((stages & kStageQuantum) && (stages & kStageExact)) {
        s.rmse_mean_qrff_vs_exact = rmse(rs, &PointRecord::mean_qrff, &PointRecord::mean_exact);
    }
    if ((stages & kStageRff) && (stages & kStageExact)) {
        s.rmse_mean_rff_vs_exact = rmse(rs, &PointRecord::mean_rff, &PointRecord::mean_exact);
        s.max_abs_var_gap_rff_vs_exact = max_gap(rs, &PointRecord::var_rff, &PointRecord::var_exact);
    }
    return report;
}

std::string csv_header(unsigned stages) {
    std::string out;
    for (const Column &c : columns_for(stages)) {
        if (!out.empty()) out += ',';
        out += c.name;
    }
    return out;
}

std::string render_csv(const ComparisonReport &report) {
    const std::vector<Column> cols = columns_for(report.stages);
    std::string out = csv_header(report.stages) + "\n";
    for (const PointRecord &r : report.records) {
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (k) out += ',';
            out += fmt9(r.*(cols[k].field));
        }
        out += '\n';
    }
    return out;
}

std::string render_plot_data(const ComparisonReport &report) {
    const std::vector<Column> cols = columns_for(report.stages);
    std::string out = "#";
    for (const Column &c : cols) {
        out += ' ';
        out += c.name;
    }
    out += '\n';
    for (const PointRecord &r : report.records) {
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (k) out += ' ';
            out += fmt9(r.*(cols[k].field));
        }
        out += '\n';
    }
    return out;
}

std::string render_summary(const ComparisonReport &report, const RunConfig &cfg) {
    std::ostringstream o;
    auto kv = [&](const char *k, const std::string &v) { o << k << " = " << v << '\n'; };
    const ReportSummary &s = report.summary;
    kv("n_points", std::to_string(cfg.n_points));
    kv("n_features", std::to_string(cfg.n_features));
    kv("grid_points", std::to_string(report.records.size()));
    kv("signal_std", fmt9(cfg.hyper.signal_std));
    kv("length_scale", fmt9(cfg.hyper.length_scale));
    kv("noise_std", fmt9(cfg.hyper.noise_std));
    kv("tau", std::to_string(cfg.tau));
    kv("mode", cfg.mode == EstimatorMode::kExact ? "exact" : "sampled");
    kv("shots", std::to_string(cfg.mode == EstimatorMode::kExact ? 0 : cfg.shots));
    kv("seed_data", std::to_string(cfg.seed_data));
    kv("seed_freq", std::to_string(cfg.seed_freq));
    kv("seed_shots", std::to_string(cfg.seed_shots));
    if (report.stages & (kStageRff | kStageQuantum)) kv("rank", std::to_string(s.rank));
    if (report.stages & kStageQuantum) {
        kv("delta_r", fmt9(s.delta_r));
        kv("c1", fmt9(s.c1));
        kv("c2", fmt9(s.c2));
        kv("p1", fmt9(s.p1));
        kv("p2", fmt9(s.p2));
        kv("uncompute_mean", fmt9(s.uncompute_mean));
        kv("uncompute_variance", fmt9(s.uncompute_variance));
    }
    if ((report.stages & kStageQuantum) && (report.stages & kStageRff)) {
        kv("rmse_mean_qrff_vs_rff", fmt9(s.rmse_mean_qrff_vs_rff));
        kv("max_abs_mean_gap_qrff_vs_rff", fmt9(s.max_abs_mean_gap_qrff_vs_rff));
        kv("max_abs_var_gap_qrff_vs_rff", fmt9(s.max_abs_var_gap_qrff_vs_rff));
    }
    if ((report.stages & kStageQuantum) && (report.stages & kStageExact)) {
        kv("rmse_mean_qrff_vs_exact", fmt9(s.rmse_mean_qrff_vs_exact));
    }
    if ((report.stages & kStageRff) && (report.stages & kStageExact)) {
        kv("rmse_mean_rff_vs_exact", fmt9(s.rmse_mean_rff_vs_exact));
        kv("max_abs_var_gap_rff_vs_exact", fmt9(s.max_abs_var_gap_rff_vs_exact));
    }
    kv("time_exact_s", fmt9(report.times.exact_s));
    kv("time_rff_s", fmt9(report.times.rff_s));
    kv("time_quantum_setup_s", fmt9(report.times.quantum_setup_s));
    kv("time_quantum_readout_s", fmt9(report.times.quantum_readout_s));
    return o.str();
}

OutputFiles emit_outputs(const ComparisonReport &report, const RunConfig &cfg) {
    if (report.records.empty()) {
        throw ConfigError("refusing to emit an empty report");
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + cfg.output_dir.string() + "': " + ec.message());
    }
    OutputFiles out{cfg.output_dir / "results.csv", cfg.output_dir / "summary.txt", cfg.output_dir / "plot.dat"};
    write_file(out.csv, render_csv(report));
    write_file(out.summary, render_summary(report, cfg));
    write_file(out.plot, render_plot_data(report));
    return out;
}

}  // namespace qrff
