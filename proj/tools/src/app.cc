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

#include "qrff_cli/app.h"

#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qrff/errors.h"
#include "qrff/experiment.h"
#include "qrff_cli/config.h"

namespace qrff::cli {
namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> shots;
    std::optional<int> tau;
    std::optional<std::uint64_t> seed_data, seed_freq, seed_shots;
    std::optional<std::string> mode;
    std::optional<std::string> out;
    std::optional<Eigen::Index> n_points, n_features;
    std::optional<double> delta_r;
    std::optional<std::string> layout;
    std::optional<unsigned> threads;
};

void add_run_flags(CLI::App *sub, Overrides &o) {
    sub->add_option("--config", o.config, "JSON run description");
    sub->add_option("--shots", o.shots, "Shots per query and branch (sampled mode)");
    sub->add_option("--tau", o.tau, "Eigenvalue register qubits");
    sub->add_option("--seed-data", o.seed_data, "Dataset noise seed");
    sub->add_option("--seed-freq", o.seed_freq, "Frequency sampling seed");
    sub->add_option("--seed-shots", o.seed_shots, "Measurement seed");
    sub->add_option("--mode", o.mode, "exact | sampled");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--n-points", o.n_points, "Training points N");
    sub->add_option("--n-features", o.n_features, "Frequencies M (2M features)");
    sub->add_option("--delta-r", o.delta_r, "Eigenvalue register range (default 1.05 lambda_max^2)");
    sub->add_option("--layout", o.layout, "uniform | random training inputs");
    sub->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
}

RunConfig resolve(const Overrides &o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_run_config(o.config);
    if (o.shots) cfg.shots = *o.shots;
    if (o.tau) cfg.tau = *o.tau;
    if (o.seed_data) cfg.seed_data = *o.seed_data;
    if (o.seed_freq) cfg.seed_freq = *o.seed_freq;
    if (o.seed_shots) cfg.seed_shots = *o.seed_shots;
    if (o.mode) cfg.mode = parse_mode(*o.mode);
    if (o.out) cfg.output_dir = *o.out;
    if (o.n_points) cfg.n_points = *o.n_points;
    if (o.n_features) cfg.n_features = *o.n_features;
    if (o.delta_r) cfg.delta_r = *o.delta_r;
    if (o.layout) cfg.layout = parse_layout(*o.layout);
    if (o.threads) cfg.threads = *o.threads;
    cfg.validate();
    return cfg;
}

int exit_code_for(const Error &e) {
    if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const DomainError *>(&e)) return kExitConfig;
    if (dynamic_cast<const CapacityError *>(&e)) return kExitCapacity;
    if (dynamic_cast<const PostselectionError *>(&e)) return kExitPostselection;
    if (dynamic_cast<const IoError *>(&e)) return kExitIo;
    return kExitNumerical;
}

std::string quoted(const std::string &s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') q += '\\';
        q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
}

int report_error(std::ostream &err, const char *kind, int code, const std::string &message) {
    err << "qrff: error kind=" << kind << " exit=" << code << " message=" << quoted(message) << '\n';
    return code;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum-assisted random Fourier feature GP regression on a statevector simulator", "qrff"};
    app.require_subcommand(1);

    Overrides o;
    unsigned stages = 0;
    bool selftest = false;
    const std::pair<const char *, unsigned> runs[] = {
        {"fit-exact", kStageExact},
        {"fit-rff", kStageRff},
        {"run-quantum", kStageQuantum},
        {"compare", kAllStages},
    };
    const char *help[] = {"Exact GP posterior on the grid", "Classical random-feature posterior on the grid",
                          "Simulated quantum pipeline on the grid", "All three stages side by side"};
    for (std::size_t i = 0; i < std::size(runs); ++i) {
        CLI::App *sub = app.add_subcommand(runs[i].first, help[i]);
        add_run_flags(sub, o);
        sub->callback([&stages, s = runs[i].second] { stages = s; });
    }
    app.add_subcommand("selftest", "Run the built-in invariant checks")->callback([&selftest] { selftest = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        return report_error(err, "config", kExitConfig, e.what());
    }

    try {
        if (selftest) {
            const bool ok = run_selftest(out);
            out << (ok ? "selftest: all checks passed\n" : "selftest: FAILED\n");
            return ok ? kExitOk : kExitNumerical;
        }
        const RunConfig cfg = resolve(o);
        const ComparisonReport report = run_experiment(cfg, stages);
        const OutputFiles files = emit_outputs(report, cfg);
        out << render_summary(report, cfg);
        out << "wrote " << files.csv.string() << '\n';
        out << "wrote " << files.summary.string() << '\n';
        out << "wrote " << files.plot.string() << '\n';
        return kExitOk;
    } catch (const Error &e) {
        return report_error(err, e.kind(), exit_code_for(e), e.what());
    } catch (const std::exception &e) {
        return report_error(err, "internal", kExitNumerical, e.what());
    }
}

}  // namespace qrff::cli
