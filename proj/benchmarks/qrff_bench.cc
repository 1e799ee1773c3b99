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

#include <cstdint>
#include <numbers>

#include <benchmark/benchmark.h>

#include "qrff/experiment.h"
#include "qrff/gates.h"
#include "qrff/kernel.h"
#include "qrff/pipeline.h"
#include "qrff/qpe.h"
#include "qrff/rff.h"
#include "qrff/statevector.h"

namespace qrff {
namespace {

FeatureModel sine_model(Eigen::Index n, Eigen::Index m) {
    RunConfig cfg;
    cfg.n_points = n;
    cfg.n_features = m;
    return build_feature_model(generate_dataset(cfg), sample_frequencies(m, cfg.hyper, 1, cfg.seed_freq), cfg.hyper);
}

void BM_ApplyGate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Statevector sv({{"q", n}});
    apply_gate(sv, GateOp::h(0));
    const GateOp ry = GateOp::ry(n / 2, 0.3);
    const GateOp cry = GateOp::ry(n / 2, 0.3).controlled({0, 1}, 3);
    for (auto _ : state) {
        apply_gate(sv, ry);
        apply_gate(sv, cry);
        benchmark::DoNotOptimize(sv.mutable_amplitudes().data());
    }
    state.SetItemsProcessed(2 * state.iterations() * static_cast<std::int64_t>(sv.dimension()));
}
BENCHMARK(BM_ApplyGate)->Arg(12)->Arg(16)->Arg(20);

void BM_StatePreparation(benchmark::State &state) {
    const FeatureModel fm = sine_model(state.range(0), 2);
    const EncodingPlan plan = plan_encoding(fm);
    for (auto _ : state) benchmark::DoNotOptimize(prepare_data_state(plan));
}
BENCHMARK(BM_StatePreparation)->Arg(16)->Arg(64);

void BM_SpectralExtraction(benchmark::State &state) {
    const FeatureModel fm = sine_model(16, 2);
    const Statevector encoded = prepare_data_state(plan_encoding(fm));
    const int tau = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spectral_extraction(encoded, fm, tau, default_delta_r(fm)));
}
BENCHMARK(BM_SpectralExtraction)->Arg(8)->Arg(10)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_PipelineSetup(benchmark::State &state) {
    const FeatureModel fm = sine_model(16, 2);
    PipelineConfig pc;
    pc.tau = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(QuantumGp(fm, pc));
}
BENCHMARK(BM_PipelineSetup)->Arg(10)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_Readout(benchmark::State &state) {
    const FeatureModel fm = sine_model(16, 2);
    PipelineConfig pc;
    pc.mode = state.range(0) == 0 ? EstimatorMode::kExact : EstimatorMode::kSampled;
    const QuantumGp qgp(fm, pc);
    const Eigen::VectorXd y = generate_dataset(RunConfig{}).targets;
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 1.0);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgp.estimate_mean(y, x, stream));
        benchmark::DoNotOptimize(qgp.estimate_variance(x, stream++));
    }
}
BENCHMARK(BM_Readout)->Arg(0)->Arg(1);

void BM_ExactPosterior(benchmark::State &state) {
    RunConfig cfg;
    cfg.n_points = state.range(0);
    const ExactGp gp(generate_dataset(cfg), cfg.hyper);
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(gp.predict(x));
}
BENCHMARK(BM_ExactPosterior)->Arg(16)->Arg(256);

void BM_RffPosterior(benchmark::State &state) {
    const FeatureModel fm = sine_model(256, state.range(0));
    const RffGp gp(fm, generate_dataset([] {
                           RunConfig c;
                           c.n_points = 256;
                           return c;
                       }())
                           .targets);
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(gp.predict(x));
}
BENCHMARK(BM_RffPosterior)->Arg(2)->Arg(256);

}  // namespace
}  // namespace qrff

BENCHMARK_MAIN();
