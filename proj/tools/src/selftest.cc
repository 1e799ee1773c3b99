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

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qrff/density.h"
#include "qrff/experiment.h"
#include "qrff/gates.h"
#include "qrff/overlap.h"
#include "qrff/pipeline.h"
#include "qrff/rng.h"
#include "qrff_cli/app.h"

namespace qrff::cli {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct Check {
    const char *name;
    std::function<std::string()> body;  // empty string on success
};

std::string gate_unitarity() {
    Rng rng = make_rng(11);
    std::uniform_int_distribution<int> q(0, 5), kind(0, 3);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    Statevector sv({{"q", 6}});
    for (int step = 0; step < 100; ++step) {
        int a = q(rng), b = q(rng);
        while (b == a) b = q(rng);
        GateOp g = GateOp::h(a);
        switch (kind(rng)) {
            case 0: g = GateOp::h(a); break;
            case 1: g = GateOp::ry(a, ang(rng)).controlled_on(b); break;
            case 2: g = GateOp::phase(a, ang(rng)); break;
            default: g = GateOp::swap(a, b); break;
        }
        if (unitarity_defect(g.realize(6)) > 1e-10) return "non-unitary gate at step " + std::to_string(step);
        apply_gate(sv, g);
    }
    if (std::abs(sv.norm() - 1.0) > 1e-10) return "norm drifted to " + std::to_string(sv.norm());
    return {};
}

std::string bell_partial_trace() {
    Statevector sv({{"a", 1}, {"b", 1}});
    apply_gate(sv, GateOp::h(0));
    apply_gate(sv, GateOp::x(1).controlled_on(0));
    const DensityOperator rho = partial_trace(sv, "a");
    const double err = (rho.matrix - Eigen::MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff();
    return err <= 1e-10 ? std::string() : "max deviation " + std::to_string(err);
}

std::string overlap_tests() {
    Rng rng = make_rng(12);
    std::normal_distribution<double> n01;
    auto random_state = [&] {
        VectorXcd v(8);
        for (auto &c : v) c = Complex(n01(rng), n01(rng));
        return Statevector::from_amplitudes({{"s", 3}}, v.normalized());
    };
    const Statevector a = random_state(), b = random_state();
    const Complex ip = b.amplitudes().dot(a.amplitudes());  // <b|a>
    const double h = hadamard_test(a, b, 0, 0).value;
    const double s = swap_test(a, b, 0, 0).value;
    if (std::abs(h - ip.real()) > 1e-10) return "hadamard test off by " + std::to_string(h - ip.real());
    if (std::abs(s - std::norm(ip)) > 1e-10) return "swap test off by " + std::to_string(s - std::norm(ip));
    return {};
}

std::string state_prep() {
    RunConfig cfg;
    cfg.n_points = 5;
    cfg.n_features = 3;
    const Dataset ds = generate_dataset(cfg);
    const FeatureModel fm(sample_frequencies(3, cfg.hyper, 1, 9), ds.inputs, cfg.hyper);
    const EncodingPlan plan = plan_encoding(fm);
    const Statevector sv = prepare_data_state(plan);
    const Statevector ref = Statevector::from_amplitudes(plan.layout(), vectorized_design(fm));
    const double f = fidelity(sv, ref);
    return f >= 1.0 - 1e-10 ? std::string() : "fidelity " + std::to_string(f);
}

std::string small_pipeline() {
    RunConfig cfg;
    cfg.n_points = 6;
    cfg.tau = 9;
    cfg.grid = RunConfig::linspace(0.0, 6.0, 7);
    cfg.threads = 1;
    const ComparisonReport rep = run_experiment(cfg);
    for (const PointRecord &r : rep.records) {
        if (!(r.p1 > 0.0 && r.p1 <= 1.0 && r.p2 > 0.0 && r.p2 <= 1.0)) return "acceptance outside (0, 1]";
        if (r.var_qrff < 0.0 || r.var_exact < 0.0 || r.var_rff < 0.0) return "negative variance";
    }
    if (rep.summary.max_abs_mean_gap_qrff_vs_rff > 0.05) {
        return "mean gap " + std::to_string(rep.summary.max_abs_mean_gap_qrff_vs_rff);
    }
    return {};
}

std::string rff_self_consistency() {
    RunConfig cfg;
    const Dataset ds = generate_dataset(cfg);
    const FeatureModel fm(sample_frequencies(4, cfg.hyper, 1, 5), ds.inputs, cfg.hyper);
    const MatrixXd &x = fm.design();
    const MatrixXd a = x.transpose() * x + cfg.hyper.noise_variance() * MatrixXd::Identity(x.cols(), x.cols());
    VectorXd xs(1);
    xs << 1.3;
    const VectorXd phi = fm.scaled_features(xs);
    const double direct = phi.dot(a.ldlt().solve(x.transpose() * ds.targets));
    const double got = rff_posterior(fm, ds.targets, xs).mean;
    return std::abs(direct - got) <= 1e-8 ? std::string() : "mean off by " + std::to_string(direct - got);
}

}  // namespace

bool run_selftest(std::ostream &out) {
    const std::vector<Check> checks = {
        {"gate_unitarity_depth100", gate_unitarity},
        {"bell_partial_trace", bell_partial_trace},
        {"overlap_exact_modes", overlap_tests},
        {"state_prep_fidelity", state_prep},
        {"rff_mean_self_consistency", rff_self_consistency},
        {"small_pipeline_invariants", small_pipeline},
    };
    bool ok = true;
    for (const Check &c : checks) {
        std::string why;
        try {
            why = c.body();
        } catch (const std::exception &e) {
            why = std::string("threw: ") + e.what();
        }
        out << (why.empty() ? "ok   " : "FAIL ") << c.name;
        if (!why.empty()) out << ": " << why;
        out << '\n';
        ok = ok && why.empty();
    }
    return ok;
}

}  // namespace qrff::cli
