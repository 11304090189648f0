// Copyright 2026 The vmgbs Authors
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

// Runtime model and the experiments behind the command-line tool.

#ifndef VMGBS_BENCH_H
#define VMGBS_BENCH_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "vmgbs/dataset.h"
#include "vmgbs/gbs.h"
#include "vmgbs/kernels.h"
#include "vmgbs/pipeline.h"

namespace vmgbs {

struct HardwareProfile {
    double rep_rate_hz = 1e7;
    double squeeze_db = 5.0;
    LossBudget loss;
    LatencyParams latency;
    double t_takagi_s = 0;
    double t_svm_s = 0;

    void validate() const;
    nlohmann::json to_json() const;
};

/// t_AT + (n_trials - 1) / R + t_o + t_SVM.
double quantum_wallclock(const HardwareProfile &profile, int n_modes, int n_trials);

/// Operation-count models: N^3 n_c for the classical algorithm, N^4 2^{N/2} n_q
/// for classical GBS simulation and N^2 + n_q for the device.
struct ScalingModel {
    double classical = 0;
    double simulated_gbs = 0;
    double device = 0;
};
ScalingModel scaling_model(int n, double n_c, double n_q);

/// Fills t_takagi_s and t_svm_s with in-process timings for an n-vertex graph.
void measure_microbenchmarks(HardwareProfile *profile, int n, uint64_t seed);

/// Median wall-clock seconds of `runs` calls.
template <typename F>
double median_seconds(int runs, F &&f);

/// Child size used when none is given.
int default_child_size(int n_parent);

struct Split {
    std::vector<LabeledPair> train;
    std::vector<LabeledPair> test;
};
Split split_dataset(const Dataset &ds, double test_fraction, uint64_t seed);

/// Test error of a kernel SVM trained on `train`.
double kernel_test_error(const Split &split, const KernelOptions &kernel, double C);
/// Test error of a single-shot spectral linear SVM.
double spectral_test_error(const Split &split, const LinearSvmOptions &options);

struct BaselineRow {
    int n_parent = 0;
    int n_child = 0;
    uint64_t seed = 0;
    std::string method;
    double test_error = 0;
};

struct BaselineConfig {
    std::vector<int> n_parents{7, 8, 9};
    int positives = 500;
    int negatives = 500;
    std::vector<uint64_t> seeds{1, 2, 3};
    double test_fraction = 0.25;
    double C = 7;
    int wl_iterations = 3;
    PairCombine combine = PairCombine::kSum;
};
std::vector<BaselineRow> baseline_comparison(const BaselineConfig &config);

/// Accuracy of majority votes over the first n trials, averaged over pairs and
/// vote seeds, for each n in `trial_counts`.
struct TrialCurve {
    std::vector<int> trials;
    std::vector<double> accuracy;
    std::vector<double> single_shot_accuracy_per_pair;
};
TrialCurve classical_trial_curve(const std::vector<LabeledPair> &pairs, const LinearSvmModel &model,
                                 const std::vector<int> &trial_counts, int repetitions, uint64_t seed);
TrialCurve quantum_trial_curve(const std::vector<LabeledPair> &pairs, const LinearSvmModel &model,
                               const GbsConfig &config, const std::vector<int> &trial_counts, int repetitions,
                               uint64_t seed);

/// Odd trial counts 1, 3, 7, 15, ... (2^k - 1) up to and including cap's grid point.
std::vector<int> trial_grid(int cap);
/// Smallest grid count whose accuracy reaches target, or -1.
int first_reaching(const TrialCurve &curve, double target);

struct SweepConfig {
    int n_parent = 6;
    int n_child = 6;
    int positives = 150;
    int negatives = 150;
    int eval_pairs = 15;
    std::vector<double> squeeze_db{3, 5, 8};
    std::vector<double> loss_db{0, 1.2, 3};
    double target = 0.98;
    int trial_cap = 1023;
    int samples_per_pair = 10;
    int repetitions = 5;
    int cutoff = 5;
    double C = 7;
    uint64_t seed = 1;
};
struct SweepRow {
    double squeeze_db = 0;
    double loss_db = 0;
    int n_required = 0;  // trial_cap when saturated
    bool saturated = false;
    double accuracy_at_cap = 0;
    double single_shot_accuracy = 0;
};
std::vector<SweepRow> sweep(const SweepConfig &config);
void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out);

struct RuntimeConfig {
    int min_n = 6;
    int max_n = 12;
    int positives = 100;
    int negatives = 100;
    int eval_pairs = 15;
    double target = 0.98;
    int trial_cap = 1023;
    int samples_per_pair = 10;
    int repetitions = 3;
    int timing_runs = 5;
    double C = 7;
    GbsConfig gbs;
    HardwareProfile profile;
    uint64_t seed = 1;
};
struct RuntimeRow {
    int n = 0;
    int n_c = 0;
    int n_q = 0;
    bool n_c_saturated = false;
    bool n_q_saturated = false;
    double t_c_s = 0;       // measured classical wall-clock
    double t_qgbs_s = 0;    // modeled device wall-clock
    double t_cgbs_s = 0;    // measured simulator wall-clock for n_q samples of both graphs
    double speedup = 0;     // t_c_s / t_qgbs_s
    ScalingModel model;
};
std::vector<RuntimeRow> runtime_report(const RuntimeConfig &config);
void write_runtime_csv(const std::vector<RuntimeRow> &rows, std::ostream &out);

/// Host description recorded next to machine-relative timings.
std::string host_description();

}  // namespace vmgbs

#include "vmgbs/bench_inl.h"

#endif  // VMGBS_BENCH_H
