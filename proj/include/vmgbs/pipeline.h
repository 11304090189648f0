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

// Feature construction, the linear SVM, repeated-trial arithmetic and the two
// end-to-end classifiers (randomized classical and GBS based).

#ifndef VMGBS_PIPELINE_H
#define VMGBS_PIPELINE_H

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vmgbs/dataset.h"
#include "vmgbs/gbs.h"
#include "vmgbs/graph.h"

namespace vmgbs {

enum class FeatureKind { kSpectral, kGbsSample };
const char *feature_name(FeatureKind kind);
FeatureKind parse_feature(const std::string &name);

struct FeatureVector {
    std::vector<double> values;
    FeatureKind kind = FeatureKind::kSpectral;
    int parent_n = 0;
    int child_n = 0;
};

/// [spectrum(g1) | spectrum(g2)], each ascending and zero-padded at its tail to max(n1, n2).
FeatureVector spectral_feature(const Graph &g1, const Graph &g2);
/// [s1 | s2], each zero-padded at its tail to max(|s1|, |s2|).
FeatureVector gbs_feature(const PhotonPattern &s1, const PhotonPattern &s2);

struct LinearSvmModel {
    std::vector<double> weights;
    double bias = 0;
    double C = 7;
    FeatureKind kind = FeatureKind::kSpectral;
    int feature_dim = 0;
    int n_parent = 0;
    int n_child = 0;
    std::string encoding_digest;  // digest of the GBS configuration, empty for spectral models
    uint64_t training_seed = 0;

    double decision(const std::vector<double> &x) const;
    int predict(const std::vector<double> &x) const;
    nlohmann::json to_json() const;
    static LinearSvmModel from_json(const nlohmann::json &j);
};

struct LinearSvmOptions {
    double C = 7;
    int max_epochs = 2000;
    /// Stop once the spread of projected gradients falls below this.
    double tolerance = 1e-3;
    uint64_t seed = 0;
    bool record_objective = false;
};

struct LinearSvmReport {
    int epochs = 0;
    bool converged = false;
    std::vector<double> objective;  // 1/2|w|^2 - sum(alpha) after each epoch; non-increasing
};

/// Minimizes 1/2 (|w|^2 + b^2) + C sum_i max(0, 1 - y_i (w.x_i + b)) by dual
/// coordinate descent with the bias folded into w. Visiting order is shuffled
/// by options.seed, so training is deterministic.
LinearSvmModel train_linear_svm(const std::vector<std::vector<double>> &x, const std::vector<int> &y,
                                const LinearSvmOptions &options = {}, LinearSvmReport *report = nullptr);
double linear_svm_objective(const LinearSvmModel &model, const std::vector<std::vector<double>> &x,
                            const std::vector<int> &y);

/// Probability that a majority of n independent trials with error e is wrong.
double p_error(int n, double e);
/// Root of k^2 + ln k + 0.5724 + ln(2 delta) = 0 by Newton-Raphson.
double k_of_delta(double delta);
/// Smallest odd n with n (0.5 - e)^2 / (2 e (1 - e)) >= k(delta)^2, where e = 0.5 - epsilon.
int trials_needed(double epsilon, double delta);
int majority_vote(const std::vector<int> &labels);

struct Classification {
    int label = 0;
    std::vector<int> votes;
};

/// Majority over the first `trials` votes.
int majority_of_prefix(const std::vector<int> &votes, int trials);

/// Trial m predicts on spectral_feature(random LC walk of g1, g2) with walk length
/// uniform in [1, |g1|], drawn from derive_rng(seed, m).
Classification randomized_classical_classify(const Graph &g1, const Graph &g2, const LinearSvmModel &model,
                                             int n_trials, uint64_t seed);

/// Trial m draws one pattern from each encoded state with derive_rng(seed, m).
Classification quantum_classify(const Graph &g1, const Graph &g2, const LinearSvmModel &model, int n_trials,
                                const GbsConfig &config, uint64_t seed);

struct TrainingSet {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
};

TrainingSet spectral_training_set(const std::vector<LabeledPair> &pairs);
/// samples_per_pair GBS features per pair, drawn from derive_rng(derive_seed(seed, i), s).
TrainingSet gbs_training_set(const std::vector<LabeledPair> &pairs, const GbsConfig &config, int samples_per_pair,
                             uint64_t seed);

/// Seeded shuffle, then the first round(test_fraction * n) indices become the test split.
void split_indices(size_t n, double test_fraction, uint64_t seed, std::vector<size_t> *train,
                   std::vector<size_t> *test);

LinearSvmModel train_spectral_model(const std::vector<LabeledPair> &pairs, const LinearSvmOptions &options);
LinearSvmModel train_gbs_model(const std::vector<LabeledPair> &pairs, const GbsConfig &config,
                               int samples_per_pair, const LinearSvmOptions &options);

}  // namespace vmgbs

#endif  // VMGBS_PIPELINE_H
