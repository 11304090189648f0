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

#include "vmgbs/pipeline.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vmgbs/errors.h"
#include "vmgbs/json_io.h"
#include "vmgbs/parallel.h"

namespace vmgbs {

namespace {

template <typename T>
std::vector<double> concat_padded(const std::vector<T> &a, const std::vector<T> &b) {
    const size_t m = std::max(a.size(), b.size());
    std::vector<double> out(2 * m, 0.0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<double>(a[i]);
    for (size_t i = 0; i < b.size(); ++i) out[m + i] = static_cast<double>(b[i]);
    return out;
}

int sign_label(double v) { return v >= 0 ? 1 : -1; }

void check_model_input(const LinearSvmModel &model, size_t dim) {
    if (static_cast<int>(dim) != model.feature_dim) {
        throw InvalidArgument("feature length " + std::to_string(dim) + " does not match the model's " +
                              std::to_string(model.feature_dim));
    }
}

}  // namespace

const char *feature_name(FeatureKind kind) { return kind == FeatureKind::kSpectral ? "spectral" : "gbs-sample"; }

FeatureKind parse_feature(const std::string &name) {
    if (name == "spectral") return FeatureKind::kSpectral;
    if (name == "gbs-sample") return FeatureKind::kGbsSample;
    throw InvalidArgument("unknown feature kind '" + name + "'");
}

FeatureVector spectral_feature(const Graph &g1, const Graph &g2) {
    FeatureVector f;
    f.values = concat_padded(laplacian_spectrum(g1).values, laplacian_spectrum(g2).values);
    f.kind = FeatureKind::kSpectral;
    f.parent_n = g1.size();
    f.child_n = g2.size();
    return f;
}

FeatureVector gbs_feature(const PhotonPattern &s1, const PhotonPattern &s2) {
    FeatureVector f;
    f.values = concat_padded(s1, s2);
    f.kind = FeatureKind::kGbsSample;
    f.parent_n = static_cast<int>(s1.size());
    f.child_n = static_cast<int>(s2.size());
    return f;
}

double LinearSvmModel::decision(const std::vector<double> &x) const {
    check_model_input(*this, x.size());
    double s = bias;
    for (size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i];
    return s;
}

int LinearSvmModel::predict(const std::vector<double> &x) const { return sign_label(decision(x)); }

nlohmann::json LinearSvmModel::to_json() const {
    return {{"kind", feature_name(kind)},
            {"weights", weights},
            {"bias", bias},
            {"C", C},
            {"feature_dim", feature_dim},
            {"n_parent", n_parent},
            {"n_child", n_child},
            {"encoding_digest", encoding_digest},
            {"training_seed", training_seed}};
}

LinearSvmModel LinearSvmModel::from_json(const nlohmann::json &j) {
    LinearSvmModel m;
    m.kind = parse_feature(j.at("kind").get<std::string>());
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.C = j.at("C").get<double>();
    m.feature_dim = j.at("feature_dim").get<int>();
    m.n_parent = j.value("n_parent", 0);
    m.n_child = j.value("n_child", 0);
    m.encoding_digest = j.value("encoding_digest", std::string());
    m.training_seed = j.value("training_seed", uint64_t{0});
    if (static_cast<int>(m.weights.size()) != m.feature_dim) throw InvalidArgument("weights length != feature_dim");
    return m;
}

LinearSvmModel train_linear_svm(const std::vector<std::vector<double>> &x, const std::vector<int> &y,
                                const LinearSvmOptions &options, LinearSvmReport *report) {
    if (x.empty() || x.size() != y.size()) throw InvalidDataset("training set is empty or mislabeled");
    if (!(options.C > 0)) throw InvalidArgument("C must be positive");
    const size_t n = x.size(), d = x[0].size();
    bool pos = false, neg = false;
    for (size_t i = 0; i < n; ++i) {
        if (x[i].size() != d) throw InvalidDataset("inconsistent feature lengths");
        if (y[i] != 1 && y[i] != -1) throw InvalidArgument("labels must be -1 or +1");
        (y[i] > 0 ? pos : neg) = true;
    }
    if (!pos || !neg) throw InvalidDataset("training set needs both classes");

    // w[d] is the bias, paired with a constant feature of 1.
    std::vector<double> w(d + 1, 0.0), alpha(n, 0.0), qii(n);
    for (size_t i = 0; i < n; ++i) qii[i] = std::inner_product(x[i].begin(), x[i].end(), x[i].begin(), 1.0);
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(options.seed);
    const double C = options.C;

    LinearSvmReport local;
    for (local.epochs = 1; local.epochs <= options.max_epochs; ++local.epochs) {
        for (size_t k = n - 1; k > 0; --k) std::swap(order[k], order[uniform_below(rng, k + 1)]);
        double pg_max = -INFINITY, pg_min = INFINITY;
        for (size_t i : order) {
            const double margin = std::inner_product(x[i].begin(), x[i].end(), w.begin(), w[d]);
            const double g = y[i] * margin - 1;
            double pg = g;
            if (alpha[i] == 0) pg = std::min(g, 0.0);
            else if (alpha[i] == C) pg = std::max(g, 0.0);
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);
            if (std::abs(pg) < 1e-12 || qii[i] == 0) continue;
            const double old = alpha[i];
            alpha[i] = std::clamp(old - g / qii[i], 0.0, C);
            const double step = (alpha[i] - old) * y[i];
            for (size_t t = 0; t < d; ++t) w[t] += step * x[i][t];
            w[d] += step;
        }
        if (options.record_objective) {
            double ww = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
            local.objective.push_back(0.5 * ww - std::accumulate(alpha.begin(), alpha.end(), 0.0));
        }
        if (pg_max - pg_min < options.tolerance) {
            local.converged = true;
            break;
        }
    }
    local.epochs = std::min(local.epochs, options.max_epochs);

    LinearSvmModel model;
    model.weights.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
    model.bias = w[d];
    model.C = C;
    model.feature_dim = static_cast<int>(d);
    model.training_seed = options.seed;
    if (report) *report = std::move(local);
    return model;
}

double linear_svm_objective(const LinearSvmModel &model, const std::vector<std::vector<double>> &x,
                            const std::vector<int> &y) {
    double reg = model.bias * model.bias;
    for (double v : model.weights) reg += v * v;
    double loss = 0;
    for (size_t i = 0; i < x.size(); ++i) loss += std::max(0.0, 1 - y[i] * model.decision(x[i]));
    return 0.5 * reg + model.C * loss;
}

double p_error(int n, double e) {
    if (n < 1 || n % 2 == 0) throw InvalidArgument("p_error needs an odd trial count");
    if (!(e >= 0 && e <= 1)) throw InvalidArgument("per-trial error must lie in [0, 1]");
    if (e == 0) return 0;
    if (e == 1) return 1;
    if (e == 0.5) return 0.5;  // the two tails are mirror images
    // Terms C(n,k) e^{n-k} (1-e)^k for k <= n/2, summed in log space.
    const double le = std::log(e), l1e = std::log1p(-e);
    std::vector<double> logs;
    for (int k = 0; k <= n / 2; ++k) {
        logs.push_back(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + (n - k) * le +
                       k * l1e);
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    double s = 0;
    for (double l : logs) s += std::exp(l - top);
    return std::min(1.0, std::exp(top) * s);
}

double k_of_delta(double delta) {
    if (!(delta > 0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 0.5)");
    const double rhs = 0.5724 + std::log(2 * delta);
    double k = 1.0;
    for (int it = 0; it < 100; ++it) {
        const double f = k * k + std::log(k) + rhs;
        const double step = f / (2 * k + 1 / k);
        k -= step;
        if (k <= 0) k = 1e-6;
        if (std::abs(step) < 1e-14) break;
    }
    return k;
}

int trials_needed(double epsilon, double delta) {
    if (!(epsilon > 0 && epsilon < 0.5)) throw InvalidArgument("epsilon must lie in (0, 0.5)");
    const double k = k_of_delta(delta);
    const double e = 0.5 - epsilon;
    const double bound = 2 * k * k * e * (1 - e) / (epsilon * epsilon);
    int n = static_cast<int>(std::ceil(bound - 1e-9));
    if (n < 1) n = 1;
    if (n % 2 == 0) ++n;
    return n;
}

int majority_vote(const std::vector<int> &labels) {
    if (labels.empty() || labels.size() % 2 == 0) throw InvalidArgument("majority vote needs an odd number of votes");
    long sum = 0;
    for (int l : labels) {
        if (l != 1 && l != -1) throw InvalidArgument("votes must be -1 or +1");
        sum += l;
    }
    return sum > 0 ? 1 : -1;
}

int majority_of_prefix(const std::vector<int> &votes, int trials) {
    if (trials < 1 || trials > static_cast<int>(votes.size())) throw InvalidArgument("prefix out of range");
    return majority_vote(std::vector<int>(votes.begin(), votes.begin() + trials));
}

Classification randomized_classical_classify(const Graph &g1, const Graph &g2, const LinearSvmModel &model,
                                             int n_trials, uint64_t seed) {
    if (g2.size() > g1.size()) throw InvalidArgument("child larger than parent");
    if (n_trials < 1 || n_trials % 2 == 0) throw InvalidArgument("trial count must be odd");
    Classification out;
    out.votes.resize(n_trials);
    for (int m = 0; m < n_trials; ++m) {
        Rng rng = derive_rng(seed, static_cast<uint64_t>(m));
        const int length = 1 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(std::max(1, g1.size()))));
        Graph g3 = random_lc_walk(g1, length, rng);
        out.votes[m] = model.predict(spectral_feature(g3, g2).values);
    }
    out.label = majority_vote(out.votes);
    return out;
}

Classification quantum_classify(const Graph &g1, const Graph &g2, const LinearSvmModel &model, int n_trials,
                                const GbsConfig &config, uint64_t seed) {
    if (n_trials < 1 || n_trials % 2 == 0) throw InvalidArgument("trial count must be odd");
    SamplerOptions so{config.cutoff};
    GbsSampler s1(encode_with_config(g1, config), so);
    GbsSampler s2(encode_with_config(g2, config), so);
    Classification out;
    out.votes.resize(n_trials);
    for (int m = 0; m < n_trials; ++m) {
        Rng rng = derive_rng(seed, static_cast<uint64_t>(m));
        PhotonPattern a = s1.draw(rng);
        PhotonPattern b = s2.draw(rng);
        out.votes[m] = model.predict(gbs_feature(a, b).values);
    }
    out.label = majority_vote(out.votes);
    return out;
}

TrainingSet spectral_training_set(const std::vector<LabeledPair> &pairs) {
    TrainingSet t;
    t.x.resize(pairs.size());
    t.y.resize(pairs.size());
    parallel_for(pairs.size(), [&](size_t i) {
        t.x[i] = spectral_feature(pairs[i].parent, pairs[i].child).values;
        t.y[i] = pairs[i].is_vertex_minor ? 1 : -1;
    });
    return t;
}

TrainingSet gbs_training_set(const std::vector<LabeledPair> &pairs, const GbsConfig &config, int samples_per_pair,
                             uint64_t seed) {
    if (samples_per_pair < 1) throw InvalidArgument("samples_per_pair must be positive");
    const size_t per = static_cast<size_t>(samples_per_pair);
    TrainingSet t;
    t.x.resize(pairs.size() * per);
    t.y.resize(pairs.size() * per);
    SamplerOptions so{config.cutoff};
    parallel_for(pairs.size(), [&](size_t i) {
        GbsSampler s1(encode_with_config(pairs[i].parent, config), so);
        GbsSampler s2(encode_with_config(pairs[i].child, config), so);
        const uint64_t pair_seed = derive_seed(seed, i);
        for (size_t s = 0; s < per; ++s) {
            Rng rng = derive_rng(pair_seed, s);
            PhotonPattern a = s1.draw(rng);
            PhotonPattern b = s2.draw(rng);
            t.x[i * per + s] = gbs_feature(a, b).values;
            t.y[i * per + s] = pairs[i].is_vertex_minor ? 1 : -1;
        }
    });
    return t;
}

void split_indices(size_t n, double test_fraction, uint64_t seed, std::vector<size_t> *train,
                   std::vector<size_t> *test) {
    if (!(test_fraction >= 0 && test_fraction <= 1)) throw InvalidArgument("test fraction must lie in [0, 1]");
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, 0x5011));
    for (size_t k = n; k > 1; --k) std::swap(order[k - 1], order[uniform_below(rng, k)]);
    const size_t n_test = static_cast<size_t>(std::llround(test_fraction * static_cast<double>(n)));
    test->assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    train->assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    std::sort(test->begin(), test->end());
    std::sort(train->begin(), train->end());
}

LinearSvmModel train_spectral_model(const std::vector<LabeledPair> &pairs, const LinearSvmOptions &options) {
    TrainingSet t = spectral_training_set(pairs);
    LinearSvmModel m = train_linear_svm(t.x, t.y, options);
    m.kind = FeatureKind::kSpectral;
    m.n_parent = pairs.front().parent.size();
    m.n_child = pairs.front().child.size();
    return m;
}

LinearSvmModel train_gbs_model(const std::vector<LabeledPair> &pairs, const GbsConfig &config,
                               int samples_per_pair, const LinearSvmOptions &options) {
    TrainingSet t = gbs_training_set(pairs, config, samples_per_pair, options.seed);
    LinearSvmModel m = train_linear_svm(t.x, t.y, options);
    m.kind = FeatureKind::kGbsSample;
    m.n_parent = pairs.front().parent.size();
    m.n_child = pairs.front().child.size();
    m.encoding_digest = json_digest(config.to_json());
    return m;
}

}  // namespace vmgbs
