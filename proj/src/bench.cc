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

#include "vmgbs/bench.h"

#include <sys/utsname.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "vmgbs/errors.h"
#include "vmgbs/parallel.h"

namespace vmgbs {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<std::pair<Graph, Graph>> as_graph_pairs(const std::vector<LabeledPair> &pairs) {
    std::vector<std::pair<Graph, Graph>> out;
    out.reserve(pairs.size());
    for (const auto &p : pairs) out.emplace_back(p.parent, p.child);
    return out;
}

std::vector<int> labels_of(const std::vector<LabeledPair> &pairs) {
    std::vector<int> y;
    y.reserve(pairs.size());
    for (const auto &p : pairs) y.push_back(p.is_vertex_minor ? 1 : -1);
    return y;
}

/// Up to k pairs alternating positive and negative, in dataset order.
std::vector<LabeledPair> balanced_subset(const std::vector<LabeledPair> &pairs, int k) {
    std::vector<LabeledPair> pos, neg, out;
    for (const auto &p : pairs) (p.is_vertex_minor ? pos : neg).push_back(p);
    size_t i = 0, j = 0;
    while (static_cast<int>(out.size()) < k && (i < pos.size() || j < neg.size())) {
        bool take_pos = (out.size() % 2 == 0) ? i < pos.size() : j >= neg.size();
        out.push_back(take_pos ? pos[i++] : neg[j++]);
    }
    return out;
}

template <typename Classify>
TrialCurve trial_curve(const std::vector<LabeledPair> &pairs, const std::vector<int> &trial_counts,
                       int repetitions, uint64_t seed, Classify &&classify) {
    if (pairs.empty()) throw InvalidArgument("trial curve needs at least one pair");
    if (trial_counts.empty()) throw InvalidArgument("trial curve needs at least one trial count");
    for (int n : trial_counts) {
        if (n < 1 || n % 2 == 0) throw InvalidArgument("trial counts must be odd and positive");
    }
    repetitions = std::max(1, repetitions);
    const int max_n = *std::max_element(trial_counts.begin(), trial_counts.end());
    const size_t jobs = pairs.size() * static_cast<size_t>(repetitions);
    std::vector<std::vector<int>> correct(jobs, std::vector<int>(trial_counts.size()));
    std::vector<double> single(jobs);
    parallel_for(jobs, [&](size_t job) {
        const auto &p = pairs[job / repetitions];
        const int truth = p.is_vertex_minor ? 1 : -1;
        Classification c = classify(p, max_n, derive_seed(seed, job));
        for (size_t t = 0; t < trial_counts.size(); ++t) {
            correct[job][t] = majority_of_prefix(c.votes, trial_counts[t]) == truth;
        }
        single[job] = static_cast<double>(std::count(c.votes.begin(), c.votes.end(), truth)) / max_n;
    });
    TrialCurve curve;
    curve.trials = trial_counts;
    curve.accuracy.assign(trial_counts.size(), 0.0);
    for (size_t job = 0; job < jobs; ++job) {
        for (size_t t = 0; t < trial_counts.size(); ++t) curve.accuracy[t] += correct[job][t];
    }
    for (double &a : curve.accuracy) a /= static_cast<double>(jobs);
    curve.single_shot_accuracy_per_pair.assign(pairs.size(), 0.0);
    for (size_t job = 0; job < jobs; ++job) curve.single_shot_accuracy_per_pair[job / repetitions] += single[job];
    for (double &a : curve.single_shot_accuracy_per_pair) a /= repetitions;
    return curve;
}


LossBudget uniform_loss(double loss_db) {
    if (!(loss_db >= 0)) throw InvalidArgument("loss in dB must be non-negative");
    return {std::pow(10.0, -loss_db / 10.0), 1.0, 0.0, 10e-6};
}

}  // namespace

void HardwareProfile::validate() const {
    if (!(rep_rate_hz > 0)) throw InvalidArgument("repetition rate must be positive");
    if (!(squeeze_db > 0)) throw InvalidArgument("squeezing must be positive");
    if (t_takagi_s < 0 || t_svm_s < 0) throw InvalidArgument("timings must be non-negative");
    loss.validate();
}

nlohmann::json HardwareProfile::to_json() const {
    return {{"rep_rate_hz", rep_rate_hz},
            {"squeeze_db", squeeze_db},
            {"eta_c", loss.eta_c},
            {"eta_d", loss.eta_d},
            {"loss_db_per_cm", loss.loss_db_per_cm},
            {"layer_length_m", loss.layer_length_m},
            {"t_takagi_s", t_takagi_s},
            {"t_svm_s", t_svm_s}};
}

double quantum_wallclock(const HardwareProfile &profile, int n_modes, int n_trials) {
    profile.validate();
    if (n_trials < 1) throw InvalidArgument("trial count must be positive");
    return profile.t_takagi_s + (n_trials - 1) / profile.rep_rate_hz + optical_latency(n_modes, profile.latency) +
           profile.t_svm_s;
}

ScalingModel scaling_model(int n, double n_c, double n_q) {
    if (n < 1) throw InvalidArgument("graph size must be positive");
    const double dn = n;
    return {dn * dn * dn * n_c, dn * dn * dn * dn * std::pow(2.0, dn / 2) * n_q, dn * dn + n_q};
}

void measure_microbenchmarks(HardwareProfile *profile, int n, uint64_t seed) {
    Rng rng(seed);
    Graph g = random_graph(n, 0.5, rng);
    if (g.edge_count() == 0) g.set_edge(0, 1, true);
    const Eigen::MatrixXd a = g.adjacency_matrix();
    constexpr int kReps = 200;
    volatile double sink = 0;
    profile->t_takagi_s = median_seconds(5, [&] {
                              for (int r = 0; r < kReps; ++r) sink = sink + encoding_params(a, profile->squeeze_db).c;
                          }) /
                          kReps;
    LinearSvmModel model;
    model.feature_dim = 2 * n;
    model.weights.assign(2 * n, 0.5);
    std::vector<double> x(2 * n, 1.0);
    constexpr int kSvmReps = 10000;
    profile->t_svm_s = median_seconds(5, [&] {
                           for (int r = 0; r < kSvmReps; ++r) sink = sink + model.predict(x);
                       }) /
                       kSvmReps;
}

int default_child_size(int n_parent) { return std::max(6, n_parent - 1); }

Split split_dataset(const Dataset &ds, double test_fraction, uint64_t seed) {
    std::vector<size_t> train, test;
    split_indices(ds.pairs.size(), test_fraction, seed, &train, &test);
    Split s;
    for (size_t i : train) s.train.push_back(ds.pairs[i]);
    for (size_t i : test) s.test.push_back(ds.pairs[i]);
    return s;
}

double kernel_test_error(const Split &split, const KernelOptions &kernel, double C) {
    const auto train = as_graph_pairs(split.train);
    const auto test = as_graph_pairs(split.test);
    Eigen::MatrixXd gram = pair_gram(train, train, kernel);
    KernelSvmModel model = train_kernel_svm(gram, labels_of(split.train), C);
    Eigen::MatrixXd cross = pair_gram(test, train, kernel);
    int wrong = 0;
    for (size_t i = 0; i < split.test.size(); ++i) {
        Eigen::VectorXd row = cross.row(static_cast<Eigen::Index>(i)).transpose();
        wrong += predict_kernel(model, row) != (split.test[i].is_vertex_minor ? 1 : -1);
    }
    return static_cast<double>(wrong) / static_cast<double>(split.test.size());
}

double spectral_test_error(const Split &split, const LinearSvmOptions &options) {
    LinearSvmModel model = train_spectral_model(split.train, options);
    TrainingSet t = spectral_training_set(split.test);
    int wrong = 0;
    for (size_t i = 0; i < t.x.size(); ++i) wrong += model.predict(t.x[i]) != t.y[i];
    return static_cast<double>(wrong) / static_cast<double>(t.x.size());
}

std::vector<BaselineRow> baseline_comparison(const BaselineConfig &config) {
    std::vector<BaselineRow> rows;
    for (int n : config.n_parents) {
        const int child = default_child_size(n);
        for (uint64_t seed : config.seeds) {
            Dataset ds = generate_dataset(n, child, config.positives, config.negatives, seed);
            Split split = split_dataset(ds, config.test_fraction, seed);
            LinearSvmOptions lo;
            lo.C = config.C;
            lo.seed = seed;
            rows.push_back({n, child, seed, "spectral", spectral_test_error(split, lo)});
            for (KernelKind kind : {KernelKind::kGraphlet, KernelKind::kShortestPath, KernelKind::kWl}) {
                KernelOptions ko{kind, config.wl_iterations, config.combine};
                rows.push_back({n, child, seed, kernel_name(kind), kernel_test_error(split, ko, config.C)});
            }
        }
    }
    return rows;
}

TrialCurve classical_trial_curve(const std::vector<LabeledPair> &pairs, const LinearSvmModel &model,
                                 const std::vector<int> &trial_counts, int repetitions, uint64_t seed) {
    return trial_curve(pairs, trial_counts, repetitions, seed, [&](const LabeledPair &p, int n, uint64_t s) {
        return randomized_classical_classify(p.parent, p.child, model, n, s);
    });
}

TrialCurve quantum_trial_curve(const std::vector<LabeledPair> &pairs, const LinearSvmModel &model,
                               const GbsConfig &config, const std::vector<int> &trial_counts, int repetitions,
                               uint64_t seed) {
    return trial_curve(pairs, trial_counts, repetitions, seed, [&](const LabeledPair &p, int n, uint64_t s) {
        return quantum_classify(p.parent, p.child, model, n, config, s);
    });
}

std::vector<int> trial_grid(int cap) {
    if (cap < 1) throw InvalidArgument("trial cap must be positive");
    std::vector<int> grid;
    for (int n = 1; n <= cap; n = 2 * n + 1) grid.push_back(n);
    if (grid.back() != cap && cap % 2 == 1) grid.push_back(cap);
    return grid;
}

int first_reaching(const TrialCurve &curve, double target) {
    for (size_t i = 0; i < curve.trials.size(); ++i) {
        if (curve.accuracy[i] >= target) return curve.trials[i];
    }
    return -1;
}

std::vector<SweepRow> sweep(const SweepConfig &config) {
    if (config.squeeze_db.empty() || config.loss_db.empty()) throw InvalidArgument("sweep grid is empty");
    if (!(config.target > 0 && config.target <= 1)) throw InvalidArgument("target accuracy must be in (0, 1]");
    Dataset ds = generate_dataset(config.n_parent, config.n_child, config.positives, config.negatives, config.seed);
    Split split = split_dataset(ds, 0.25, config.seed);
    const auto eval = balanced_subset(split.test, config.eval_pairs);
    const auto grid = trial_grid(config.trial_cap);
    std::vector<SweepRow> rows;
    uint64_t cell = 0;
    for (double sq : config.squeeze_db) {
        for (double loss : config.loss_db) {
            GbsConfig cfg;
            cfg.squeeze_db = sq;
            cfg.loss = uniform_loss(loss);
            cfg.cutoff = config.cutoff;
            LinearSvmOptions lo;
            lo.C = config.C;
            lo.seed = derive_seed(config.seed, cell);
            LinearSvmModel model = train_gbs_model(split.train, cfg, config.samples_per_pair, lo);
            TrialCurve curve =
                quantum_trial_curve(eval, model, cfg, grid, config.repetitions, derive_seed(config.seed, 1000 + cell));
            SweepRow row;
            row.squeeze_db = sq;
            row.loss_db = loss;
            int n = first_reaching(curve, config.target);
            row.saturated = n < 0;
            row.n_required = n < 0 ? grid.back() : n;
            row.accuracy_at_cap = curve.accuracy.back();
            row.single_shot_accuracy = curve.accuracy.front();
            rows.push_back(row);
            ++cell;
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out) {
    out << "squeeze_db,loss_db,n_required,accuracy_at_cap,saturated,single_shot_accuracy\n";
    for (const auto &r : rows) {
        out << fmt(r.squeeze_db) << ',' << fmt(r.loss_db) << ',' << r.n_required << ',' << fmt(r.accuracy_at_cap)
            << ',' << (r.saturated ? 1 : 0) << ',' << fmt(r.single_shot_accuracy) << '\n';
    }
}

std::vector<RuntimeRow> runtime_report(const RuntimeConfig &config) {
    if (config.min_n < 6 || config.max_n > kMaxVertices || config.min_n > config.max_n) {
        throw InvalidArgument("runtime sizes must satisfy 6 <= min <= max <= " + std::to_string(kMaxVertices));
    }
    const auto grid = trial_grid(config.trial_cap);
    std::vector<RuntimeRow> rows;
    for (int n = config.min_n; n <= config.max_n; ++n) {
        const uint64_t seed = derive_seed(config.seed, static_cast<uint64_t>(n));
        Dataset ds = generate_dataset(n, default_child_size(n), config.positives, config.negatives, seed);
        Split split = split_dataset(ds, 0.25, seed);
        const auto eval = balanced_subset(split.test, config.eval_pairs);
        LinearSvmOptions lo;
        lo.C = config.C;
        lo.seed = seed;
        LinearSvmModel spectral = train_spectral_model(split.train, lo);
        LinearSvmModel gbs = train_gbs_model(split.train, config.gbs, config.samples_per_pair, lo);

        RuntimeRow row;
        row.n = n;
        TrialCurve cc = classical_trial_curve(eval, spectral, grid, config.repetitions, derive_seed(seed, 1));
        TrialCurve qc = quantum_trial_curve(eval, gbs, config.gbs, grid, config.repetitions, derive_seed(seed, 2));
        int nc = first_reaching(cc, config.target), nq = first_reaching(qc, config.target);
        row.n_c_saturated = nc < 0;
        row.n_q_saturated = nq < 0;
        row.n_c = nc < 0 ? grid.back() : nc;
        row.n_q = nq < 0 ? grid.back() : nq;

        // Timings run on one worker so they do not depend on the pool size.
        const size_t saved = worker_count();
        set_worker_count(1);
        const auto &p = eval.front();
        row.t_c_s = median_seconds(config.timing_runs, [&] {
            randomized_classical_classify(p.parent, p.child, spectral, row.n_c, derive_seed(seed, 3));
        });
        row.t_cgbs_s = median_seconds(config.timing_runs, [&] {
            quantum_classify(p.parent, p.child, gbs, row.n_q, config.gbs, derive_seed(seed, 4));
        });
        set_worker_count(saved);
        HardwareProfile profile = config.profile;
        profile.squeeze_db = config.gbs.squeeze_db;
        profile.loss = config.gbs.loss;
        measure_microbenchmarks(&profile, n, seed);
        row.t_qgbs_s = quantum_wallclock(profile, n, row.n_q);
        row.speedup = row.t_c_s / row.t_qgbs_s;
        row.model = scaling_model(n, row.n_c, row.n_q);
        rows.push_back(row);
    }
    return rows;
}

void write_runtime_csv(const std::vector<RuntimeRow> &rows, std::ostream &out) {
    out << "n,n_c,n_q,n_c_saturated,n_q_saturated,t_c_s,t_qgbs_s,t_cgbs_s,speedup,classical_ops,simulated_gbs_ops,"
           "device_ops\n";
    for (const auto &r : rows) {
        out << r.n << ',' << r.n_c << ',' << r.n_q << ',' << (r.n_c_saturated ? 1 : 0) << ','
            << (r.n_q_saturated ? 1 : 0) << ',' << fmt(r.t_c_s) << ',' << fmt(r.t_qgbs_s) << ',' << fmt(r.t_cgbs_s)
            << ',' << fmt(r.speedup) << ',' << fmt(r.model.classical) << ',' << fmt(r.model.simulated_gbs) << ','
            << fmt(r.model.device) << '\n';
    }
}

std::string host_description() {
    std::ostringstream os;
    struct utsname u {};
    if (uname(&u) == 0) os << u.sysname << ' ' << u.release << ' ' << u.machine;
    os << "; threads=" << std::thread::hardware_concurrency();
#if defined(__clang__)
    os << "; clang " << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
    os << "; gcc " << __GNUC__ << '.' << __GNUC_MINOR__;
#endif
    return os.str();
}

}  // namespace vmgbs
