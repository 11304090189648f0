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

#include "doctest.h"
#include "oracles.h"
#include "vmgbs/errors.h"
#include "vmgbs/pipeline.h"

using namespace vmgbs;

namespace {

// Projected gradient on the box-constrained dual of the bias-augmented SVM.
double reference_primal(const std::vector<std::vector<double>> &x, const std::vector<int> &y, double C) {
    const size_t n = x.size(), d = x[0].size();
    Eigen::MatrixXd q(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double dot = 1;
            for (size_t t = 0; t < d; ++t) dot += x[i][t] * x[j][t];
            q(i, j) = y[i] * y[j] * dot;
        }
    const double lipschitz = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q).eigenvalues().maxCoeff();
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (int it = 0; it < 200000; ++it) {
        Eigen::VectorXd g = q * a - Eigen::VectorXd::Ones(n);
        a = (a - g / lipschitz).cwiseMax(0.0).cwiseMin(C);
    }
    std::vector<double> w(d + 1, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t t = 0; t < d; ++t) w[t] += a(i) * y[i] * x[i][t];
        w[d] += a(i) * y[i];
    }
    double reg = 0, loss = 0;
    for (double v : w) reg += v * v;
    for (size_t i = 0; i < n; ++i) {
        double m = w[d];
        for (size_t t = 0; t < d; ++t) m += w[t] * x[i][t];
        loss += std::max(0.0, 1 - y[i] * m);
    }
    return 0.5 * reg + C * loss;
}

TrainingSet noisy_blobs(int n, Rng &rng) {
    TrainingSet t;
    for (int i = 0; i < n; ++i) {
        int label = i % 2 ? 1 : -1;
        t.x.push_back({0.8 * label + 2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1, uniform01(rng)});
        t.y.push_back(label);
    }
    return t;
}

}  // namespace

TEST_CASE("spectral features") {
    auto f = spectral_feature(Graph::complete(3), Graph::complete(2));
    REQUIRE(f.values.size() == 6);
    std::vector<double> expected{0, 3, 3, 0, 2, 0};
    for (size_t i = 0; i < 6; ++i) CHECK(std::abs(f.values[i] - expected[i]) < 1e-12);
    CHECK(f.parent_n == 3);
    CHECK(f.child_n == 2);
    CHECK(spectral_feature(Graph::path(4), Graph::cycle(4)).values.size() == 8);

    Rng rng(3);
    Graph a = random_graph(7, 0.5, rng), b = random_graph(6, 0.5, rng);
    auto x = spectral_feature(a, b).values, y = spectral_feature(random_relabel(a, rng), random_relabel(b, rng)).values;
    for (size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-9);
}

TEST_CASE("GBS features") {
    auto f = gbs_feature({1, 0, 2}, {0, 1});
    CHECK(f.values == std::vector<double>{1, 0, 2, 0, 1, 0});
    CHECK(gbs_feature({0, 0}, {0, 0}).values == std::vector<double>(4, 0.0));
    CHECK(gbs_feature({0}, {1, 2, 3, 4}).values.size() == 8);
}

TEST_CASE("linear SVM on separable 1-D data") {
    auto m = train_linear_svm({{-1.0}, {1.0}}, {-1, 1});
    CHECK(m.predict({-1.0}) == -1);
    CHECK(m.predict({1.0}) == 1);
    CHECK(m.weights[0] > 0);
    CHECK_THROWS_AS(train_linear_svm({}, {}), InvalidDataset);
    CHECK_THROWS_AS(train_linear_svm({{1.0}, {2.0}}, {1, 1}), InvalidDataset);
    CHECK_THROWS_AS(m.predict({1.0, 2.0}), InvalidArgument);
}

TEST_CASE("linear SVM objective descends and matches a reference solve") {
    Rng rng(4);
    TrainingSet t = noisy_blobs(60, rng);
    LinearSvmOptions opts;
    opts.record_objective = true;
    opts.seed = 11;
    LinearSvmReport report;
    auto m = train_linear_svm(t.x, t.y, opts, &report);
    CHECK(report.converged);
    for (size_t e = 1; e < report.objective.size(); ++e) CHECK(report.objective[e] <= report.objective[e - 1] + 1e-9);
    double ours = linear_svm_objective(m, t.x, t.y);
    double ref = reference_primal(t.x, t.y, opts.C);
    CHECK(std::abs(ours - ref) <= 0.01 * ref);

    auto again = train_linear_svm(t.x, t.y, opts);
    CHECK(again.weights == m.weights);
    CHECK(again.bias == m.bias);

    auto back = LinearSvmModel::from_json(nlohmann::json::parse(m.to_json().dump()));
    CHECK(back.weights == m.weights);
    CHECK(back.feature_dim == 3);
    CHECK(back.training_seed == 11);
}

TEST_CASE("p_error") {
    CHECK(p_error(1, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(std::abs(p_error(3, 0.1) - 0.028) < 1e-15);
    for (int n : {1, 3, 5, 101, 1001}) CHECK(p_error(n, 0.5) == 0.5);
    for (double e : {0.05, 0.2, 0.45, 0.499})
        for (int n = 1; n < 300; n += 2) CHECK(p_error(n + 2, e) < p_error(n, e));
    CHECK_THROWS_AS(p_error(2, 0.1), InvalidArgument);
    CHECK_THROWS_AS(p_error(3, 1.5), InvalidArgument);
    // Agreement with a direct binomial sum.
    for (int n : {7, 21, 41}) {
        double direct = 0;
        for (int k = 0; k <= n / 2; ++k) direct += oracle::binomial_pmf(n, k, 1 - 0.3);
        CHECK(p_error(n, 0.3) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("majority vote error matches p_error for i.i.d. trials") {
    Rng rng(99);
    const int reps = 10000;
    for (auto [n, e] : {std::pair{5, 0.3}, std::pair{11, 0.4}, std::pair{21, 0.45}}) {
        int wrong = 0;
        for (int r = 0; r < reps; ++r) {
            std::vector<int> votes(n);
            for (int &v : votes) v = uniform01(rng) < e ? -1 : 1;
            wrong += majority_vote(votes) == -1;
        }
        const double p = p_error(n, e);
        const double sigma = std::sqrt(p * (1 - p) / reps);
        CHECK(std::abs(wrong / double(reps) - p) < 3 * sigma);
    }
}

TEST_CASE("trial calculus") {
    CHECK(std::abs(k_of_delta(0.01) - 1.6796) < 1e-4);
    int n = trials_needed(0.1, 0.01);
    CHECK(n % 2 == 1);
    CHECK(std::abs(n - 141) <= 6);
    CHECK(trials_needed(0.4999, 0.01) == 1);
    for (double eps = 0.01; eps <= 0.05 + 1e-12; eps += 0.005) {
        int t = trials_needed(eps, 0.01);
        CHECK(t % 2 == 1);
        CHECK(std::abs(t - 1.41 / (eps * eps)) <= 0.1 * 1.41 / (eps * eps));
        CHECK(p_error(t, 0.5 - eps) <= 0.01 * 1.05);
        double ratio = double(trials_needed(eps / 2, 0.01)) / t;
        CHECK(ratio >= 3.6);
        CHECK(ratio <= 4.4);
    }
    CHECK_THROWS_AS(trials_needed(0.0, 0.01), InvalidArgument);
    CHECK_THROWS_AS(trials_needed(0.1, 0.5), InvalidArgument);
}

TEST_CASE("majority vote") {
    CHECK(majority_vote({1, 1, -1}) == 1);
    CHECK(majority_vote({-1}) == -1);
    std::vector<int> v(47, -1);
    std::fill(v.begin(), v.begin() + 24, 1);
    CHECK(majority_vote(v) == 1);
    CHECK_THROWS_AS(majority_vote({1, -1}), InvalidArgument);
    CHECK_THROWS_AS(majority_vote({}), InvalidArgument);
    CHECK(majority_of_prefix({1, -1, -1, 1, 1}, 3) == -1);
}

TEST_CASE("split indices") {
    std::vector<size_t> train, test, train2, test2;
    split_indices(100, 0.25, 5, &train, &test);
    split_indices(100, 0.25, 5, &train2, &test2);
    CHECK(test.size() == 25);
    CHECK(train.size() == 75);
    CHECK(test == test2);
    std::vector<size_t> all(train);
    all.insert(all.end(), test.begin(), test.end());
    std::sort(all.begin(), all.end());
    for (size_t i = 0; i < 100; ++i) CHECK(all[i] == i);
}

TEST_CASE("spectral pipeline beats chance on held-out N=7 pairs") {
    Dataset ds = generate_dataset(7, 6, 150, 150, 17);
    std::vector<size_t> train, test;
    split_indices(ds.pairs.size(), 0.25, 17, &train, &test);
    std::vector<LabeledPair> tr, te;
    for (size_t i : train) tr.push_back(ds.pairs[i]);
    for (size_t i : test) te.push_back(ds.pairs[i]);
    auto model = train_spectral_model(tr, {});
    CHECK(model.n_parent == 7);
    CHECK(model.feature_dim == 14);
    int correct = 0;
    for (const auto &p : te) correct += model.predict(spectral_feature(p.parent, p.child).values) == (p.is_vertex_minor ? 1 : -1);
    CHECK(correct / double(te.size()) > 0.5);
}

TEST_CASE("randomized classical classifier") {
    Dataset ds = generate_dataset(6, 6, 20, 20, 3);
    auto model = train_spectral_model(ds.pairs, {});
    const auto &p = ds.pairs[0];
    auto one = randomized_classical_classify(p.parent, p.child, model, 1, 42);
    Rng rng = derive_rng(42, 0);
    int length = 1 + static_cast<int>(uniform_below(rng, 6));
    Graph g3 = random_lc_walk(p.parent, length, rng);
    CHECK(are_lc_equivalent(g3, p.parent));
    CHECK(one.label == model.predict(spectral_feature(g3, p.child).values));

    auto many = randomized_classical_classify(p.parent, p.child, model, 47, 42);
    auto more = randomized_classical_classify(p.parent, p.child, model, 101, 42);
    CHECK(std::equal(many.votes.begin(), many.votes.end(), more.votes.begin()));
    CHECK(many.label == majority_of_prefix(more.votes, 47));
    CHECK_THROWS_AS(randomized_classical_classify(p.child, Graph::complete(7), model, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(randomized_classical_classify(p.parent, p.child, model, 2, 1), InvalidArgument);
}

TEST_CASE("randomized classical votes barely depend on which LC-equivalent parent is used") {
    Dataset ds = generate_dataset(6, 6, 30, 30, 8);
    auto model = train_spectral_model(ds.pairs, {});
    Rng rng(2);
    double total_gap = 0;
    const int pairs = 8;
    for (int i = 0; i < pairs; ++i) {
        const auto &p = ds.pairs[static_cast<size_t>(i) * 7];
        Graph twin = random_lc_walk(p.parent, 5, rng);
        auto a = randomized_classical_classify(p.parent, p.child, model, 801, 100 + i);
        auto b = randomized_classical_classify(twin, p.child, model, 801, 200 + i);
        double fa = std::count(a.votes.begin(), a.votes.end(), 1) / 801.0;
        double fb = std::count(b.votes.begin(), b.votes.end(), 1) / 801.0;
        total_gap += std::abs(fa - fb);
    }
    CHECK(total_gap / pairs < 0.1);
}

TEST_CASE("quantum classifier") {
    GbsConfig cfg;
    LinearSvmModel zero;
    zero.feature_dim = 8;
    zero.weights.assign(8, 0.5);
    zero.bias = -0.25;
    auto c = quantum_classify(Graph(4), Graph(4), zero, 11, cfg, 1);
    for (int v : c.votes) CHECK(v == -1);

    Dataset ds = generate_dataset(6, 6, 15, 15, 4);
    auto model = train_gbs_model(ds.pairs, cfg, 4, {});
    CHECK(model.kind == FeatureKind::kGbsSample);
    CHECK(!model.encoding_digest.empty());
    const auto &p = ds.pairs[3];
    auto one = quantum_classify(p.parent, p.child, model, 1, cfg, 9);
    CHECK(one.votes.size() == 1);
    CHECK(one.label == one.votes[0]);
    auto many = quantum_classify(p.parent, p.child, model, 31, cfg, 9);
    CHECK(many.votes[0] == one.votes[0]);

    TrainingSet t = gbs_training_set({p}, cfg, 5, 3);
    CHECK(t.x.size() == 5);
    CHECK(t.x[0].size() == 12);
}
