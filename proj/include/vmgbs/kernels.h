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

// Classical graph-similarity kernels and a dual SVM over precomputed Gram matrices.

#ifndef VMGBS_KERNELS_H
#define VMGBS_KERNELS_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "vmgbs/graph.h"

namespace vmgbs {

/// The 29 connected graphs on 3, 4 and 5 vertices, in canonical form, ordered
/// by size, then edge count, then canonical code.
const std::vector<Graph> &graphlet_catalog();

/// Exact counts of connected induced subgraphs matching each catalog member.
Eigen::VectorXd graphlet_counts(const Graph &g);
/// Counts divided by their total; zero when there are no connected graphlets.
/// Throws InvalidArgument for graphs with fewer than 5 vertices.
Eigen::VectorXd graphlet_feature(const Graph &g);
double graphlet_kernel(const Graph &a, const Graph &b);

/// Sum of finite shortest-path lengths over ordered vertex pairs (Floyd-Warshall).
double shortest_path_total(const Graph &g);
/// Linear base kernel summed over all pairs of paths; factorizes into the two totals.
double shortest_path_kernel(const Graph &a, const Graph &b);

/// Weisfeiler-Lehman subtree kernel, summed over rounds 0..iterations.
double wl_kernel(const Graph &a, const Graph &b, int iterations = 3);

enum class KernelKind { kGraphlet, kShortestPath, kWl };
const char *kernel_name(KernelKind kind);
KernelKind parse_kernel(const std::string &name);

/// How two per-graph kernels combine into a kernel on (parent, child) pairs.
enum class PairCombine {
    kSum,      // k(G1,H1) + k(G2,H2): the linear kernel on concatenated feature maps
    kProduct,  // k(G1,H1) * k(G2,H2): the tensor-product pair kernel
};

struct KernelOptions {
    KernelKind kind = KernelKind::kWl;
    int wl_iterations = 3;
    PairCombine combine = PairCombine::kSum;

    nlohmann::json to_json() const;
};

/// Sparse explicit feature map; every kernel here is a dot product of these.
using SparseFeatures = std::vector<std::pair<uint32_t, double>>;
double sparse_dot(const SparseFeatures &a, const SparseFeatures &b);

/// Computes feature maps for one kernel. For WL, the label dictionary is shared
/// by every graph this object has seen, so all maps live in one space.
class KernelFeaturizer {
   public:
    explicit KernelFeaturizer(KernelKind kind, int wl_iterations = 3);
    SparseFeatures operator()(const Graph &g);

   private:
    KernelKind kind_;
    int iterations_;
    std::unordered_map<std::string, uint32_t> dictionary_;
};

/// Gram matrix over (parent, child) pairs: rows index `a`, columns index `b`.
Eigen::MatrixXd pair_gram(const std::vector<std::pair<Graph, Graph>> &a,
                          const std::vector<std::pair<Graph, Graph>> &b, const KernelOptions &options);

/// Throws InvalidKernel unless k is symmetric with eigenvalues >= -1e-8 (relative).
void check_gram(const Eigen::MatrixXd &k);

void write_gram_csv(const Eigen::MatrixXd &k, const KernelOptions &options, std::ostream &out);
Eigen::MatrixXd read_gram_csv(std::istream &in, KernelOptions *options = nullptr);

struct KernelSvmModel {
    std::vector<double> alphas;  // one per training example, 0 <= alpha <= C
    std::vector<int> labels;     // training labels in {-1, +1}
    double bias = 0;
    double C = 0;
    std::string kind;

    std::vector<size_t> support_indices() const;
    nlohmann::json to_json() const;
    static KernelSvmModel from_json(const nlohmann::json &j);
};

struct SmoOptions {
    double tolerance = 1e-3;
    size_t max_iterations = 100'000;
    bool record_objective = false;
};

struct SmoReport {
    size_t iterations = 0;
    bool converged = false;
    double kkt_gap = 0;
    std::vector<double> objective;  // dual objective after each iteration, when recorded
};

/// C-SVM dual solved by SMO with second-order working-set selection.
KernelSvmModel train_kernel_svm(const Eigen::MatrixXd &gram, const std::vector<int> &labels, double C,
                                const SmoOptions &options = {}, SmoReport *report = nullptr);

/// sum_i alpha_i y_i K(x_i, x) + b, where row holds K(x_i, x) for every training example.
double kernel_decision(const KernelSvmModel &model, const Eigen::VectorXd &row);
int predict_kernel(const KernelSvmModel &model, const Eigen::VectorXd &row);

}  // namespace vmgbs

#endif  // VMGBS_KERNELS_H
