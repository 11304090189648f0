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

#include "vmgbs/kernels.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "vmgbs/errors.h"
#include "vmgbs/parallel.h"

namespace vmgbs {

namespace {

bool connected(const Graph &g) {
    const int n = g.size();
    if (n == 0) return true;
    VertexMask seen = bit(0), frontier = bit(0);
    while (frontier) {
        VertexMask next = 0;
        for (VertexMask f = frontier; f; f &= f - 1) next |= g.neighbors(std::countr_zero(f));
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == all_vertices(n);
}

// Graphlet lookup: for each size k and each induced edge code, the catalog
// index, or -1 when the induced graph is disconnected.
struct GraphletTables {
    std::vector<Graph> catalog;
    std::array<std::vector<int>, 6> by_code;

    GraphletTables() {
        for (int k = 3; k <= 5; ++k) {
            const int pairs = k * (k - 1) / 2;
            std::map<std::pair<int, Graph>, int> found;
            std::vector<Graph> canon(size_t{1} << pairs);
            for (uint32_t code = 0; code < (1u << pairs); ++code) {
                Graph g(k);
                int b = 0;
                for (int u = 0; u < k; ++u)
                    for (int v = u + 1; v < k; ++v, ++b)
                        if (code >> b & 1) g.set_edge(u, v, true);
                canon[code] = canonical_form(g);
                if (connected(g)) found.emplace(std::make_pair(g.edge_count(), canon[code]), 0);
            }
            const int base = static_cast<int>(catalog.size());
            int next = base;
            for (auto &[key, index] : found) {
                index = next++;
                catalog.push_back(key.second);
            }
            by_code[k].assign(size_t{1} << pairs, -1);
            for (uint32_t code = 0; code < (1u << pairs); ++code) {
                auto it = found.find({canon[code].edge_count(), canon[code]});
                if (it != found.end()) by_code[k][code] = it->second;
            }
        }
    }
};

const GraphletTables &tables() {
    static const GraphletTables t;
    return t;
}

void census(const Graph &g, int k, int start, std::vector<int> &chosen, Eigen::VectorXd &counts) {
    if (static_cast<int>(chosen.size()) == k) {
        uint32_t code = 0;
        int b = 0;
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v, ++b)
                if (g.has_edge(chosen[u], chosen[v])) code |= 1u << b;
        int index = tables().by_code[k][code];
        if (index >= 0) counts(index) += 1;
        return;
    }
    for (int v = start; v < g.size(); ++v) {
        chosen.push_back(v);
        census(g, k, v + 1, chosen, counts);
        chosen.pop_back();
    }
}

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

PairCombine parse_combine(const std::string &s) {
    if (s == "sum") return PairCombine::kSum;
    if (s == "product") return PairCombine::kProduct;
    throw InvalidArgument("unknown pair combination '" + s + "'");
}

}  // namespace

const std::vector<Graph> &graphlet_catalog() { return tables().catalog; }

Eigen::VectorXd graphlet_counts(const Graph &g) {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graphlet_catalog().size()));
    std::vector<int> chosen;
    for (int k = 3; k <= 5 && k <= g.size(); ++k) census(g, k, 0, chosen, counts);
    return counts;
}

Eigen::VectorXd graphlet_feature(const Graph &g) {
    if (g.size() < 5) throw InvalidArgument("graphlet features need at least 5 vertices");
    Eigen::VectorXd c = graphlet_counts(g);
    const double total = c.sum();
    return total > 0 ? Eigen::VectorXd(c / total) : c;
}

double graphlet_kernel(const Graph &a, const Graph &b) { return graphlet_feature(a).dot(graphlet_feature(b)); }

double shortest_path_total(const Graph &g) {
    const int n = g.size();
    constexpr int kInf = std::numeric_limits<int>::max() / 4;
    std::vector<int> d(static_cast<size_t>(n) * n, kInf);
    for (int u = 0; u < n; ++u) {
        d[u * n + u] = 0;
        for (int v = 0; v < n; ++v)
            if (g.has_edge(u, v)) d[u * n + v] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    double total = 0;
    for (int x : d)
        if (x < kInf) total += x;
    return total;
}

double shortest_path_kernel(const Graph &a, const Graph &b) { return shortest_path_total(a) * shortest_path_total(b); }

double wl_kernel(const Graph &a, const Graph &b, int iterations) {
    if (iterations < 0) throw InvalidArgument("WL iterations must be nonnegative");
    KernelFeaturizer f(KernelKind::kWl, iterations);
    return sparse_dot(f(a), f(b));
}

const char *kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::kGraphlet:
            return "graphlet";
        case KernelKind::kShortestPath:
            return "shortest-path";
        case KernelKind::kWl:
            return "wl";
    }
    return "unknown";
}

KernelKind parse_kernel(const std::string &name) {
    if (name == "graphlet") return KernelKind::kGraphlet;
    if (name == "shortest-path") return KernelKind::kShortestPath;
    if (name == "wl") return KernelKind::kWl;
    throw InvalidArgument("unknown kernel '" + name + "'");
}

nlohmann::json KernelOptions::to_json() const {
    return {{"kind", kernel_name(kind)},
            {"wl_iterations", wl_iterations},
            {"combine", combine == PairCombine::kSum ? "sum" : "product"}};
}

double sparse_dot(const SparseFeatures &a, const SparseFeatures &b) {
    double s = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (a[i].first > b[j].first) {
            ++j;
        } else {
            s += a[i++].second * b[j++].second;
        }
    }
    return s;
}

KernelFeaturizer::KernelFeaturizer(KernelKind kind, int wl_iterations) : kind_(kind), iterations_(wl_iterations) {
    if (wl_iterations < 0) throw InvalidArgument("WL iterations must be nonnegative");
}

SparseFeatures KernelFeaturizer::operator()(const Graph &g) {
    SparseFeatures out;
    switch (kind_) {
        case KernelKind::kGraphlet: {
            Eigen::VectorXd f = graphlet_feature(g);
            for (Eigen::Index i = 0; i < f.size(); ++i)
                if (f(i) != 0) out.emplace_back(static_cast<uint32_t>(i), f(i));
            return out;
        }
        case KernelKind::kShortestPath:
            out.emplace_back(0, shortest_path_total(g));
            return out;
        case KernelKind::kWl:
            break;
    }
    const int n = g.size();
    std::vector<uint32_t> label(n), next(n);
    std::map<uint32_t, double> histogram;
    auto intern = [&](const std::string &key) {
        auto [it, inserted] = dictionary_.emplace(key, static_cast<uint32_t>(dictionary_.size()));
        return it->second;
    };
    const uint32_t l0 = intern("0");
    for (int v = 0; v < n; ++v) label[v] = l0;
    for (int round = 0;; ++round) {
        for (int v = 0; v < n; ++v) histogram[label[v]] += 1;
        if (round == iterations_) break;
        for (int v = 0; v < n; ++v) {
            std::vector<uint32_t> nb;
            for (VertexMask m = g.neighbors(v); m; m &= m - 1) nb.push_back(label[std::countr_zero(m)]);
            std::sort(nb.begin(), nb.end());
            std::string key = std::to_string(round + 1) + ":" + std::to_string(label[v]) + "(";
            for (uint32_t x : nb) key += std::to_string(x) + ",";
            key += ")";
            next[v] = intern(key);
        }
        label.swap(next);
    }
    out.assign(histogram.begin(), histogram.end());
    return out;
}

Eigen::MatrixXd pair_gram(const std::vector<std::pair<Graph, Graph>> &a,
                          const std::vector<std::pair<Graph, Graph>> &b, const KernelOptions &options) {
    KernelFeaturizer parents(options.kind, options.wl_iterations);
    KernelFeaturizer children(options.kind, options.wl_iterations);
    std::vector<SparseFeatures> pa, ca, pb, cb;
    for (const auto &p : a) {
        pa.push_back(parents(p.first));
        ca.push_back(children(p.second));
    }
    for (const auto &p : b) {
        pb.push_back(parents(p.first));
        cb.push_back(children(p.second));
    }
    Eigen::MatrixXd k(a.size(), b.size());
    parallel_for(a.size(), [&](size_t i) {
        for (size_t j = 0; j < b.size(); ++j) {
            const double kp = sparse_dot(pa[i], pb[j]);
            const double kc = sparse_dot(ca[i], cb[j]);
            k(i, j) = options.combine == PairCombine::kSum ? kp + kc : kp * kc;
        }
    });
    return k;
}

void check_gram(const Eigen::MatrixXd &k) {
    if (k.rows() != k.cols()) throw InvalidKernel("Gram matrix must be square");
    if (k.size() == 0) return;
    const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw InvalidKernel("Gram matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8 * scale) {
        throw InvalidKernel("Gram matrix is not positive semidefinite (min eigenvalue " +
                            format_double(es.eigenvalues().minCoeff()) + ")");
    }
}

void write_gram_csv(const Eigen::MatrixXd &k, const KernelOptions &options, std::ostream &out) {
    out << "kind,wl_iterations,combine,row";
    for (Eigen::Index j = 0; j < k.cols(); ++j) out << ",k" << j;
    out << '\n';
    const std::string prefix = std::string(kernel_name(options.kind)) + "," + std::to_string(options.wl_iterations) +
                               "," + (options.combine == PairCombine::kSum ? "sum" : "product");
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        out << prefix << ',' << i;
        for (Eigen::Index j = 0; j < k.cols(); ++j) out << ',' << format_double(k(i, j));
        out << '\n';
    }
}

Eigen::MatrixXd read_gram_csv(std::istream &in, KernelOptions *options) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidKernel("empty Gram file");
    auto header = split_csv(line);
    if (header.size() < 4 || header[0] != "kind" || header[3] != "row") throw InvalidKernel("bad Gram header");
    const size_t cols = header.size() - 4;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != header.size()) throw InvalidKernel("ragged Gram row");
        if (options && rows.empty()) {
            options->kind = parse_kernel(cells[0]);
            options->wl_iterations = std::stoi(cells[1]);
            options->combine = parse_combine(cells[2]);
        }
        std::vector<double> row(cols);
        for (size_t j = 0; j < cols; ++j) row[j] = std::stod(cells[4 + j]);
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd k(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) k(i, j) = rows[i][j];
    return k;
}

std::vector<size_t> KernelSvmModel::support_indices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < alphas.size(); ++i)
        if (alphas[i] > 0) out.push_back(i);
    return out;
}

nlohmann::json KernelSvmModel::to_json() const {
    return {{"kind", kind},  {"C", C}, {"bias", bias}, {"alphas", alphas}, {"labels", labels},
            {"support_indices", support_indices()}};
}

KernelSvmModel KernelSvmModel::from_json(const nlohmann::json &j) {
    KernelSvmModel m;
    m.kind = j.at("kind").get<std::string>();
    m.C = j.at("C").get<double>();
    m.bias = j.at("bias").get<double>();
    m.alphas = j.at("alphas").get<std::vector<double>>();
    m.labels = j.at("labels").get<std::vector<int>>();
    if (m.alphas.size() != m.labels.size()) throw InvalidArgument("model alphas and labels differ in length");
    return m;
}

KernelSvmModel train_kernel_svm(const Eigen::MatrixXd &gram, const std::vector<int> &labels, double C,
                                const SmoOptions &options, SmoReport *report) {
    const Eigen::Index n = gram.rows();
    if (n == 0 || static_cast<size_t>(n) != labels.size()) throw InvalidDataset("Gram and labels disagree in size");
    if (!(C > 0)) throw InvalidArgument("C must be positive");
    bool pos = false, neg = false;
    for (int y : labels) {
        if (y != 1 && y != -1) throw InvalidArgument("labels must be -1 or +1");
        (y > 0 ? pos : neg) = true;
    }
    if (!pos || !neg) throw InvalidDataset("training set needs both classes");
    check_gram(gram);

    constexpr double kTau = 1e-12;
    std::vector<double> alpha(n, 0.0), grad(n, -1.0);
    std::vector<double> y(labels.begin(), labels.end());
    auto q = [&](Eigen::Index i, Eigen::Index j) { return y[i] * y[j] * gram(i, j); };
    auto up = [&](Eigen::Index t) { return (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0); };
    auto low = [&](Eigen::Index t) { return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < C); };
    auto objective = [&] {
        double s = 0;
        for (Eigen::Index i = 0; i < n; ++i) s += alpha[i] * (grad[i] - 1.0);
        return -0.5 * s;
    };

    SmoReport local;
    for (local.iterations = 0; local.iterations < options.max_iterations; ++local.iterations) {
        Eigen::Index i = -1;
        double gmax = -std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < n; ++t) {
            if (up(t) && -y[t] * grad[t] > gmax) {
                gmax = -y[t] * grad[t];
                i = t;
            }
        }
        Eigen::Index j = -1;
        double gmin = std::numeric_limits<double>::infinity(), best = std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < n; ++t) {
            if (!low(t)) continue;
            gmin = std::min(gmin, -y[t] * grad[t]);
            const double b = gmax + y[t] * grad[t];
            if (b > 0 && i >= 0) {
                double a = gram(i, i) + gram(t, t) - 2 * gram(i, t);
                if (a <= 0) a = kTau;
                if (-b * b / a < best) {
                    best = -b * b / a;
                    j = t;
                }
            }
        }
        local.kkt_gap = gmax - gmin;
        if (i < 0 || j < 0 || local.kkt_gap < options.tolerance) {
            local.converged = true;
            break;
        }

        const double ai = alpha[i], aj = alpha[j];
        if (y[i] != y[j]) {
            double quad = q(i, i) + q(j, j) + 2 * q(i, j);
            if (quad <= 0) quad = kTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0) {
                if (alpha[j] < 0) {
                    alpha[j] = 0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = -diff;
            }
            if (diff > 0) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = C - diff;
                }
            } else if (alpha[j] > C) {
                alpha[j] = C;
                alpha[i] = C + diff;
            }
        } else {
            double quad = q(i, i) + q(j, j) - 2 * q(i, j);
            if (quad <= 0) quad = kTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = sum - C;
                }
            } else if (alpha[j] < 0) {
                alpha[j] = 0;
                alpha[i] = sum;
            }
            if (sum > C) {
                if (alpha[j] > C) {
                    alpha[j] = C;
                    alpha[i] = sum - C;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = sum;
            }
        }
        const double di = alpha[i] - ai, dj = alpha[j] - aj;
        for (Eigen::Index t = 0; t < n; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
        if (options.record_objective) local.objective.push_back(objective());
    }

    // Threshold from free vectors, else the midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity(), lb = -ub, free_sum = 0;
    int free_count = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (alpha[t] >= C) {
            if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (alpha[t] <= 0) {
            if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++free_count;
            free_sum += yg;
        }
    }
    const double rho = free_count > 0 ? free_sum / free_count : 0.5 * (ub + lb);

    KernelSvmModel model;
    model.alphas = alpha;
    model.labels = labels;
    model.bias = -rho;
    model.C = C;
    if (report) *report = std::move(local);
    return model;
}

double kernel_decision(const KernelSvmModel &model, const Eigen::VectorXd &row) {
    if (static_cast<size_t>(row.size()) != model.alphas.size()) {
        throw InvalidArgument("kernel row length does not match the training set");
    }
    double s = model.bias;
    for (size_t i = 0; i < model.alphas.size(); ++i) {
        if (model.alphas[i] != 0) s += model.alphas[i] * model.labels[i] * row(static_cast<Eigen::Index>(i));
    }
    return s;
}

int predict_kernel(const KernelSvmModel &model, const Eigen::VectorXd &row) {
    return kernel_decision(model, row) >= 0 ? 1 : -1;
}

}  // namespace vmgbs
