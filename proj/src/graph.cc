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

#include "vmgbs/graph.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vmgbs/errors.h"

namespace vmgbs {

namespace {

void check_vertex(const Graph &g, int v, const char *op) {
    if (v < 0 || v >= g.size()) {
        throw InvalidArgument(std::string(op) + ": vertex " + std::to_string(v) + " out of range for graph of size " +
                              std::to_string(g.size()));
    }
}

}  // namespace

Graph::Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
        throw InvalidArgument("graph size " + std::to_string(n) + " outside [0, " + std::to_string(kMaxVertices) + "]");
    }
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InvalidArgument("edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range");
        }
        if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
        if (g.has_edge(u, v)) {
            throw InvalidArgument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        g.set_edge(u, v, true);
    }
    return g;
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.rows_[v] = static_cast<uint16_t>(all_vertices(n) & ~bit(v));
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1, true);
    return g;
}

Graph Graph::cycle(int n) {
    Graph g = path(n);
    if (n >= 3) g.set_edge(n - 1, 0, true);
    return g;
}

Graph Graph::star(int leaves) {
    Graph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.set_edge(0, v, true);
    return g;
}

Graph Graph::from_adjacency(const Eigen::MatrixXd &adjacency) {
    if (adjacency.rows() != adjacency.cols()) throw InvalidArgument("adjacency matrix must be square");
    Graph g(static_cast<int>(adjacency.rows()));
    for (int i = 0; i < g.n_; ++i) {
        if (adjacency(i, i) != 0.0) throw InvalidArgument("adjacency matrix has a nonzero diagonal");
        for (int j = i + 1; j < g.n_; ++j) {
            double a = adjacency(i, j);
            if (a != adjacency(j, i)) throw InvalidArgument("adjacency matrix is not symmetric");
            if (a != 0.0 && a != 1.0) throw InvalidArgument("adjacency matrix entries must be 0 or 1");
            if (a == 1.0) g.set_edge(i, j, true);
        }
    }
    return g;
}

void Graph::set_edge(int u, int v, bool present) {
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    if (present) {
        rows_[u] |= static_cast<uint16_t>(bit(v));
        rows_[v] |= static_cast<uint16_t>(bit(u));
    } else {
        rows_[u] &= static_cast<uint16_t>(~bit(v));
        rows_[v] &= static_cast<uint16_t>(~bit(u));
    }
}

void Graph::toggle_edge(int u, int v) {
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    rows_[u] ^= static_cast<uint16_t>(bit(v));
    rows_[v] ^= static_cast<uint16_t>(bit(u));
}

int Graph::edge_count() const {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> out(n_);
    for (int v = 0; v < n_; ++v) out[v] = degree(v);
    return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            if (has_edge(u, v)) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::relabeled(std::span<const int> new_label) const {
    if (static_cast<int>(new_label.size()) != n_) throw InvalidArgument("relabeling has wrong length");
    Graph out(n_);
    for (int u = 0; u < n_; ++u) {
        uint32_t row = 0;
        for (VertexMask m = rows_[u]; m; m &= m - 1) row |= bit(new_label[std::countr_zero(m)]);
        out.rows_[new_label[u]] = static_cast<uint16_t>(row);
    }
    return out;
}

Graph Graph::induced(VertexMask keep) const {
    keep &= all_vertices(n_);
    std::array<int, kMaxVertices> index{};
    int k = 0;
    for (int v = 0; v < n_; ++v) {
        if (keep & bit(v)) index[v] = k++;
    }
    Graph out(k);
    for (int v = 0; v < n_; ++v) {
        if (!(keep & bit(v))) continue;
        uint32_t row = 0;
        for (VertexMask m = rows_[v] & keep; m; m &= m - 1) row |= bit(index[std::countr_zero(m)]);
        out.rows_[index[v]] = static_cast<uint16_t>(row);
    }
    return out;
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (int u = 0; u < n_; ++u) {
        for (int v = 0; v < n_; ++v) a(u, v) = has_edge(u, v) ? 1.0 : 0.0;
    }
    return a;
}

size_t GraphHash::operator()(const Graph &g) const noexcept {
    uint64_t h = mix_seed(static_cast<uint64_t>(g.size()));
    const auto &rows = g.rows();
    for (int i = 0; i < kMaxVertices; i += 4) {
        uint64_t word = uint64_t{rows[i]} | (uint64_t{rows[i + 1]} << 16) | (uint64_t{rows[i + 2]} << 32) |
                        (uint64_t{rows[i + 3]} << 48);
        h = mix_seed(h ^ word);
    }
    return static_cast<size_t>(h);
}

void local_complement_in_place(Graph &g, int v) {
    check_vertex(g, v, "local_complement");
    const uint16_t nv = g.rows_[v];
    for (VertexMask m = nv; m; m &= m - 1) {
        int u = std::countr_zero(m);
        g.rows_[u] ^= static_cast<uint16_t>(nv & ~bit(u));
    }
}

Graph local_complement(const Graph &g, int v) {
    Graph out = g;
    local_complement_in_place(out, v);
    return out;
}

Graph delete_vertex(const Graph &g, int v) {
    check_vertex(g, v, "delete_vertex");
    return g.induced(all_vertices(g.size()) & ~bit(v));
}

Spectrum laplacian_spectrum(const Graph &g) {
    const int n = g.size();
    if (n == 0) return {};
    Eigen::MatrixXd lap = -g.adjacency_matrix();
    for (int v = 0; v < n; ++v) lap(v, v) = g.degree(v);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    Spectrum s;
    s.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(s.values.begin(), s.values.end());
    return s;
}

bool are_isomorphic(const Graph &a, const Graph &b) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    auto da = a.degrees();
    auto db = b.degrees();
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return canonical_form(a) == canonical_form(b);
}

Graph random_graph(int n, double edge_probability, Rng &rng) {
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
        throw InvalidArgument("edge probability must lie in [0, 1]");
    }
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (uniform01(rng) < edge_probability) g.set_edge(u, v, true);
        }
    }
    return g;
}

Graph random_lc_walk(const Graph &g, int length, Rng &rng) {
    Graph out = g;
    if (g.size() == 0) return out;
    for (int step = 0; step < length; ++step) {
        local_complement_in_place(out, static_cast<int>(uniform_below(rng, static_cast<uint64_t>(g.size()))));
    }
    return out;
}

Graph random_relabel(const Graph &g, Rng &rng) {
    std::vector<int> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = g.size() - 1; i > 0; --i) {
        std::swap(perm[i], perm[uniform_below(rng, static_cast<uint64_t>(i + 1))]);
    }
    return g.relabeled(perm);
}

namespace {

int parse_int(std::string_view s, const std::string &context) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw InvalidArgument("malformed graph text '" + context + "'");
    }
    return value;
}

}  // namespace

Graph parse_graph_text(const std::string &text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw InvalidArgument("graph text needs 'n;edges': '" + text + "'");
    int n = parse_int(std::string_view(text).substr(0, semi), text);
    std::vector<std::pair<int, int>> edges;
    std::string_view rest = std::string_view(text).substr(semi + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
        if (item.find_first_not_of(' ') == std::string_view::npos) continue;
        auto dash = item.find('-');
        if (dash == std::string_view::npos) throw InvalidArgument("malformed edge in '" + text + "'");
        edges.emplace_back(parse_int(item.substr(0, dash), text), parse_int(item.substr(dash + 1), text));
    }
    return Graph::from_edges(n, edges);
}

std::string format_graph_text(const Graph &g) {
    std::ostringstream out;
    out << g.size() << ';';
    bool first = true;
    for (auto [u, v] : g.edges()) {
        if (!first) out << ',';
        out << u << '-' << v;
        first = false;
    }
    return out.str();
}

}  // namespace vmgbs
