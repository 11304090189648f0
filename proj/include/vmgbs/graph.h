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

#ifndef VMGBS_GRAPH_H
#define VMGBS_GRAPH_H

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "vmgbs/random.h"

namespace vmgbs {

inline constexpr int kMaxVertices = 16;

using VertexMask = uint32_t;

inline constexpr VertexMask bit(int v) { return VertexMask{1} << v; }
inline constexpr VertexMask all_vertices(int n) { return n >= 32 ? ~VertexMask{0} : bit(n) - 1; }

/// Undirected simple graph on vertices 0..n-1, stored as one bitset row per vertex.
///
/// Rows are kept symmetric with an empty diagonal by every mutator, so
/// `rows()[v]` is exactly the neighborhood N(v).
class Graph {
   public:
    Graph() = default;
    explicit Graph(int n);

    /// Throws InvalidArgument on self-loops, duplicate edges or out-of-range endpoints.
    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
    static Graph complete(int n);
    static Graph path(int n);
    static Graph cycle(int n);
    static Graph star(int leaves);
    /// Reads the upper triangle of a 0/1 matrix; throws if it is not symmetric 0/1 with zero diagonal.
    static Graph from_adjacency(const Eigen::MatrixXd &adjacency);

    int size() const { return n_; }
    bool has_edge(int u, int v) const { return (rows_[u] >> v) & 1u; }
    void set_edge(int u, int v, bool present);
    void toggle_edge(int u, int v);
    VertexMask neighbors(int v) const { return rows_[v]; }
    int degree(int v) const { return std::popcount(static_cast<unsigned>(rows_[v])); }
    int edge_count() const;
    std::vector<int> degrees() const;
    std::vector<std::pair<int, int>> edges() const;

    /// Vertex v of this graph becomes vertex new_label[v] of the result.
    Graph relabeled(std::span<const int> new_label) const;
    /// Subgraph induced on `keep`, vertices renumbered in increasing order.
    Graph induced(VertexMask keep) const;

    Eigen::MatrixXd adjacency_matrix() const;

    const std::array<uint16_t, kMaxVertices> &rows() const { return rows_; }

    friend bool operator==(const Graph &a, const Graph &b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }
    friend auto operator<=>(const Graph &a, const Graph &b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.rows_ <=> b.rows_;
    }

   private:
    friend Graph local_complement(const Graph &, int);
    friend void local_complement_in_place(Graph &, int);
    int n_ = 0;
    std::array<uint16_t, kMaxVertices> rows_{};
};

struct GraphHash {
    size_t operator()(const Graph &g) const noexcept;
};

struct Spectrum {
    std::vector<double> values;  // ascending, repeated eigenvalues kept
};

/// Toggles every edge between two distinct neighbors of v. Throws InvalidArgument if v is out of range.
Graph local_complement(const Graph &g, int v);
void local_complement_in_place(Graph &g, int v);

/// Removes v and its edges; the remaining vertices keep their relative order.
Graph delete_vertex(const Graph &g, int v);

/// Eigenvalues of D - A, ascending.
Spectrum laplacian_spectrum(const Graph &g);

/// Graph with the lexicographically smallest row encoding over all relabelings
/// reachable by the refinement search; equal for two graphs iff they are isomorphic.
Graph canonical_form(const Graph &g);

/// Same as canonical_form, also returning the labeling: vertex v of g is vertex
/// labeling[v] of the canonical graph.
Graph canonical_form(const Graph &g, std::vector<int> *labeling);

bool are_isomorphic(const Graph &a, const Graph &b);

enum class LcBackend {
    kOrbitSearch,  // breadth-first search over the labeled orbit
    kGf2,          // linear system over GF(2) for a local Clifford operator
};

struct LcOptions {
    LcBackend backend = LcBackend::kOrbitSearch;
    size_t node_budget = 1'000'000;
};

/// True iff some sequence of local complementations turns `a` into `b` (same labels).
/// Throws InvalidArgument on size mismatch and ResourceExhausted when the orbit search
/// visits more than `node_budget` graphs.
bool are_lc_equivalent(const Graph &a, const Graph &b, const LcOptions &options = {});

/// Erdos-Renyi G(n, p).
Graph random_graph(int n, double edge_probability, Rng &rng);

/// `length` local complementations at uniformly random vertices.
Graph random_lc_walk(const Graph &g, int length, Rng &rng);

/// Uniformly random relabeling.
Graph random_relabel(const Graph &g, Rng &rng);

/// "n;u-v,u-v,...". Rejects self-loops and duplicate edges.
Graph parse_graph_text(const std::string &text);
std::string format_graph_text(const Graph &g);

}  // namespace vmgbs

#endif  // VMGBS_GRAPH_H
