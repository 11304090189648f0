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

#include <deque>
#include <unordered_set>

#include "vmgbs/errors.h"
#include "vmgbs/graph.h"

namespace vmgbs {

namespace {

bool orbit_search(const Graph &a, const Graph &b, size_t budget) {
    if (a == b) return true;
    std::unordered_set<Graph, GraphHash> seen{a};
    std::deque<Graph> frontier{a};
    while (!frontier.empty()) {
        Graph g = frontier.front();
        frontier.pop_front();
        for (int v = 0; v < g.size(); ++v) {
            if (g.degree(v) < 2) continue;  // LC at such a vertex is the identity
            Graph h = local_complement(g, v);
            if (h == b) return true;
            if (seen.insert(h).second) {
                if (seen.size() > budget) {
                    throw ResourceExhausted("LC orbit search exceeded its budget of " + std::to_string(budget) +
                                            " graphs");
                }
                frontier.push_back(std::move(h));
            }
        }
    }
    return false;
}

// Incrementally maintained row-echelon system over GF(2) with at most 64 unknowns.
struct Gf2System {
    std::array<uint64_t, 64> rows{};  // pivot rows, indexed by pivot bit
    std::array<uint8_t, 64> rhs{};
    uint64_t pivots = 0;

    // Returns false if the equation is inconsistent with the system.
    bool add(uint64_t coeffs, uint8_t value) {
        while (coeffs) {
            int p = 63 - std::countl_zero(coeffs);
            if (!(pivots & (uint64_t{1} << p))) {
                rows[p] = coeffs;
                rhs[p] = value;
                pivots |= uint64_t{1} << p;
                return true;
            }
            coeffs ^= rows[p];
            value ^= rhs[p];
        }
        return value == 0;
    }
};

// Local Clifford equivalence of graph states: find diagonal a, b, c, d with
//   B' C B + B' D + A B + Bdiag = 0  (B, B' adjacency matrices)
// and a_i d_i + b_i c_i = 1 for every vertex. The linear part is solved once;
// the quadratic constraint is enforced by a depth-first search over vertices.
class Gf2LcSolver {
   public:
    Gf2LcSolver(const Graph &g1, const Graph &g2) : n_(g1.size()) {
        // Unknown layout: a_i -> i, b_i -> n+i, c_i -> 2n+i, d_i -> 3n+i.
        std::vector<uint64_t> equations;
        for (int j = 0; j < n_; ++j) {
            for (int k = 0; k < n_; ++k) {
                uint64_t eq = 0;
                for (int i = 0; i < n_; ++i) {
                    if (g2.has_edge(j, i) && g1.has_edge(i, k)) eq ^= uint64_t{1} << (2 * n_ + i);
                }
                if (g2.has_edge(j, k)) eq ^= uint64_t{1} << (3 * n_ + k);
                if (g1.has_edge(j, k)) eq ^= uint64_t{1} << j;
                if (j == k) eq ^= uint64_t{1} << (n_ + j);
                if (eq) equations.push_back(eq);
            }
        }
        nullspace_basis(equations);
    }

    bool solve() {
        Gf2System system;
        return dfs(0, system);
    }

   private:
    void nullspace_basis(std::vector<uint64_t> equations) {
        const int vars = 4 * n_;
        std::vector<int> pivot_col;
        int rank = 0;
        for (int col = 0; col < vars && rank < static_cast<int>(equations.size()); ++col) {
            int sel = -1;
            for (int r = rank; r < static_cast<int>(equations.size()); ++r) {
                if ((equations[r] >> col) & 1) {
                    sel = r;
                    break;
                }
            }
            if (sel < 0) continue;
            std::swap(equations[rank], equations[sel]);
            for (int r = 0; r < static_cast<int>(equations.size()); ++r) {
                if (r != rank && ((equations[r] >> col) & 1)) equations[r] ^= equations[rank];
            }
            pivot_col.push_back(col);
            ++rank;
        }
        uint64_t pivot_mask = 0;
        for (int c : pivot_col) pivot_mask |= uint64_t{1} << c;
        for (int free = 0; free < vars; ++free) {
            if (pivot_mask & (uint64_t{1} << free)) continue;
            uint64_t vec = uint64_t{1} << free;
            for (int r = 0; r < rank; ++r) {
                if ((equations[r] >> free) & 1) vec |= uint64_t{1} << pivot_col[r];
            }
            basis_.push_back(vec);
        }
    }

    // Coefficients (over basis coordinates) of unknown `var`.
    uint64_t coordinate_row(int var) const {
        uint64_t row = 0;
        for (size_t t = 0; t < basis_.size(); ++t) {
            if ((basis_[t] >> var) & 1) row |= uint64_t{1} << t;
        }
        return row;
    }

    bool dfs(int vertex, const Gf2System &system) {
        if (vertex == n_) return true;
        // (a, b, c, d) with ad + bc = 1.
        static constexpr std::array<std::array<uint8_t, 4>, 6> kChoices{{
            {1, 0, 0, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 0}, {1, 1, 1, 0}, {0, 1, 1, 1},
        }};
        for (const auto &q : kChoices) {
            Gf2System next = system;
            bool ok = true;
            for (int part = 0; part < 4 && ok; ++part) {
                ok = next.add(coordinate_row(part * n_ + vertex), q[part]);
            }
            if (ok && dfs(vertex + 1, next)) return true;
        }
        return false;
    }

    int n_;
    std::vector<uint64_t> basis_;
};

}  // namespace

bool are_lc_equivalent(const Graph &a, const Graph &b, const LcOptions &options) {
    if (a.size() != b.size()) {
        throw InvalidArgument("are_lc_equivalent: graphs have different sizes " + std::to_string(a.size()) + " and " +
                              std::to_string(b.size()));
    }
    if (a.edge_count() == 0 || b.edge_count() == 0) return a == b;
    switch (options.backend) {
        case LcBackend::kGf2:
            return Gf2LcSolver(a, b).solve();
        case LcBackend::kOrbitSearch:
        default:
            return orbit_search(a, b, options.node_budget);
    }
}

}  // namespace vmgbs
