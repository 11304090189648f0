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

// Canonical labeling by individualization-refinement.
//
// The search tree is the usual one: refine to an equitable ordered partition,
// individualize each vertex of the first smallest non-singleton cell, recurse.
// Every leaf is a total order of the vertices; the canonical form is the leaf
// whose relabeled adjacency rows are lexicographically smallest. Leaves that
// reproduce the best code yield automorphisms, which prune sibling subtrees
// whose roots lie in the same orbit of the prefix's pointwise stabilizer.

#include <algorithm>
#include <numeric>

#include "vmgbs/graph.h"

namespace vmgbs {

namespace {

struct Partition {
    std::array<VertexMask, kMaxVertices> cells{};
    int count = 0;
};

using Code = std::array<uint16_t, kMaxVertices>;

class CanonicalSearch {
   public:
    explicit CanonicalSearch(const Graph &g) : g_(g), n_(g.size()) {}

    void run() {
        Partition root;
        root.count = 1;
        root.cells[0] = all_vertices(n_);
        std::vector<int> prefix;
        search(root, prefix);
    }

    const std::array<int, kMaxVertices> &best_order() const { return best_order_; }

   private:
    void refine(Partition &p) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int ci = 0; ci < p.count && !changed; ++ci) {
                VertexMask cell = p.cells[ci];
                if (std::popcount(cell) == 1) continue;
                // Key: neighbor counts in every cell, most significant = first cell.
                std::array<std::pair<__uint128_t, int>, kMaxVertices> keyed;
                int k = 0;
                for (VertexMask m = cell; m; m &= m - 1) {
                    int v = std::countr_zero(m);
                    __uint128_t key = 0;
                    VertexMask nb = g_.neighbors(v);
                    for (int cj = 0; cj < p.count; ++cj) {
                        key = (key << 5) | static_cast<unsigned>(std::popcount(nb & p.cells[cj]));
                    }
                    keyed[k++] = {key, v};
                }
                std::sort(keyed.begin(), keyed.begin() + k,
                          [](const auto &a, const auto &b) { return a.first < b.first; });
                if (keyed[0].first == keyed[k - 1].first) continue;

                std::array<VertexMask, kMaxVertices> pieces{};
                int npieces = 0;
                for (int i = 0; i < k; ++i) {
                    if (i > 0 && keyed[i].first != keyed[i - 1].first) ++npieces;
                    pieces[npieces] |= bit(keyed[i].second);
                }
                ++npieces;
                // Replace cell ci by the pieces, in key order.
                for (int cj = p.count - 1; cj > ci; --cj) p.cells[cj + npieces - 1] = p.cells[cj];
                for (int i = 0; i < npieces; ++i) p.cells[ci + i] = pieces[i];
                p.count += npieces - 1;
                changed = true;
            }
        }
    }

    bool same_orbit(int u, int v, const std::vector<int> &prefix) const {
        // Union-find over automorphisms that fix every individualized vertex.
        std::array<int, kMaxVertices> parent;
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto &gamma : automorphisms_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int w) { return gamma[w] == w; });
            if (!fixes) continue;
            for (int x = 0; x < n_; ++x) {
                int a = find(x), b = find(gamma[x]);
                if (a != b) parent[a] = b;
            }
        }
        return find(u) == find(v);
    }

    void leaf(const Partition &p) {
        std::array<int, kMaxVertices> order{};
        std::array<int, kMaxVertices> position{};
        for (int i = 0; i < n_; ++i) {
            order[i] = std::countr_zero(p.cells[i]);
            position[order[i]] = i;
        }
        Code code{};
        for (int i = 0; i < n_; ++i) {
            uint32_t row = 0;
            for (VertexMask m = g_.neighbors(order[i]); m; m &= m - 1) row |= bit(position[std::countr_zero(m)]);
            code[i] = static_cast<uint16_t>(row);
        }
        if (!have_best_ || code < best_code_) {
            have_best_ = true;
            best_code_ = code;
            best_order_ = order;
        } else if (code == best_code_) {
            std::array<int, kMaxVertices> gamma{};
            bool identity = true;
            for (int i = 0; i < n_; ++i) {
                gamma[order[i]] = best_order_[i];
                identity = identity && order[i] == best_order_[i];
            }
            if (!identity) automorphisms_.push_back(gamma);
        }
    }

    void search(Partition p, std::vector<int> &prefix) {
        refine(p);
        if (p.count == n_) {
            leaf(p);
            return;
        }
        int target = -1;
        int best_size = kMaxVertices + 1;
        for (int ci = 0; ci < p.count; ++ci) {
            int s = std::popcount(p.cells[ci]);
            if (s > 1 && s < best_size) {
                best_size = s;
                target = ci;
            }
        }
        std::vector<int> explored;
        for (VertexMask m = p.cells[target]; m; m &= m - 1) {
            int v = std::countr_zero(m);
            bool pruned = std::any_of(explored.begin(), explored.end(),
                                      [&](int u) { return same_orbit(u, v, prefix); });
            if (pruned) continue;
            Partition child;
            child.count = p.count + 1;
            for (int ci = 0, cj = 0; ci < p.count; ++ci) {
                if (ci == target) {
                    child.cells[cj++] = bit(v);
                    child.cells[cj++] = p.cells[ci] & ~bit(v);
                } else {
                    child.cells[cj++] = p.cells[ci];
                }
            }
            prefix.push_back(v);
            search(child, prefix);
            prefix.pop_back();
            explored.push_back(v);
        }
    }

    const Graph &g_;
    int n_;
    bool have_best_ = false;
    Code best_code_{};
    std::array<int, kMaxVertices> best_order_{};
    std::vector<std::array<int, kMaxVertices>> automorphisms_;
};

}  // namespace

Graph canonical_form(const Graph &g, std::vector<int> *labeling) {
    const int n = g.size();
    std::vector<int> label(n);
    if (n > 0) {
        CanonicalSearch search(g);
        search.run();
        for (int i = 0; i < n; ++i) label[search.best_order()[i]] = i;
    }
    Graph out = g.relabeled(label);
    if (labeling != nullptr) *labeling = std::move(label);
    return out;
}

Graph canonical_form(const Graph &g) { return canonical_form(g, nullptr); }

}  // namespace vmgbs
