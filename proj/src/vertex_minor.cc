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

#include "vmgbs/vertex_minor.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include "vmgbs/errors.h"

namespace vmgbs {

namespace {

uint64_t degree_key(const Graph &g) {
    auto d = g.degrees();
    std::sort(d.begin(), d.end());
    uint64_t key = 0;
    for (int x : d) key = (key << 4) | static_cast<uint64_t>(x);
    return key;
}

// Set of canonical forms the reduced parent is tested against, with a cheap
// degree-sequence prefilter in front of canonicalization.
class TargetSet {
   public:
    explicit TargetSet(std::unordered_set<Graph, GraphHash> forms) : forms_(std::move(forms)) {
        for (const auto &g : forms_) degree_keys_.insert(degree_key(g));
    }

    bool matches(const Graph &g) const {
        if (!degree_keys_.count(degree_key(g))) return false;
        return forms_.count(canonical_form(g)) > 0;
    }

   private:
    std::unordered_set<Graph, GraphHash> forms_;
    std::unordered_set<uint64_t> degree_keys_;
};

TargetSet make_targets(const Graph &child, FinalCheck check, size_t budget) {
    if (check == FinalCheck::kIsomorphism) return TargetSet({canonical_form(child)});
    return TargetSet(lc_class(child, budget));
}

std::vector<VertexMask> keep_masks(int n, int keep) {
    std::vector<VertexMask> out;
    for (VertexMask m = 0; m <= all_vertices(n); ++m) {
        if (std::popcount(m) == keep) out.push_back(m);
    }
    return out;
}

bool any_deletion_matches(const Graph &g, const std::vector<VertexMask> &keeps, const TargetSet &targets) {
    return std::any_of(keeps.begin(), keeps.end(), [&](VertexMask keep) { return targets.matches(g.induced(keep)); });
}

bool ascending_subsets(const Graph &parent, const Graph &child, const OracleOptions &options) {
    const int n = parent.size();
    const auto keeps = keep_masks(n, child.size());
    const TargetSet targets = make_targets(child, options.final_check, options.node_budget);
    for (VertexMask subset = 0; subset <= all_vertices(n); ++subset) {
        Graph g = parent;
        for (VertexMask m = subset; m; m &= m - 1) local_complement_in_place(g, std::countr_zero(m));
        if (any_deletion_matches(g, keeps, targets)) return true;
    }
    return false;
}

bool orbit_complete(const Graph &parent, const Graph &child, const OracleOptions &options) {
    const auto keeps = keep_masks(parent.size(), child.size());
    const TargetSet targets = make_targets(child, options.final_check, options.node_budget);
    // Vertex-minor status is invariant under relabeling the parent, so the
    // orbit is walked over isomorphism classes.
    Graph start = canonical_form(parent);
    std::unordered_set<Graph, GraphHash> seen{start};
    std::deque<Graph> frontier{start};
    while (!frontier.empty()) {
        Graph g = frontier.front();
        frontier.pop_front();
        if (any_deletion_matches(g, keeps, targets)) return true;
        for (int v = 0; v < g.size(); ++v) {
            if (g.degree(v) < 2) continue;
            Graph h = canonical_form(local_complement(g, v));
            if (seen.insert(h).second) {
                if (seen.size() > options.node_budget) {
                    throw ResourceExhausted("vertex-minor orbit search exceeded its budget of " +
                                            std::to_string(options.node_budget) + " graphs");
                }
                frontier.push_back(std::move(h));
            }
        }
    }
    return false;
}

void isolate(Graph &g, int v) {
    for (VertexMask m = g.neighbors(v); m; m &= m - 1) g.set_edge(v, std::countr_zero(m), false);
}

bool deletion_branching(const Graph &parent, const Graph &child, const OracleOptions &options) {
    const int n = parent.size();
    const auto keeps = keep_masks(n, child.size());
    const auto child_signature = cut_rank_signature(child);

    std::unordered_set<Graph, GraphHash> candidates;
    for (VertexMask keep : keeps) {
        // Deleted vertices stay in place as isolated vertices so labels remain stable.
        std::unordered_set<Graph, GraphHash> level{parent};
        for (VertexMask del = all_vertices(n) & ~keep; del; del &= del - 1) {
            const int v = std::countr_zero(del);
            std::unordered_set<Graph, GraphHash> next;
            for (const Graph &g : level) {
                Graph plain = g;
                isolate(plain, v);
                next.insert(plain);
                if (g.degree(v) == 0) continue;
                Graph complemented = local_complement(g, v);
                isolate(complemented, v);
                next.insert(complemented);
                const int w = std::countr_zero(g.neighbors(v));
                Graph pivoted = local_complement(local_complement(local_complement(g, w), v), w);
                isolate(pivoted, v);
                next.insert(pivoted);
            }
            level = std::move(next);
        }
        for (const Graph &g : level) {
            Graph reduced = g.induced(keep);
            if (cut_rank_signature(reduced) == child_signature) candidates.insert(canonical_form(reduced));
        }
    }
    if (candidates.empty()) return false;
    if (candidates.count(canonical_form(child))) return true;

    // Walk the child's LC class until one of the surviving candidates shows up.
    Graph start = canonical_form(child);
    std::unordered_set<Graph, GraphHash> seen{start};
    std::deque<Graph> frontier{start};
    while (!frontier.empty()) {
        Graph g = frontier.front();
        frontier.pop_front();
        for (int v = 0; v < g.size(); ++v) {
            if (g.degree(v) < 2) continue;
            Graph h = canonical_form(local_complement(g, v));
            if (!seen.insert(h).second) continue;
            if (candidates.count(h)) return true;
            if (seen.size() > options.node_budget) {
                throw ResourceExhausted("LC class search exceeded its budget of " +
                                        std::to_string(options.node_budget) + " graphs");
            }
            frontier.push_back(std::move(h));
        }
    }
    return false;
}

int gf2_rank(std::array<uint32_t, kMaxVertices> rows, int count) {
    int rank = 0;
    for (int i = 0; i < count; ++i) {
        uint32_t r = rows[i];
        if (!r) continue;
        ++rank;
        uint32_t low = r & (~r + 1);
        for (int j = i + 1; j < count; ++j) {
            if (rows[j] & low) rows[j] ^= r;
        }
    }
    return rank;
}

}  // namespace

std::unordered_set<Graph, GraphHash> lc_class(const Graph &g, size_t node_budget) {
    Graph start = canonical_form(g);
    std::unordered_set<Graph, GraphHash> seen{start};
    std::deque<Graph> frontier{start};
    while (!frontier.empty()) {
        Graph cur = frontier.front();
        frontier.pop_front();
        for (int v = 0; v < cur.size(); ++v) {
            if (cur.degree(v) < 2) continue;
            Graph h = canonical_form(local_complement(cur, v));
            if (seen.insert(h).second) {
                if (seen.size() > node_budget) {
                    throw ResourceExhausted("LC class search exceeded its budget of " + std::to_string(node_budget) +
                                            " graphs");
                }
                frontier.push_back(std::move(h));
            }
        }
    }
    return seen;
}

bool lc_equivalent_up_to_isomorphism(const Graph &a, const Graph &b, size_t node_budget) {
    if (a.size() != b.size()) return false;
    if (cut_rank_signature(a) != cut_rank_signature(b)) return false;
    return lc_class(b, node_budget).count(canonical_form(a)) > 0;
}

std::vector<uint32_t> cut_rank_signature(const Graph &g) {
    const int n = g.size();
    const int half = n / 2;
    std::vector<uint32_t> hist(static_cast<size_t>(half + 1) * (half + 1), 0);
    for (VertexMask x = 1; x < all_vertices(n); ++x) {
        const int size = std::popcount(x);
        if (size > half) continue;
        std::array<uint32_t, kMaxVertices> rows{};
        int count = 0;
        for (VertexMask m = x; m; m &= m - 1) rows[count++] = g.neighbors(std::countr_zero(m)) & ~x;
        ++hist[static_cast<size_t>(size) * (half + 1) + gf2_rank(rows, count)];
    }
    return hist;
}

bool is_vertex_minor(const Graph &parent, const Graph &child, const OracleOptions &options) {
    if (child.size() < 1 || parent.size() < child.size()) {
        throw InvalidArgument("is_vertex_minor needs parent size >= child size >= 1, got " +
                              std::to_string(parent.size()) + " and " + std::to_string(child.size()));
    }
    if (parent.size() > options.max_parent_vertices) {
        throw InvalidArgument("parent has " + std::to_string(parent.size()) + " vertices, above the cap of " +
                              std::to_string(options.max_parent_vertices));
    }
    if (child.edge_count() > 0 && parent.edge_count() == 0) return false;
    switch (options.enumeration) {
        case LcEnumeration::kAscendingSubsets:
            return ascending_subsets(parent, child, options);
        case LcEnumeration::kDeletionBranching:
            return deletion_branching(parent, child, options);
        case LcEnumeration::kOrbitComplete:
        default:
            return orbit_complete(parent, child, options);
    }
}

double bruteforce_cost(int n_parent, int n_child) {
    if (n_parent < n_child) throw InvalidArgument("bruteforce_cost needs n_parent >= n_child");
    return static_cast<double>(n_parent) * std::ldexp(1.0, 2 * n_parent - n_child);
}

}  // namespace vmgbs
