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

#ifndef VMGBS_VERTEX_MINOR_H
#define VMGBS_VERTEX_MINOR_H

#include <cstddef>
#include <unordered_set>
#include <vector>

#include "vmgbs/graph.h"

namespace vmgbs {

/// What the reduced parent must satisfy to count as a match for the child.
enum class FinalCheck {
    kIsomorphism,     // reduced parent isomorphic to the child
    kLcEquivalence,   // reduced parent LC-equivalent to some relabeling of the child
};

/// How the local complementations applied to the parent are enumerated.
enum class LcEnumeration {
    /// Every vertex subset, complemented once each in ascending vertex order (2^N sequences).
    kAscendingSubsets,
    /// Breadth-first search over the parent's whole LC orbit, up to isomorphism.
    kOrbitComplete,
    /// Per deleted vertex v, branch on G\v, (G*v)\v and (G*w*v*w)\v for a neighbor w.
    /// Exact, and equivalent to kOrbitComplete; far cheaper for one or two deletions.
    kDeletionBranching,
};

struct OracleOptions {
    FinalCheck final_check = FinalCheck::kLcEquivalence;
    LcEnumeration enumeration = LcEnumeration::kOrbitComplete;
    int max_parent_vertices = 12;
    /// Maximum number of distinct graphs any single orbit search may visit.
    size_t node_budget = 1'000'000;
};

/// Decides whether `child` (up to relabeling) is a vertex-minor of `parent`.
///
/// Throws InvalidArgument unless parent.size() >= child.size() >= 1 and the
/// parent is within the configured cap; throws ResourceExhausted when an orbit
/// search runs past its budget.
bool is_vertex_minor(const Graph &parent, const Graph &child, const OracleOptions &options = {});

/// Model operation count N * 2^(2N) * 2^(-N') of the subset-enumeration oracle.
double bruteforce_cost(int n_parent, int n_child);

/// Canonical forms of every graph LC-equivalent to a relabeling of g.
std::unordered_set<Graph, GraphHash> lc_class(const Graph &g, size_t node_budget = 1'000'000);

/// True iff a is LC-equivalent to some relabeling of b.
bool lc_equivalent_up_to_isomorphism(const Graph &a, const Graph &b, size_t node_budget = 1'000'000);

/// Histogram of cut-rank values rank_GF2(A[X, V\X]) over vertex subsets X with
/// 1 <= |X| <= n/2, indexed by (|X|, rank). Invariant under local complementation
/// and relabeling.
std::vector<uint32_t> cut_rank_signature(const Graph &g);

}  // namespace vmgbs

#endif  // VMGBS_VERTEX_MINOR_H
