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

#ifndef VMGBS_DATASET_H
#define VMGBS_DATASET_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vmgbs/graph.h"
#include "vmgbs/vertex_minor.h"

namespace vmgbs {

enum class Provenance {
    kConstructedPositive,
    kOracleVerifiedNegative,
    kOracleVerifiedPositive,
};

const char *provenance_name(Provenance p);
Provenance parse_provenance(const std::string &name);

struct LabeledPair {
    Graph parent;
    Graph child;
    bool is_vertex_minor = false;
    Provenance provenance = Provenance::kConstructedPositive;
    uint64_t seed = 0;  // seed of the stream that produced this pair
};

struct Dataset {
    std::vector<LabeledPair> pairs;
    uint64_t seed = 0;
    int n_parent = 0;
    int n_child = 0;
};

struct PairOptions {
    double edge_probability = 0.5;
    /// LC-walk length for positives is uniform in [min_walk, max_walk]; max_walk < 0 means n_parent.
    int min_walk = 1;
    int max_walk = -1;
    /// Minimum child size; the generator refuses smaller children.
    int min_child = 6;
    bool relabel_child = true;
    int rejection_budget = 10'000;
    /// Deletion branching is exact and avoids walking whole orbits at 10+ vertices.
    OracleOptions oracle{FinalCheck::kLcEquivalence, LcEnumeration::kDeletionBranching, 12, 1'000'000};
};

/// Random parent; child = random LC walk of the parent, random deletions down to
/// n_child vertices, random relabeling. A vertex-minor by construction.
LabeledPair make_positive_pair(int n_parent, int n_child, Rng &rng, const PairOptions &options = {});

/// Random parent and random child, redrawing the child until the oracle rejects
/// it. Throws ResourceExhausted after options.rejection_budget attempts.
LabeledPair make_negative_pair(int n_parent, int n_child, Rng &rng, const PairOptions &options = {});

/// Pair i draws from derive_rng(seed, i); positives come first. Pairs whose joint
/// canonical form repeats are redrawn when n_parent <= 10.
Dataset generate_dataset(int n_parent, int n_child, int positives, int negatives, uint64_t seed,
                         const PairOptions &options = {});

/// Re-runs the oracle on each pair and returns the indices whose label disagrees.
std::vector<size_t> audit_dataset(const Dataset &dataset, const OracleOptions &oracle, size_t stride = 1);

void write_dataset_jsonl(const Dataset &dataset, std::ostream &out);
Dataset read_dataset_jsonl(std::istream &in);

}  // namespace vmgbs

#endif  // VMGBS_DATASET_H
