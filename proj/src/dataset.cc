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

#include "vmgbs/dataset.h"

#include <istream>
#include <ostream>
#include <set>

#include "vmgbs/errors.h"
#include "vmgbs/json_io.h"
#include "vmgbs/parallel.h"

namespace vmgbs {

namespace {

void check_sizes(int n_parent, int n_child, const PairOptions &options) {
    if (n_child < options.min_child || n_parent < n_child || n_parent > kMaxVertices) {
        throw InvalidArgument("pair sizes need n_parent >= n_child >= " + std::to_string(options.min_child) +
                              ", got " + std::to_string(n_parent) + " and " + std::to_string(n_child));
    }
}

VertexMask random_keep_mask(int n, int keep, Rng &rng) {
    VertexMask mask = all_vertices(n);
    for (int removed = 0; removed < n - keep;) {
        int v = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n)));
        if (mask & bit(v)) {
            mask &= ~bit(v);
            ++removed;
        }
    }
    return mask;
}

LabeledPair make_pair(int n_parent, int n_child, bool positive, Rng &rng, const PairOptions &options) {
    return positive ? make_positive_pair(n_parent, n_child, rng, options)
                    : make_negative_pair(n_parent, n_child, rng, options);
}

}  // namespace

const char *provenance_name(Provenance p) {
    switch (p) {
        case Provenance::kConstructedPositive:
            return "constructed-positive";
        case Provenance::kOracleVerifiedNegative:
            return "oracle-verified-negative";
        case Provenance::kOracleVerifiedPositive:
            return "oracle-verified-positive";
    }
    return "unknown";
}

Provenance parse_provenance(const std::string &name) {
    if (name == "constructed-positive") return Provenance::kConstructedPositive;
    if (name == "oracle-verified-negative") return Provenance::kOracleVerifiedNegative;
    if (name == "oracle-verified-positive") return Provenance::kOracleVerifiedPositive;
    throw InvalidArgument("unknown provenance '" + name + "'");
}

LabeledPair make_positive_pair(int n_parent, int n_child, Rng &rng, const PairOptions &options) {
    check_sizes(n_parent, n_child, options);
    LabeledPair pair;
    pair.parent = random_graph(n_parent, options.edge_probability, rng);
    const int max_walk = options.max_walk < 0 ? n_parent : options.max_walk;
    const int walk = options.min_walk +
                     static_cast<int>(uniform_below(rng, static_cast<uint64_t>(max_walk - options.min_walk + 1)));
    Graph walked = random_lc_walk(pair.parent, walk, rng);
    pair.child = walked.induced(random_keep_mask(n_parent, n_child, rng));
    if (options.relabel_child) pair.child = random_relabel(pair.child, rng);
    pair.is_vertex_minor = true;
    pair.provenance = Provenance::kConstructedPositive;
    return pair;
}

LabeledPair make_negative_pair(int n_parent, int n_child, Rng &rng, const PairOptions &options) {
    check_sizes(n_parent, n_child, options);
    LabeledPair pair;
    pair.parent = random_graph(n_parent, options.edge_probability, rng);
    for (int attempt = 0; attempt < options.rejection_budget; ++attempt) {
        Graph child = random_graph(n_child, options.edge_probability, rng);
        if (!is_vertex_minor(pair.parent, child, options.oracle)) {
            pair.child = child;
            pair.is_vertex_minor = false;
            pair.provenance = Provenance::kOracleVerifiedNegative;
            return pair;
        }
    }
    throw ResourceExhausted("no non-vertex-minor child found in " + std::to_string(options.rejection_budget) +
                            " attempts");
}

Dataset generate_dataset(int n_parent, int n_child, int positives, int negatives, uint64_t seed,
                         const PairOptions &options) {
    check_sizes(n_parent, n_child, options);
    if (positives < 0 || negatives < 0) throw InvalidArgument("class counts must be non-negative");
    Dataset ds;
    ds.seed = seed;
    ds.n_parent = n_parent;
    ds.n_child = n_child;
    const size_t total = static_cast<size_t>(positives) + static_cast<size_t>(negatives);
    ds.pairs.resize(total);
    auto positive = [&](size_t i) { return i < static_cast<size_t>(positives); };
    parallel_for(total, [&](size_t i) {
        const uint64_t stream = derive_seed(seed, i);
        Rng rng(stream);
        ds.pairs[i] = make_pair(n_parent, n_child, positive(i), rng, options);
        ds.pairs[i].seed = stream;
    });

    // Joint canonical forms are cheap enough to deduplicate up to 10 vertices.
    if (n_parent <= 10) {
        std::set<std::pair<Graph, Graph>> seen;
        for (size_t i = 0; i < total; ++i) {
            for (uint64_t attempt = 1;; ++attempt) {
                auto key = std::make_pair(canonical_form(ds.pairs[i].parent), canonical_form(ds.pairs[i].child));
                if (seen.insert(key).second) break;
                if (attempt > static_cast<uint64_t>(options.rejection_budget)) {
                    throw ResourceExhausted("could not draw a distinct pair for index " + std::to_string(i));
                }
                const uint64_t stream = derive_seed(derive_seed(seed, i), attempt);
                Rng rng(stream);
                ds.pairs[i] = make_pair(n_parent, n_child, positive(i), rng, options);
                ds.pairs[i].seed = stream;
            }
        }
    }
    return ds;
}

std::vector<size_t> audit_dataset(const Dataset &dataset, const OracleOptions &oracle, size_t stride) {
    if (stride == 0) stride = 1;
    std::vector<size_t> indices;
    for (size_t i = 0; i < dataset.pairs.size(); i += stride) indices.push_back(i);
    std::vector<char> bad(indices.size(), 0);
    parallel_for(indices.size(), [&](size_t k) {
        const auto &p = dataset.pairs[indices[k]];
        bad[k] = is_vertex_minor(p.parent, p.child, oracle) != p.is_vertex_minor;
    });
    std::vector<size_t> out;
    for (size_t k = 0; k < indices.size(); ++k) {
        if (bad[k]) out.push_back(indices[k]);
    }
    return out;
}

void write_dataset_jsonl(const Dataset &dataset, std::ostream &out) {
    for (const auto &p : dataset.pairs) {
        nlohmann::json j{{"parent", p.parent},
                         {"child", p.child},
                         {"label", p.is_vertex_minor ? 1 : 0},
                         {"provenance", provenance_name(p.provenance)},
                         {"seed", p.seed}};
        out << j.dump() << '\n';
    }
}

Dataset read_dataset_jsonl(std::istream &in) {
    Dataset ds;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw InvalidDataset("line " + std::to_string(line_no) + ": " + e.what());
        }
        LabeledPair p;
        p.parent = j.at("parent").get<Graph>();
        p.child = j.at("child").get<Graph>();
        p.is_vertex_minor = j.at("label").get<int>() != 0;
        p.provenance = parse_provenance(j.at("provenance").get<std::string>());
        p.seed = j.value("seed", uint64_t{0});
        if (p.parent.size() < p.child.size()) {
            throw InvalidDataset("line " + std::to_string(line_no) + ": child larger than parent");
        }
        ds.pairs.push_back(std::move(p));
    }
    if (!ds.pairs.empty()) {
        ds.n_parent = ds.pairs.front().parent.size();
        ds.n_child = ds.pairs.front().child.size();
    }
    return ds;
}

}  // namespace vmgbs
