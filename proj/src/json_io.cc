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

#include "vmgbs/json_io.h"

#include <cstdio>

#include "vmgbs/errors.h"

namespace vmgbs {

void to_json(nlohmann::json &j, const Graph &g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j = nlohmann::json{{"n", g.size()}, {"edges", std::move(edges)}};
}

void from_json(const nlohmann::json &j, Graph &g) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
        throw InvalidArgument("graph JSON needs 'n' and 'edges'");
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto &e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw InvalidArgument("graph JSON edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    g = Graph::from_edges(j.at("n").get<int>(), edges);
}

std::string json_digest(const nlohmann::json &j) { return content_digest(j.dump()); }

std::string content_digest(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace vmgbs
