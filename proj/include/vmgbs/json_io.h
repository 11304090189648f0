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

#ifndef VMGBS_JSON_IO_H
#define VMGBS_JSON_IO_H

#include <string>
#include <string_view>

#include "json.hpp"
#include "vmgbs/graph.h"

namespace vmgbs {

/// {"n": int, "edges": [[u, v], ...]}
void to_json(nlohmann::json &j, const Graph &g);
/// Rejects self-loops, duplicate edges and out-of-range endpoints.
void from_json(const nlohmann::json &j, Graph &g);

/// 64-bit FNV-1a of the compact dump; used as a config digest in manifests.
std::string json_digest(const nlohmann::json &j);
/// Same hash over raw bytes; used for input and output files.
std::string content_digest(std::string_view bytes);

}  // namespace vmgbs

#endif  // VMGBS_JSON_IO_H
