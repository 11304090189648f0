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

#include "vmgbs/parallel.h"

namespace vmgbs {

namespace {
std::atomic<size_t> g_workers{0};
}

size_t worker_count() {
    size_t w = g_workers.load();
    if (w == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        w = hw == 0 ? 1 : hw;
    }
    return w;
}

void set_worker_count(size_t workers) { g_workers = workers; }

}  // namespace vmgbs
