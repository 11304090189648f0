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

#ifndef VMGBS_BENCH_INL_H
#define VMGBS_BENCH_INL_H

#include <algorithm>
#include <chrono>
#include <vector>

namespace vmgbs {

template <typename F>
double median_seconds(int runs, F &&f) {
    std::vector<double> t;
    for (int r = 0; r < std::max(1, runs); ++r) {
        auto start = std::chrono::steady_clock::now();
        f();
        t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

}  // namespace vmgbs

#endif  // VMGBS_BENCH_INL_H
