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

// Command-line front end: gen-dataset, train, eval, sweep, runtime-model, verify.

#ifndef VMGBS_TOOLS_CLI_H
#define VMGBS_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace vmgbs::cli {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFailed = 3;

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace vmgbs::cli

#endif  // VMGBS_TOOLS_CLI_H
