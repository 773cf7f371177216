// Copyright 2026 The qdense Authors
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

#ifndef QDENSE_CLI_H
#define QDENSE_CLI_H

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace qdense {

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitUsage = 2,
};

/// Caps read from QDENSE_SPAN_CAP, QDENSE_DENSE_CAP and QDENSE_PAIR_CAP.
struct CliLimits {
    std::size_t span_cap;
    std::size_t dense_cap;
    std::size_t pair_cap;

    static CliLimits from_environment();
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliLimits& limits);

}  // namespace qdense

#endif  // QDENSE_CLI_H
