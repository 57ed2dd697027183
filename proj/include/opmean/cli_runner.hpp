// Copyright 2026 The opmean authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace opmean {

/// Parsed command-line request. The seed fully determines every randomized
/// oracle; identical configs produce byte-identical JSON reports (wall time
/// goes to stderr, never into the report).
struct RunConfig {
    enum class Command {
        Means,
        Divergence,
        Bounds,
        Membership,
        Channels,
        Jordan,
        AppendixA,
        ReproduceAll,
    };
    Command command = Command::ReproduceAll;

    std::vector<std::string> inputs;  // file paths, command-specific order
    std::uint64_t seed = 1;
    std::string format = "json";  // "json" or "csv"
    std::string out_dir;          // empty = stdout only

    // Command-specific knobs.
    std::string kind;          // mean kind / divergence kind / channel op
    double t = 0.5;
    double z = 1.0;
    double alpha = 0.5;
    double r = 0.5;
    int k = 1;
    std::size_t n = 1;
    std::size_t trials = 200;
    double eps = 0.5;
    std::optional<double> tol;       // overrides eig_zero_tol/psd_tol
    std::optional<std::size_t> cap;  // overrides kron_cap
    std::size_t grid = 101;
};

/// Executes the request. Exit status: 0 success, 1 malformed input,
/// 2 certified property violation. Report text goes to stdout and, when
/// out_dir is set, into <out_dir>/<command>.<ext>.
int run(const RunConfig& config);

}  // namespace opmean
