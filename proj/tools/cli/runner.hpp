// Copyright 2026 The memkernel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

#include <nlohmann/json.hpp>

namespace memkernel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct RunOptions {
  /// Overrides the config's method: volterra, series:M, inhomogeneous, all.
  std::optional<std::string> method;
  /// CP tolerance for the legitimacy and convergence checks.
  std::optional<double> tol;
  std::uint64_t seed = 0;
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunResult {
  nlohmann::json report;
  std::vector<OutputFile> files;
};

/// Full run: certification, solver(s), trajectory CSV and report JSON.
RunResult run(const nlohmann::json& config, const RunOptions& opts);

/// Certification only: legitimacy report and convergence table.
RunResult check(const nlohmann::json& config, const RunOptions& opts);

/// Writes every file or none: contents go to temporaries first and are
/// renamed into place once all writes succeeded.
void write_outputs(const std::string& out_dir, const std::vector<OutputFile>& files);

/// Serialized report text, stable across runs.
std::string dump_report(const nlohmann::json& report);

/// Maps the library's exception types to process exit codes.
int exit_code_for(const std::exception& e);

}  // namespace memkernel::cli
