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

// JSON run configurations. Every parse error is reported as ValidationError.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "memkernel/classical.hpp"
#include "memkernel/random.hpp"
#include "memkernel/solver.hpp"

namespace memkernel::cli {

/// Exact-derivative family, e.g. F(t) = e^{𝓛t} with Ḟ = 𝓛∘F.
struct FamilyWithDerivative {
  MapFamily family;
  MapFamily derivative;
};

/// Route for the kernel-equation solver.
struct InhomogeneousRoute {
  enum class Kind { kernel_equation, commuting_pair, unavailable };
  Kind kind = Kind::unavailable;
  std::optional<KernelEquation> equation;
  std::string note;
};

struct QuantumModel {
  LegitimatePair pair;
  InhomogeneousRoute route;
};

struct ClassicalModel {
  ClassicalPair pair;
  RealVector initial;
};

struct Outputs {
  std::string trajectory_csv = "trajectory.csv";
  std::string report_json = "report.json";
  std::vector<double> laplace_s_list = {0.5, 1.0, 2.0};
};

struct RunConfig {
  std::string model_type;
  TimeGrid grid{1.0, kDefaultSteps};
  std::string method = "volterra";
  std::optional<DensityMatrix> initial_state;
  Outputs outputs;
  std::optional<QuantumModel> quantum;
  std::optional<ClassicalModel> classical;
};

/// Builds the model described by `config`. `seed` feeds randomized channels.
RunConfig parse_config(const nlohmann::json& config, std::uint64_t seed);

/// Reads and parses a JSON file; unreadable or malformed files raise
/// ValidationError.
nlohmann::json load_json(const std::string& path);

ComplexMatrix parse_matrix(const nlohmann::json& j, const char* what);
DensityMatrix parse_state(const nlohmann::json& j, int dim);
GkslSpec parse_gksl(const nlohmann::json& j);
Superoperator parse_channel(const nlohmann::json& j, int dim, Rng& rng);
WaitingTime parse_waiting(const nlohmann::json& j, const TimeGrid& grid);
FamilyWithDerivative parse_family(const nlohmann::json& j, int dim, const TimeGrid& grid);

}  // namespace memkernel::cli
