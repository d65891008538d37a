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

#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "memkernel/classical.hpp"
#include "memkernel/pairs.hpp"
#include "memkernel/solver.hpp"

namespace memkernel {

nlohmann::json to_json(const LegitimacyReport& r);
nlohmann::json to_json(const PropertyReport& r);
nlohmann::json to_json(const ConvergenceEntry& e);
nlohmann::json to_json(const std::vector<ConvergenceEntry>& entries);
nlohmann::json to_json(const ClassicalReport& r);

/// {"re": [[...]], "im": [[...]]}; "im" may be omitted on input.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
RealMatrix real_matrix_from_json(const nlohmann::json& j);

/// Double formatted with 17 significant digits.
std::string format_double(double x);

/// Header t,trace_defect,min_choi_eig,purity,rho_re_i_j...,rho_im_i_j...
/// with (i, j) row-major and 1-based.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Header t,T_11,T_21,...,T_mm, column-major over (i, j).
void write_classical_csv(std::ostream& out, const TimeGrid& grid, const std::vector<RealMatrix>& t);

}  // namespace memkernel
