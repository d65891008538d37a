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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memkernel/mapfamily.hpp"

namespace memkernel {

/// Pair {N(t), Q(t)} of sampled map families. N may carry its exact
/// derivative so the trace condition is not limited by finite differences.
///
/// Construction only checks shape (grids and dims agree); the physical
/// conditions are evaluated by check_legitimate, which never throws.
class LegitimatePair {
 public:
  LegitimatePair(MapFamily n, MapFamily q, std::string label,
                 std::optional<MapFamily> n_dot = std::nullopt);

  const MapFamily& N() const { return n_; }
  const MapFamily& Q() const { return q_; }
  const std::optional<MapFamily>& n_dot() const { return n_dot_; }
  const TimeGrid& grid() const { return n_.grid(); }
  int dim() const { return n_.dim(); }
  const std::string& label() const { return label_; }

  /// Exact derivative when attached, otherwise finite differences of N.
  MapFamily n_derivative() const;

 private:
  MapFamily n_;
  MapFamily q_;
  std::optional<MapFamily> n_dot_;
  std::string label_;
};

/// max(10·Δ², 1e−8).
double default_tr_tolerance(const TimeGrid& grid);

struct LegitimacyReport {
  bool cp_N = false;
  bool cp_Q = false;
  bool initial_identity = false;
  double tr_residual_max = 0.0;
  bool monotone = false;
  bool verdict = false;

  double min_choi_eig_N = 0.0;
  double min_choi_eig_Q = 0.0;
  double initial_identity_defect = 0.0;
  /// Smallest eigenvalue of −d/dt N*(t)[I] over all nodes.
  double monotonicity_min_eig = 0.0;
  double tol = 0.0;
  double tol_TR = 0.0;
  bool exact_derivative = false;
  std::string note;
};

LegitimacyReport check_legitimate(const LegitimatePair& p, std::optional<double> tol = std::nullopt,
                                  std::optional<double> tol_tr = std::nullopt);

struct ConvergenceEntry {
  double s = 0.0;
  bool cp = false;
  /// ‖Q̃(s)‖₁; absent when Q̃(s) is not CP.
  std::optional<double> norm;
  bool converges = false;
  double truncation_bound = 0.0;
};

std::vector<ConvergenceEntry> check_convergence(const LegitimatePair& p, std::span<const double> s_list,
                                                std::optional<double> tol = std::nullopt);

/// N = Σ p_k N_k, Q = Σ p_k Q_k.
LegitimatePair convex_combine(std::span<const LegitimatePair> pairs, std::span<const double> weights);

/// N'(t)[ρ] = Tr_E N(t)[ρ ⊗ ω], same for Q.
LegitimatePair reduce_pair(const LegitimatePair& p, const DensityMatrix& omega);

/// N' = F∘N, Q' = F∘Q for a CPTP family F with F(0) = id. If both the pair
/// and F carry exact derivatives the product rule is attached.
LegitimatePair gauge_transform(const LegitimatePair& p, const MapFamily& f,
                               const std::optional<MapFamily>& f_dot = std::nullopt,
                               std::optional<double> tol = std::nullopt);

/// N' = N + ∫₀ᵗ G, Q' = Q − G. Throws CpViolation when ∫G or Q' fails the
/// Choi test at some node.
LegitimatePair cp_shift(const LegitimatePair& p, const MapFamily& g, std::optional<double> tol = std::nullopt);

}  // namespace memkernel
