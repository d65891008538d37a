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

// Classical semi-Markov evolution. Convention: q_ij(t) is the density for a
// jump j → i, T(t) is column-stochastic and survival is
// g_j(t) = 1 − ∫₀ᵗ Σ_i q_ij(τ) dτ.

#include <optional>
#include <vector>

#include "memkernel/pairs.hpp"

namespace memkernel {

struct ClassicalOptions {
  /// Accept sign-changing rates as long as 0 ≤ cumulative mass ≤ 1.
  bool allow_signed_rates = false;
};

class ClassicalPair {
 public:
  ClassicalPair(TimeGrid grid, std::vector<RealMatrix> q, std::vector<RealVector> g, std::vector<RealVector> g_dot);

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return static_cast<int>(q_.front().rows()); }
  const std::vector<RealMatrix>& q() const { return q_; }
  const std::vector<RealVector>& g() const { return g_; }
  /// Exact ġ_j = −Σ_i q_ij.
  const std::vector<RealVector>& g_dot() const { return g_dot_; }

 private:
  TimeGrid grid_;
  std::vector<RealMatrix> q_;
  std::vector<RealVector> g_;
  std::vector<RealVector> g_dot_;
};

ClassicalPair classical_semimarkov_pair(std::vector<RealMatrix> q, const TimeGrid& grid,
                                        ClassicalOptions options = {});

struct ClassicalReport {
  bool nonnegative_rates = false;
  bool survival_in_range = false;
  /// max_k,j |Σ_i q_ij + ġ_j| with ġ from finite differences of g.
  double tr_semi_residual_max = 0.0;
  double tol_TR = 0.0;
  bool verdict = false;
};

ClassicalReport check_classical(const ClassicalPair& p);

/// ‖q̃(s)‖₁ (max column sum) per s.
std::vector<double> classical_convergence(const ClassicalPair& p, std::span<const double> s_list);

/// T(t) with T(0) = 𝕀 by the same trapezoid marching as the quantum solver.
std::vector<RealMatrix> solve_classical(const ClassicalPair& p);

/// W̃(s) = B̃(s) − diag(colsum B̃(s)), B̃_ij = q̃_ij(s)/g̃_j(s).
RealMatrix classical_kernel_laplace(const ClassicalPair& p, double s);

/// Diagonal embedding as a Hadamard semi-Markov pair: N[|j⟩⟨j|] = g_j|j⟩⟨j|,
/// coherences scaled by min_j g_j, Q[ρ] = Σ_ij q_ij ⟨j|ρ|j⟩ |i⟩⟨i|.
LegitimatePair embed_classical(const ClassicalPair& p);

}  // namespace memkernel
