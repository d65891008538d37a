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
#include <vector>

#include "memkernel/constructors.hpp"
#include "memkernel/pairs.hpp"

namespace memkernel {

/// K(t) = regular(t) + δ(t)·delta_weight. The delta part is never sampled.
struct Kernel {
  MapFamily regular;
  Superoperator delta_weight;
};

struct SeriesResult {
  MapFamily lambda;
  /// S_0 = N, S_m = S_{m−1} + N∗Q^{∗m}, m = 0..M.
  std::vector<MapFamily> partials;
  /// max_k ‖N∗Q^{∗M}(t_k)‖_F
  double tail_norm = 0.0;
};

/// Truncated series Λ ≈ N + N∗Q + N∗Q∗Q + ... up to order M.
SeriesResult solve_series(const LegitimatePair& p, int order);

/// Trapezoid marching of Λ(t) = N(t) + ∫₀ᵗ Λ(t−τ)∘Q(τ) dτ.
MapFamily solve_volterra(const LegitimatePair& p);

/// Per-node state and diagnostics. `min_choi_eig` is NaN when the dynamical
/// map is not available (kernel-equation route).
struct Trajectory {
  TimeGrid grid;
  std::vector<ComplexMatrix> states;
  std::vector<double> trace_defect;
  std::vector<double> min_choi_eig;
  std::vector<double> purity;
};

/// Heun predictor-corrector for
///   ρ̇(t) = W[ρ(t)] + ∫₀ᵗ K_reg(τ)[ρ(t−τ)] dτ + I(t)[ρ₀]
/// with W the delta weight and I the inhomogeneity family.
Trajectory solve_inhomogeneous(const Kernel& k, const MapFamily& inhomogeneity, const DensityMatrix& rho0);

/// Same, with the inhomogeneity Ṅ(t) taken from the pair.
Trajectory solve_inhomogeneous(const Kernel& k, const LegitimatePair& p, const DensityMatrix& rho0);

/// K(t) = Q̇(t) + δ(t)Q(0), valid when Ñ(s) and Q̃(s) commute. The premise is
/// checked at `s_samples`: ‖[Ñ,Q̃]‖ ≤ tol·‖Ñ‖‖Q̃‖, else NumericalError.
Kernel new_kernel_commuting(const LegitimatePair& p, std::span<const double> s_samples = {},
                            double tol = 1e-8);

/// Kernel and inhomogeneity of the generalized collision equation
///   K(t) = (d/dt[f𝓕](t) + δ(t) f(0)) 𝓔,  I(t) = d/dt[g𝓕](t),
/// built from analytic f, g and the exact derivative of 𝓕.
struct KernelEquation {
  Kernel kernel;
  MapFamily inhomogeneity;
};

KernelEquation collision_equation(const MapFamily& f, const MapFamily& f_dot, const Superoperator& channel,
                                  const WaitingTime& w);

struct NzKernelLaplace {
  /// K̃_NZ(s) = s − [1 − Q̃(s)] Ñ⁻¹(s)
  Superoperator k_nz;
  /// K̃(s) = s Ñ(s) Q̃(s) Ñ⁻¹(s)
  Superoperator k_new;
  /// ‖K̃_NZ(s)*(I)‖_F and ‖K̃(s)*(I)‖_F: both vanish for trace-annihilating kernels.
  double trace_residual_nz = 0.0;
  double trace_residual_new = 0.0;
  double condition = 0.0;
};

/// Throws NumericalError when cond(Ñ(s)) > 1e12.
NzKernelLaplace nz_kernel_laplace(const LegitimatePair& p, double s);

/// states[k] = Λ(t_k)[ρ₀] with diagnostics.
Trajectory evolve_state(const MapFamily& lambda, const DensityMatrix& rho0);

/// e^{L t_k} by dense matrix exponential.
MapFamily semigroup_reference(const Superoperator& generator, const TimeGrid& grid);

/// Largest Frobenius distance between states at matching nodes.
double max_state_gap(const Trajectory& a, const Trajectory& b);

}  // namespace memkernel
