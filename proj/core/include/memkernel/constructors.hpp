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

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "memkernel/pairs.hpp"

namespace memkernel {

/// GKSL data with rates absorbed into the jump operators, K_α = √γ_α V_α.
/// An empty jump list is allowed (pure Hamiltonian dynamics).
struct GkslSpec {
  ComplexMatrix hamiltonian;
  std::vector<ComplexMatrix> jumps;

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
  /// Throws ValidationError for a non-Hermitian H or mismatched jumps.
  void validate() const;
};

/// Canonical splitting 𝓛 = B − Z with B[ρ] = Σ K ρ K†,
/// Z[ρ] = i(Cρ − ρC†), C = H − (i/2) Σ K†K.
struct GkslSplit {
  Superoperator jump_part;   // B
  Superoperator decay_part;  // Z
  ComplexMatrix effective_hamiltonian;  // C
};

GkslSplit split_generator(const GkslSpec& spec);
Superoperator gksl_generator(const GkslSpec& spec);

/// N(t) = e^{−Zt} (or e^{(−Z+𝓛′)t} when `extra_generator` is given),
/// Q(t) = B∘N(t), exact Ṅ attached.
LegitimatePair semigroup_pair(const GkslSpec& spec, const TimeGrid& grid,
                              const std::optional<Superoperator>& extra_generator = std::nullopt);

/// Semigroup pair of a composite GKSL model reduced with environment state ω.
LegitimatePair reduced_semigroup_pair(const GkslSpec& composite, const DensityMatrix& omega, const TimeGrid& grid);

/// Waiting-time density f(t) with survival g(t) = 1 − ∫₀ᵗ f.
class WaitingTime {
 public:
  struct Exponential {
    double rate;
  };
  struct Oscillating {
    double omega;
  };
  struct Tabulated {
    TimeGrid grid;
    std::vector<double> density;
  };

  static WaitingTime exponential(double rate);
  static WaitingTime oscillating(double omega);
  /// Density sampled on `grid`; 0 ≤ ∫₀^{t_k} f ≤ 1 is enforced to max(10·Δ², 1e−8).
  static WaitingTime tabulated(const TimeGrid& grid, std::vector<double> density);

  /// True when f ≥ 0 everywhere (exponential, or nonnegative table).
  bool nonnegative() const;

  std::vector<double> density(const TimeGrid& grid) const;
  std::vector<double> survival(const TimeGrid& grid) const;
  std::vector<double> density_derivative(const TimeGrid& grid) const;

  const std::variant<Exponential, Oscillating, Tabulated>& kind() const { return kind_; }

 private:
  explicit WaitingTime(std::variant<Exponential, Oscillating, Tabulated> k) : kind_(std::move(k)) {}
  void require_grid(const TimeGrid& grid) const;
  std::variant<Exponential, Oscillating, Tabulated> kind_;
};

/// 𝓔ρ = ρ* Tr ρ. Idempotent.
Superoperator projective_channel(const DensityMatrix& target);

/// N = g·id, Q = f·𝓔 with Ṅ = −f·id attached. Throws when 𝓔 is not CPTP.
LegitimatePair semimarkov_pair(const Superoperator& channel, const WaitingTime& w, const TimeGrid& grid);

/// Family ρ ↦ a(t) ∘ ρ. Throws CpViolation if some a(t_k) is not PSD.
MapFamily hadamard_family(const std::function<ComplexMatrix(double)>& a, const TimeGrid& grid,
                          std::optional<double> tol = std::nullopt);

/// Hadamard semi-Markov pair with a(t) = g(t)·M(t), M_ii = 1,
/// M_ij = e^{−γt} (i ≠ j), Q(t) = f(t)·𝓔.
LegitimatePair hadamard_semimarkov_pair(const Superoperator& channel, const WaitingTime& w, double dephasing_rate,
                                        const TimeGrid& grid);

/// N(t) = e^{−Γt}𝓕(t), Q(t) = Γ N(t).
LegitimatePair collision_pair(const MapFamily& f, double gamma,
                              const std::optional<MapFamily>& f_dot = std::nullopt);

/// N(t) = g(t)𝓕(t), Q(t) = f(t)𝓕(t)∘𝓔.
LegitimatePair generalized_collision_pair(const MapFamily& f, const Superoperator& channel, const WaitingTime& w,
                                          const std::optional<MapFamily>& f_dot = std::nullopt);

/// Survival and jump families G(t)[ρ] = V ρ V†, F(t) = Φ(t)∘G(t) built from
/// C(t) = H(t) − (i/2)X(t), X = Φ*(t)[I], with midpoint stepping
/// V(t_{k+1}) = exp(−iΔ C(t_k + Δ/2)) V(t_k).
struct NoncommutativeParts {
  MapFamily survival;         // G
  MapFamily jump;             // F
  MapFamily survival_dot;     // −Z(t)∘G(t), Z(t)[ρ] = i(C(t)ρ − ρC(t)†)
  std::vector<double> g;      // Tr G*(t)[I]
  std::vector<double> f;      // Tr F*(t)[I]
};

NoncommutativeParts noncommutative_parts(const MapFamily& phi, const std::function<ComplexMatrix(double)>& hamiltonian,
                                         std::optional<double> tol = std::nullopt);

/// N(t) = 𝓕(t)∘G(t), Q(t) = 𝓕(t)∘𝓔∘F(t).
LegitimatePair noncommutative_collision_pair(const MapFamily& phi,
                                             const std::function<ComplexMatrix(double)>& hamiltonian,
                                             const MapFamily& outer, const Superoperator& channel,
                                             const std::optional<MapFamily>& outer_dot = std::nullopt,
                                             std::optional<double> tol = std::nullopt);

}  // namespace memkernel
