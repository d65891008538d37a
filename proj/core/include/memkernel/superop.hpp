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

// Superoperators act on column-stacked operators:
//
//   vec(ρ)[i + j·d] = ρ(i, j),      vec(X ρ Y) = (Yᵀ ⊗ X) vec(ρ).
//
// Composite spaces are ordered system ⊗ environment with the system as the
// slow index, i.e. basis |a⟩|e⟩ sits at row a·d_E + e.

#include <vector>

#include "memkernel/types.hpp"

namespace memkernel {

/// PSD tolerance used for Choi tests unless a caller overrides it: 1e−9·d².
double default_cp_tolerance(int dim);

ComplexVector vectorize(const ComplexMatrix& op);
ComplexMatrix devectorize(const ComplexVector& v, int dim);

class DensityMatrix {
 public:
  /// Validates Hermiticity (‖ρ−ρ†‖_F ≤ tol·d), unit trace and PSD (≥ −tol).
  static DensityMatrix from_matrix(ComplexMatrix rho, double tol = 1e-12);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis_state(int dim, int k);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }

 private:
  explicit DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {}
  ComplexMatrix rho_;
};

class KrausSet {
 public:
  /// Throws ValidationError when empty or when operators disagree on dim.
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  int dim() const { return static_cast<int>(ops_.front().rows()); }
  const std::vector<ComplexMatrix>& operators() const { return ops_; }

 private:
  std::vector<ComplexMatrix> ops_;
};

class Superoperator {
 public:
  Superoperator() = default;
  /// `m` must be d²×d² for some integer d ≥ 1.
  explicit Superoperator(ComplexMatrix m);

  static Superoperator identity(int dim);
  static Superoperator zero(int dim);
  /// ρ ↦ X ρ Y.
  static Superoperator sandwich(const ComplexMatrix& x, const ComplexMatrix& y);
  /// ρ ↦ U ρ U†.
  static Superoperator conjugation(const ComplexMatrix& u);
  /// ρ ↦ σ Tr ρ.
  static Superoperator replacement(const ComplexMatrix& sigma);
  /// ρ ↦ a ∘ ρ (entrywise product).
  static Superoperator hadamard(const ComplexMatrix& a);

  int dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return m_; }

  ComplexMatrix apply(const ComplexMatrix& op) const;

  Superoperator& operator+=(const Superoperator& rhs);
  Superoperator& operator-=(const Superoperator& rhs);
  Superoperator& operator*=(Complex c);

  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
  friend Superoperator operator-(Superoperator a) { return a *= -1.0; }
  friend Superoperator operator*(Superoperator a, Complex c) { return a *= c; }
  friend Superoperator operator*(Complex c, Superoperator a) { return a *= c; }
  friend Superoperator operator*(Superoperator a, double c) { return a *= Complex(c); }
  friend Superoperator operator*(double c, Superoperator a) { return a *= Complex(c); }
  friend Superoperator operator/(Superoperator a, double c) { return a *= Complex(1.0 / c); }

  /// Composition: (a * b)[ρ] = a[b[ρ]].
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  int dim_ = 0;
  ComplexMatrix m_;
};

/// Frobenius norm of the superoperator matrix.
double norm(const Superoperator& s);

Superoperator kraus_to_superop(const KrausSet& ks);

/// Unnormalized Choi matrix C = Σ_ij E_ij ⊗ S[E_ij].
class ChoiMatrix {
 public:
  explicit ChoiMatrix(const Superoperator& s);
  int dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  int dim_;
  ComplexMatrix m_;
};

inline ChoiMatrix choi(const Superoperator& s) { return ChoiMatrix(s); }

/// Hilbert–Schmidt adjoint: Tr(A† S[B]) = Tr(S*[A]† B).
Superoperator dual(const Superoperator& s);

struct PropertyReport {
  bool cp = false;
  bool hermiticity_preserving = false;
  bool trace_preserving = false;
  bool trace_annihilating = false;
  double min_choi_eig = 0.0;
  /// ‖S*(I) − I‖_F
  double trace_defect = 0.0;
  /// ‖S*(I)‖_F
  double trace_residual = 0.0;
  /// ‖C − C†‖_F
  double hermiticity_defect = 0.0;
};

PropertyReport check_map_properties(const Superoperator& s, double tol);

double min_choi_eigenvalue(const Superoperator& s);
bool is_cp(const Superoperator& s, double tol);
bool is_cptp(const Superoperator& s, double tol);

/// S*(I).
ComplexMatrix dual_on_identity(const Superoperator& s);

/// Induced trace norm ‖S‖_{1→1} for a CP map: λ_max(S*(I)).
/// Only meaningful when `s` is CP.
double cp_norm(const Superoperator& s);

/// Tr_E of an operator on (d_sys·d_env).
ComplexMatrix partial_trace_env(const ComplexMatrix& op, int dim_sys, int dim_env);

/// Map ρ ↦ Tr_E(S[ρ ⊗ ω]) on the system factor.
Superoperator reduce_superop(const Superoperator& composite, const DensityMatrix& omega);

/// a ⊗ b acting on the composite space (system ⊗ environment).
Superoperator tensor(const Superoperator& a, const Superoperator& b);

}  // namespace memkernel
