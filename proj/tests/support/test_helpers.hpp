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

// Test-only oracles. Everything here is computed from definitions and must
// not call into the code path it is used to check.

#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "memkernel/constructors.hpp"
#include "memkernel/superop.hpp"

namespace memkernel::testing {

inline ComplexMatrix basis_op(int d, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

inline ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// |0⟩⟨1|: lowers |1⟩ (excited) to |0⟩ (ground).
inline ComplexMatrix sigma_minus() { return basis_op(2, 0, 1); }

/// Superoperator matrix from a callable by applying it to every E_ij.
inline ComplexMatrix superop_from_action(const std::function<ComplexMatrix(const ComplexMatrix&)>& f, int d) {
  ComplexMatrix m(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const ComplexMatrix out = f(basis_op(d, i, j));
      for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a) m(a + b * d, i + j * d) = out(a, b);
    }
  return m;
}

/// Choi matrix by the defining sum Σ E_ij ⊗ f(E_ij).
inline ComplexMatrix choi_by_definition(const std::function<ComplexMatrix(const ComplexMatrix&)>& f, int d) {
  ComplexMatrix c = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ComplexMatrix out = f(basis_op(d, i, j));
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) c(i * d + a, j * d + b) += out(a, b);
    }
  return c;
}

/// Matrix exponential by eigendecomposition (diagonalizable input).
inline ComplexMatrix expm_by_eigen(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
  const ComplexMatrix v = es.eigenvectors();
  const ComplexVector lam = es.eigenvalues().array().exp();
  return v * lam.asDiagonal() * v.inverse();
}

/// Matrix exponential by a long Taylor series after scaling by 2^s.
inline ComplexMatrix expm_by_taylor(const ComplexMatrix& a) {
  int s = 0;
  double n = a.norm();
  while (n > 0.1) {
    n /= 2;
    ++s;
  }
  const ComplexMatrix b = a / std::pow(2.0, s);
  ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

/// Qubit amplitude damping generator (rate γ) evaluated directly from the
/// GKSL formula with V = σ₋.
inline ComplexMatrix damping_generator_action(const ComplexMatrix& rho, double gamma) {
  const ComplexMatrix v = sigma_minus();
  const ComplexMatrix vv = v.adjoint() * v;
  return gamma * (v * rho * v.adjoint() - 0.5 * (vv * rho + rho * vv));
}

inline GkslSpec damping_spec(double gamma) {
  return GkslSpec{ComplexMatrix::Zero(2, 2), {std::sqrt(gamma) * sigma_minus()}};
}

inline GkslSpec dephasing_spec(double gamma) {
  return GkslSpec{ComplexMatrix::Zero(2, 2), {std::sqrt(gamma / 2.0) * sigma_z()}};
}

}  // namespace memkernel::testing
