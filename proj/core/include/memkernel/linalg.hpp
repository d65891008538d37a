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

#include "memkernel/types.hpp"

namespace memkernel {

/// Dense matrix exponential (Pade scaling-and-squaring).
ComplexMatrix expm(const ComplexMatrix& a);

/// Kronecker product a ⊗ b, first factor is the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of the Hermitian part (a + a†)/2, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);
double min_hermitian_eigenvalue(const ComplexMatrix& a);
double max_hermitian_eigenvalue(const ComplexMatrix& a);

/// Frobenius norm of a − a†.
double hermiticity_defect(const ComplexMatrix& a);

/// 2-norm condition number via singular values; +inf for singular input.
double condition_number(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol);

}  // namespace memkernel
