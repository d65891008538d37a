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

#include "memkernel/random.hpp"

#include <cmath>

#include "memkernel/errors.hpp"

namespace memkernel {

ComplexMatrix random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng)) / std::sqrt(2.0);
  return m;
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  const ComplexMatrix z = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

ComplexMatrix random_hermitian(int dim, Rng& rng) {
  const ComplexMatrix z = random_ginibre(dim, dim, rng);
  return 0.5 * (z + z.adjoint());
}

DensityMatrix random_density_matrix(int dim, Rng& rng) {
  const ComplexMatrix z = random_ginibre(dim, dim, rng);
  ComplexMatrix rho = z * z.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::from_matrix(std::move(rho));
}

KrausSet random_kraus_channel(int dim, int n_ops, Rng& rng) {
  if (dim < 1 || n_ops < 1) throw ValidationError("random_kraus_channel: dim and n_ops must be positive");
  // Columns of a random isometry dim -> dim·n_ops, sliced into blocks.
  const ComplexMatrix z = random_ginibre(dim * n_ops, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  const ComplexMatrix v = ComplexMatrix(qr.householderQ()).leftCols(dim);
  std::vector<ComplexMatrix> ops;
  ops.reserve(n_ops);
  for (int a = 0; a < n_ops; ++a) ops.push_back(v.middleRows(a * dim, dim));
  return KrausSet(std::move(ops));
}

}  // namespace memkernel
