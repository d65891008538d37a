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

#include <random>

#include "memkernel/superop.hpp"

namespace memkernel {

using Rng = std::mt19937_64;

/// Ginibre matrix with i.i.d. standard complex normal entries.
ComplexMatrix random_ginibre(int rows, int cols, Rng& rng);
ComplexMatrix random_unitary(int dim, Rng& rng);
ComplexMatrix random_hermitian(int dim, Rng& rng);
DensityMatrix random_density_matrix(int dim, Rng& rng);

/// CPTP channel with `n_ops` Kraus operators (Stinespring isometry slices).
KrausSet random_kraus_channel(int dim, int n_ops, Rng& rng);

}  // namespace memkernel
