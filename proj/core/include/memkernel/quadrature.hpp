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

// Uniform-grid quadrature shared by scalar, matrix and superoperator samples.
// T needs T + T, T − T and double * T.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace memkernel::quadrature {

/// Composite trapezoid weight for node j of [0, t_k] with k intervals.
inline double trapezoid_weight(std::size_t j, std::size_t k, double dt) {
  return (j == 0 || j == k) ? 0.5 * dt : dt;
}

/// ∫₀^{t_k} y(τ) dτ at every node by composite trapezoid; out[0] = 0·y[0].
template <class T>
std::vector<T> cumulative_trapezoid(const std::vector<T>& y, double dt) {
  std::vector<T> out;
  out.reserve(y.size());
  if (y.empty()) return out;
  T acc = 0.0 * y[0];
  out.push_back(acc);
  for (std::size_t k = 1; k < y.size(); ++k) {
    acc = acc + (0.5 * dt) * (y[k - 1] + y[k]);
    out.push_back(acc);
  }
  return out;
}

/// Second-order derivative: central differences inside, one-sided
/// three-point stencils at both ends. Exact on quadratics.
template <class T>
std::vector<T> differentiate(const std::vector<T>& y, double dt) {
  const std::size_t n = y.size();
  if (n < 3) throw std::invalid_argument("differentiate: need at least 3 samples");
  std::vector<T> out;
  out.reserve(n);
  const double h2 = 1.0 / (2.0 * dt);
  out.push_back(h2 * (4.0 * y[1] - 3.0 * y[0] - y[2]));
  for (std::size_t k = 1; k + 1 < n; ++k) out.push_back(h2 * (y[k + 1] - y[k - 1]));
  out.push_back(h2 * (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]));
  return out;
}

/// Trapezoid approximation of ∫₀^{t_max} y(t) dt.
template <class T>
T trapezoid(const std::vector<T>& y, double dt) {
  T acc = 0.0 * y[0];
  const std::size_t k = y.size() - 1;
  for (std::size_t j = 0; j <= k; ++j) acc = acc + trapezoid_weight(j, k, dt) * y[j];
  return acc;
}

}  // namespace memkernel::quadrature
