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

// Trapezoid marching for X(t) = N(t) + ∫₀ᵗ X(t−τ) Q(τ) dτ on a uniform grid,
// shared by the quantum (superoperator) and classical (stochastic matrix)
// solvers. Products are plain matrix products, so X(t−τ)Q(τ) is the map
// composition X∘Q in either setting.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "memkernel/errors.hpp"

namespace memkernel::detail {

inline constexpr double kMaxMarchingCondition = 1e12;

template <class Mat>
std::vector<Mat> march_volterra(const std::vector<Mat>& n, const std::vector<Mat>& q, double dt) {
  const std::size_t size = n.size();
  const auto m = n.front().rows();
  const Mat a = Mat::Identity(m, m) - 0.5 * dt * q[0];

  Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) == 0.0 || sv(0) / sv(sv.size() - 1) > kMaxMarchingCondition) {
    throw NumericalError("Volterra marching: correction factor (1 - dt/2 Q(0)) is singular; reduce the time step");
  }
  const Mat a_inv = a.partialPivLu().inverse();

  std::vector<Mat> x(size);
  x[0] = n[0];
  for (std::size_t k = 1; k < size; ++k) {
    Mat rhs = n[k];
    for (std::size_t j = 1; j < k; ++j) rhs.noalias() += dt * (x[k - j] * q[j]);
    rhs.noalias() += (0.5 * dt) * (x[0] * q[k]);
    x[k].noalias() = rhs * a_inv;
  }
  return x;
}

}  // namespace memkernel::detail
