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

#include "memkernel/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "memkernel/errors.hpp"
#include "memkernel/quadrature.hpp"
#include "volterra_marching.hpp"

namespace memkernel {

ClassicalPair::ClassicalPair(TimeGrid grid, std::vector<RealMatrix> q, std::vector<RealVector> g,
                             std::vector<RealVector> g_dot)
    : grid_(grid), q_(std::move(q)), g_(std::move(g)), g_dot_(std::move(g_dot)) {
  if (q_.size() != grid_.size() || g_.size() != grid_.size() || g_dot_.size() != grid_.size()) {
    throw ValidationError("ClassicalPair: one sample per node required");
  }
  const auto m = q_.front().rows();
  if (m == 0) throw ValidationError("ClassicalPair: empty rate matrix");
  for (std::size_t k = 0; k < q_.size(); ++k) {
    if (q_[k].rows() != m || q_[k].cols() != m || g_[k].size() != m || g_dot_[k].size() != m) {
      throw ValidationError("ClassicalPair: inconsistent dimensions at node " + std::to_string(k));
    }
  }
}

ClassicalPair classical_semimarkov_pair(std::vector<RealMatrix> q, const TimeGrid& grid, ClassicalOptions options) {
  if (q.size() != grid.size()) throw ValidationError("classical_semimarkov_pair: one rate matrix per node required");
  const auto m = q.front().rows();
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k].rows() != m || q[k].cols() != m) throw ValidationError("classical_semimarkov_pair: rate matrices must be m x m");
    if (!options.allow_signed_rates && q[k].minCoeff() < -1e-12) {
      throw ValidationError("classical_semimarkov_pair: negative rate at node " + std::to_string(k));
    }
  }
  std::vector<RealVector> outflow;
  outflow.reserve(q.size());
  for (const auto& qk : q) outflow.push_back(qk.colwise().sum().transpose());
  const auto mass = quadrature::cumulative_trapezoid(outflow, grid.step());
  const double mass_tol = default_tr_tolerance(grid);

  std::vector<RealVector> g, g_dot;
  g.reserve(q.size());
  g_dot.reserve(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (mass[k].maxCoeff() > 1.0 + mass_tol) {
      throw ValidationError("classical_semimarkov_pair: cumulative jump mass exceeds 1 at node " + std::to_string(k));
    }
    if (mass[k].minCoeff() < -mass_tol) {
      throw ValidationError("classical_semimarkov_pair: cumulative jump mass is negative at node " + std::to_string(k));
    }
    g.push_back(RealVector::Ones(m) - mass[k]);
    g_dot.push_back(-outflow[k]);
  }
  return ClassicalPair(grid, std::move(q), std::move(g), std::move(g_dot));
}

ClassicalReport check_classical(const ClassicalPair& p) {
  ClassicalReport r;
  r.tol_TR = default_tr_tolerance(p.grid());
  r.nonnegative_rates = true;
  r.survival_in_range = true;
  const auto g_dot = quadrature::differentiate(p.g(), p.grid().step());
  for (std::size_t k = 0; k < p.q().size(); ++k) {
    r.nonnegative_rates = r.nonnegative_rates && p.q()[k].minCoeff() >= -1e-12;
    r.survival_in_range = r.survival_in_range && p.g()[k].minCoeff() >= -r.tol_TR && p.g()[k].maxCoeff() <= 1.0 + r.tol_TR;
    const RealVector residual = p.q()[k].colwise().sum().transpose() + g_dot[k];
    r.tr_semi_residual_max = std::max(r.tr_semi_residual_max, residual.cwiseAbs().maxCoeff());
  }
  r.verdict = r.nonnegative_rates && r.survival_in_range && r.tr_semi_residual_max <= r.tol_TR;
  return r;
}

namespace {

RealMatrix laplace_rates(const ClassicalPair& p, double s) {
  if (!(s > 0.0)) throw ValidationError("classical Laplace transform: s must be positive");
  const double dt = p.grid().step();
  const std::size_t last = p.grid().size() - 1;
  RealMatrix acc = RealMatrix::Zero(p.dim(), p.dim());
  for (std::size_t j = 0; j <= last; ++j) {
    acc += (quadrature::trapezoid_weight(j, last, dt) * std::exp(-s * p.grid().time(j))) * p.q()[j];
  }
  return acc;
}

}  // namespace

std::vector<double> classical_convergence(const ClassicalPair& p, std::span<const double> s_list) {
  if (s_list.empty()) throw ValidationError("classical_convergence: s_list is empty");
  std::vector<double> out;
  out.reserve(s_list.size());
  for (double s : s_list) out.push_back(laplace_rates(p, s).cwiseAbs().colwise().sum().maxCoeff());
  return out;
}

std::vector<RealMatrix> solve_classical(const ClassicalPair& p) {
  std::vector<RealMatrix> n;
  n.reserve(p.g().size());
  for (const auto& g : p.g()) n.push_back(g.asDiagonal());
  return detail::march_volterra(n, p.q(), p.grid().step());
}

RealMatrix classical_kernel_laplace(const ClassicalPair& p, double s) {
  const RealMatrix q = laplace_rates(p, s);
  const double dt = p.grid().step();
  const std::size_t last = p.grid().size() - 1;
  RealVector g = RealVector::Zero(p.dim());
  for (std::size_t j = 0; j <= last; ++j) {
    g += (quadrature::trapezoid_weight(j, last, dt) * std::exp(-s * p.grid().time(j))) * p.g()[j];
  }
  RealMatrix b(p.dim(), p.dim());
  for (int j = 0; j < p.dim(); ++j) {
    if (std::abs(g(j)) < 1e-14) {
      throw NumericalError("classical_kernel_laplace: Laplace transform of survival vanishes for state " +
                           std::to_string(j + 1));
    }
    b.col(j) = q.col(j) / g(j);
  }
  RealMatrix w = b;
  w.diagonal() -= b.colwise().sum().transpose();
  return w;
}

LegitimatePair embed_classical(const ClassicalPair& p) {
  const int m = p.dim();
  std::vector<Superoperator> n, q, n_dot;
  n.reserve(p.g().size());
  q.reserve(p.g().size());
  n_dot.reserve(p.g().size());
  // ρ ↦ Σ_ij t_ij ⟨j|ρ|j⟩ |i⟩⟨i|
  auto diagonal_map = [m](const RealMatrix& t) {
    ComplexMatrix s = ComplexMatrix::Zero(m * m, m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s(i + i * m, j + j * m) = t(i, j);
    return Superoperator(std::move(s));
  };
  // Hadamard weights a = diag(g − h) + h·J with h = min_j g_j: PSD, a(0) = J.
  auto hadamard_weights = [m](const RealVector& g, double h) {
    ComplexMatrix a = ComplexMatrix::Constant(m, m, h);
    for (int i = 0; i < m; ++i) a(i, i) = g(i);
    return a;
  };
  for (std::size_t k = 0; k < p.g().size(); ++k) {
    const RealVector& g = p.g()[k];
    Eigen::Index argmin = 0;
    const double h = std::max(0.0, g.minCoeff(&argmin));
    const double h_dot = g(argmin) > 0.0 ? p.g_dot()[k](argmin) : 0.0;
    n.push_back(Superoperator::hadamard(hadamard_weights(g, h)));
    n_dot.push_back(Superoperator::hadamard(hadamard_weights(p.g_dot()[k], h_dot)));
    q.push_back(diagonal_map(p.q()[k]));
  }
  return LegitimatePair(MapFamily(p.grid(), std::move(n)), MapFamily(p.grid(), std::move(q)), "classical_embedding",
                        MapFamily(p.grid(), std::move(n_dot)));
}

}  // namespace memkernel
