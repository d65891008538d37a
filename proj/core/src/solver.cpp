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

#include "memkernel/solver.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "memkernel/errors.hpp"
#include "memkernel/linalg.hpp"
#include "memkernel/quadrature.hpp"
#include "volterra_marching.hpp"

namespace memkernel {

namespace {

std::vector<ComplexMatrix> matrices(const MapFamily& f) {
  std::vector<ComplexMatrix> out;
  out.reserve(f.size());
  for (const auto& s : f.samples()) out.push_back(s.matrix());
  return out;
}

Trajectory empty_trajectory(const TimeGrid& grid) {
  Trajectory t{grid, {}, {}, {}, {}};
  t.states.reserve(grid.size());
  t.trace_defect.reserve(grid.size());
  t.min_choi_eig.reserve(grid.size());
  t.purity.reserve(grid.size());
  return t;
}

void push_state(Trajectory& traj, ComplexMatrix rho, double min_choi) {
  traj.trace_defect.push_back(std::abs(rho.trace() - Complex(1.0)));
  traj.purity.push_back((rho * rho).trace().real());
  traj.min_choi_eig.push_back(min_choi);
  traj.states.push_back(std::move(rho));
}

}  // namespace

SeriesResult solve_series(const LegitimatePair& p, int order) {
  if (order < 0) throw ValidationError("solve_series: order must be nonnegative");
  SeriesResult r{p.N(), {}, 0.0};
  r.partials.reserve(static_cast<std::size_t>(order) + 1);
  r.partials.push_back(p.N());
  MapFamily term = p.N();
  for (int m = 1; m <= order; ++m) {
    term = convolve(term, p.Q());
    r.partials.push_back(r.partials.back() + term);
  }
  r.tail_norm = max_norm(term);
  r.lambda = r.partials.back();
  return r;
}

MapFamily solve_volterra(const LegitimatePair& p) {
  auto x = detail::march_volterra(matrices(p.N()), matrices(p.Q()), p.grid().step());
  std::vector<Superoperator> out;
  out.reserve(x.size());
  for (auto& m : x) out.emplace_back(std::move(m));
  return MapFamily(p.grid(), std::move(out));
}

Trajectory solve_inhomogeneous(const Kernel& k, const MapFamily& inhomogeneity, const DensityMatrix& rho0) {
  require_same_grid(k.regular, inhomogeneity, "solve_inhomogeneous");
  const int d = k.regular.dim();
  if (k.delta_weight.dim() != d) throw ValidationError("solve_inhomogeneous: delta weight dimension mismatch");
  if (rho0.dim() != d) throw ValidationError("solve_inhomogeneous: initial state dimension mismatch");

  const TimeGrid& grid = k.regular.grid();
  const double dt = grid.step();
  const std::size_t size = grid.size();
  const ComplexVector r0 = vectorize(rho0.matrix());
  const ComplexMatrix& w = k.delta_weight.matrix();

  std::vector<ComplexVector> source(size);
  for (std::size_t i = 0; i < size; ++i) source[i] = inhomogeneity[i].matrix() * r0;

  // Memory integral at node i, excluding the j = 0 term that multiplies r_i.
  std::vector<ComplexVector> r;
  r.reserve(size);
  r.push_back(r0);
  auto history = [&](std::size_t i) {
    ComplexVector acc = ComplexVector::Zero(r0.size());
    for (std::size_t j = 1; j <= i; ++j) {
      acc.noalias() += quadrature::trapezoid_weight(j, i, dt) * (k.regular[j].matrix() * r[i - j]);
    }
    return acc;
  };
  auto rate = [&](std::size_t i, const ComplexVector& ri, const ComplexVector& hist) -> ComplexVector {
    ComplexVector out = w * ri + hist + source[i];
    if (i > 0) out.noalias() += (0.5 * dt) * (k.regular[0].matrix() * ri);
    return out;
  };

  ComplexVector rate_k = rate(0, r0, ComplexVector::Zero(r0.size()));
  for (std::size_t i = 0; i + 1 < size; ++i) {
    const ComplexVector hist = history(i + 1);
    const ComplexVector predicted = r[i] + dt * rate_k;
    const ComplexVector corrected = r[i] + (0.5 * dt) * (rate_k + rate(i + 1, predicted, hist));
    const ComplexVector rate_next = rate(i + 1, corrected, hist);
    r.push_back(corrected);
    rate_k = rate_next;
  }

  Trajectory traj = empty_trajectory(grid);
  for (const auto& ri : r) push_state(traj, devectorize(ri, d), std::numeric_limits<double>::quiet_NaN());
  return traj;
}

Trajectory solve_inhomogeneous(const Kernel& k, const LegitimatePair& p, const DensityMatrix& rho0) {
  return solve_inhomogeneous(k, p.n_derivative(), rho0);
}

Kernel new_kernel_commuting(const LegitimatePair& p, std::span<const double> s_samples, double tol) {
  static constexpr std::array<double, 3> kDefaultSamples{0.5, 1.0, 2.0};
  if (s_samples.empty()) s_samples = kDefaultSamples;
  for (double s : s_samples) {
    const ComplexMatrix n = laplace_eval(p.N(), s).value.matrix();
    const ComplexMatrix q = laplace_eval(p.Q(), s).value.matrix();
    const double comm = (n * q - q * n).norm();
    if (comm > tol * n.norm() * q.norm()) {
      throw NumericalError("new_kernel_commuting: Laplace transforms of N and Q do not commute at s = " +
                           std::to_string(s) + " (commutator norm " + std::to_string(comm) + ")");
    }
  }
  return Kernel{differentiate(p.Q()), p.Q()[0]};
}

KernelEquation collision_equation(const MapFamily& f, const MapFamily& f_dot, const Superoperator& channel,
                                  const WaitingTime& w) {
  require_same_grid(f, f_dot, "collision_equation");
  if (channel.dim() != f.dim()) throw ValidationError("collision_equation: channel dimension mismatch");
  const TimeGrid& grid = f.grid();
  const auto dens = w.density(grid);
  const auto dens_dot = w.density_derivative(grid);
  const auto surv = w.survival(grid);
  std::vector<Superoperator> regular, source;
  regular.reserve(grid.size());
  source.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    regular.push_back((dens_dot[k] * f[k] + dens[k] * f_dot[k]) * channel);
    source.push_back(-dens[k] * f[k] + surv[k] * f_dot[k]);
  }
  return {Kernel{MapFamily(grid, std::move(regular)), dens[0] * (f[0] * channel)},
          MapFamily(grid, std::move(source))};
}

NzKernelLaplace nz_kernel_laplace(const LegitimatePair& p, double s) {
  const int d = p.dim();
  const ComplexMatrix n = laplace_eval(p.N(), s).value.matrix();
  const ComplexMatrix q = laplace_eval(p.Q(), s).value.matrix();
  const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);

  NzKernelLaplace r;
  r.condition = condition_number(n);
  if (!(r.condition <= 1e12)) {
    throw NumericalError("nz_kernel_laplace: Laplace transform of N is numerically singular at s = " +
                         std::to_string(s));
  }
  const ComplexMatrix n_inv = n.partialPivLu().inverse();
  r.k_nz = Superoperator(ComplexMatrix(s * id - (id - q) * n_inv));
  r.k_new = Superoperator(ComplexMatrix(s * n * q * n_inv));
  r.trace_residual_nz = dual_on_identity(r.k_nz).norm();
  r.trace_residual_new = dual_on_identity(r.k_new).norm();
  return r;
}

Trajectory evolve_state(const MapFamily& lambda, const DensityMatrix& rho0) {
  if (lambda.dim() != rho0.dim()) throw ValidationError("evolve_state: dimension mismatch");
  Trajectory traj = empty_trajectory(lambda.grid());
  for (const auto& map : lambda.samples()) push_state(traj, map.apply(rho0.matrix()), min_choi_eigenvalue(map));
  return traj;
}

MapFamily semigroup_reference(const Superoperator& generator, const TimeGrid& grid) {
  std::vector<Superoperator> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out.emplace_back(expm(generator.matrix() * grid.time(k)));
  return MapFamily(grid, std::move(out));
}

double max_state_gap(const Trajectory& a, const Trajectory& b) {
  if (!(a.grid == b.grid)) throw ValidationError("max_state_gap: grids differ");
  double gap = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k) gap = std::max(gap, (a.states[k] - b.states[k]).norm());
  return gap;
}

}  // namespace memkernel
