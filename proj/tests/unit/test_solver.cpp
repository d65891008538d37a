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


#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "memkernel/constructors.hpp"
#include "memkernel/errors.hpp"
#include "memkernel/linalg.hpp"
#include "memkernel/random.hpp"
#include "memkernel/solver.hpp"
#include "test_helpers.hpp"

namespace mk = memkernel;
using mk::ComplexMatrix;
using mk::DensityMatrix;
using mk::LegitimatePair;
using mk::MapFamily;
using mk::Superoperator;
using mk::TimeGrid;
using namespace memkernel::testing;

namespace {

LegitimatePair example1_pair(const TimeGrid& grid) {
  const auto channel = mk::projective_channel(DensityMatrix::basis_state(2, 0));
  return mk::semimarkov_pair(channel, mk::WaitingTime::oscillating(1.0), grid);
}

double max_gap_to_oracle(const MapFamily& f, const std::function<ComplexMatrix(double)>& oracle) {
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    worst = std::max(worst, (f[k].matrix() - oracle(f.grid().time(k))).norm());
  }
  return worst;
}

}  // namespace

TEST(SolveSeries, ZeroQReturnsN) {
  const TimeGrid g(2.0, 100);
  const auto n = mk::semigroup_pair(mk::GkslSpec{sigma_z(), {}}, g).N();
  const LegitimatePair p(n, MapFamily::zero(g, 2), "static");
  for (int m : {0, 3, 10}) {
    const auto r = mk::solve_series(p, m);
    EXPECT_EQ(mk::max_distance(r.lambda, n), 0.0);
    EXPECT_EQ(r.partials.size(), static_cast<std::size_t>(m) + 1);
    EXPECT_EQ(r.tail_norm, m == 0 ? mk::max_norm(n) : 0.0);
  }
}

TEST(SolveSeries, DampingMatchesExponential) {
  const TimeGrid g(5.0, 1000);
  const auto spec = damping_spec(1.0);
  const auto r = mk::solve_series(mk::semigroup_pair(spec, g), 25);
  const auto l = mk::gksl_generator(spec);
  EXPECT_LE(max_gap_to_oracle(r.lambda, [&](double t) { return expm_by_eigen(l.matrix() * t); }), 1e-3);
  EXPECT_LE(r.tail_norm, 1e-6);
}

TEST(SolveSeries, PartialSumsAreQuantumOperations) {
  const TimeGrid g(2.0, 400);
  const auto p = mk::semigroup_pair(damping_spec(1.0), g);
  const auto r = mk::solve_series(p, 8);
  mk::Rng rng(4);
  const auto rho = mk::random_density_matrix(2, rng);
  std::vector<double> prev(g.size(), 0.0);
  for (const auto& s : r.partials) {
    for (std::size_t k = 0; k < g.size(); k += 20) {
      EXPECT_GE(mk::min_choi_eigenvalue(s[k]), -1e-6);
      const double tr = s[k].apply(rho.matrix()).trace().real();
      EXPECT_LE(tr, 1.0 + 1e-6);
      EXPECT_GE(tr, prev[k] - 1e-12);
      prev[k] = tr;
    }
  }
}

TEST(SolveSeries, RejectsNegativeOrder) {
  const TimeGrid g(1.0, 10);
  EXPECT_THROW(mk::solve_series(mk::semigroup_pair(damping_spec(1.0), g), -1), mk::ValidationError);
}

TEST(SolveVolterra, ZeroQReturnsN) {
  const TimeGrid g(1.0, 50);
  const auto n = mk::semigroup_pair(damping_spec(1.0), g).N();
  EXPECT_EQ(mk::max_distance(mk::solve_volterra(LegitimatePair(n, MapFamily::zero(g, 2), "x")), n), 0.0);
}

TEST(SolveVolterra, Example1ClosedForm) {
  const TimeGrid g(4.0 * M_PI, 2000);
  const auto lambda = mk::solve_volterra(example1_pair(g));
  const auto e = mk::projective_channel(DensityMatrix::basis_state(2, 0));
  const double gap = max_gap_to_oracle(lambda, [&](double t) {
    return ComplexMatrix(0.5 * (1.0 + std::cos(t)) * ComplexMatrix::Identity(4, 4) +
                         0.5 * (1.0 - std::cos(t)) * e.matrix());
  });
  EXPECT_LE(gap, 1e-3);
}

TEST(SolveVolterra, SecondOrderConvergence) {
  const auto spec = damping_spec(1.0);
  const auto l = mk::gksl_generator(spec);
  auto gap = [&](int n) {
    const TimeGrid g(5.0, n);
    return max_gap_to_oracle(mk::solve_volterra(mk::semigroup_pair(spec, g)),
                             [&](double t) { return expm_by_eigen(l.matrix() * t); });
  };
  const double coarse = gap(500);
  const double fine = gap(1000);
  EXPECT_GE(coarse / fine, 3.5);
}

TEST(SolveVolterra, SingularMarchingFactorRaises) {
  const TimeGrid g(1.0, 10);
  const auto q = MapFamily::constant(g, Superoperator::identity(2) * (2.0 / g.step()));
  const LegitimatePair p(MapFamily::constant(g, Superoperator::identity(2)), q, "singular");
  EXPECT_THROW(mk::solve_volterra(p), mk::NumericalError);
}

TEST(SolveInhomogeneous, StaticEvolution) {
  const TimeGrid g(1.0, 20);
  mk::Rng rng(1);
  const auto rho0 = mk::random_density_matrix(2, rng);
  const mk::Kernel k{MapFamily::zero(g, 2), Superoperator::zero(2)};
  const auto traj = mk::solve_inhomogeneous(k, MapFamily::zero(g, 2), rho0);
  for (const auto& s : traj.states) EXPECT_LT((s - rho0.matrix()).norm(), 1e-15);
  for (double m : traj.min_choi_eig) EXPECT_TRUE(std::isnan(m));
}

TEST(SolveInhomogeneous, Example1MatchesVolterra) {
  const TimeGrid g(4.0 * M_PI, 2000);
  const auto p = example1_pair(g);
  const auto rho0 = DensityMatrix::basis_state(2, 1);
  const auto from_kernel = mk::solve_inhomogeneous(mk::new_kernel_commuting(p), p, rho0);
  const auto from_map = mk::evolve_state(mk::solve_volterra(p), rho0);
  EXPECT_LE(mk::max_state_gap(from_kernel, from_map), 1e-3);
}

TEST(SolveInhomogeneous, NonstandardSemigroupEquation) {
  const TimeGrid g(5.0, 1000);
  const auto spec = damping_spec(1.0);
  const auto split = mk::split_generator(spec);
  const auto p = mk::semigroup_pair(spec, g);
  const mk::Kernel k{mk::compose(-split.decay_part, mk::compose(p.N(), split.jump_part)), split.jump_part};
  mk::Rng rng(9);
  const auto rho0 = mk::random_density_matrix(2, rng);
  const auto traj = mk::solve_inhomogeneous(k, p, rho0);
  const auto reference = mk::evolve_state(mk::semigroup_reference(mk::gksl_generator(spec), g), rho0);
  EXPECT_LE(mk::max_state_gap(traj, reference), 1e-3);
}

TEST(SolveInhomogeneous, RejectsMismatch) {
  const TimeGrid g(1.0, 10);
  const mk::Kernel k{MapFamily::zero(g, 2), Superoperator::zero(3)};
  EXPECT_THROW(mk::solve_inhomogeneous(k, MapFamily::zero(g, 2), DensityMatrix::basis_state(2, 0)),
               mk::ValidationError);
  const mk::Kernel k2{MapFamily::zero(g, 2), Superoperator::zero(2)};
  EXPECT_THROW(mk::solve_inhomogeneous(k2, MapFamily::zero(g, 2), DensityMatrix::basis_state(3, 0)),
               mk::ValidationError);
}

TEST(NewKernelCommuting, SemiMarkovKernel) {
  const TimeGrid g(10.0, 1000);
  const auto channel = mk::projective_channel(DensityMatrix::basis_state(2, 0));
  const auto w = mk::WaitingTime::exponential(1.5);
  const auto k = mk::new_kernel_commuting(mk::semimarkov_pair(channel, w, g));
  const auto f_dot = w.density_derivative(g);
  EXPECT_LT((k.delta_weight.matrix() - 1.5 * channel.matrix()).norm(), 1e-14);
  for (std::size_t j = 1; j + 1 < g.size(); ++j) {
    EXPECT_LT((k.regular[j].matrix() - f_dot[j] * channel.matrix()).norm(), 1e-3);
  }
}

TEST(NewKernelCommuting, CollisionKernel) {
  const TimeGrid g(10.0, 2000);
  const auto l = mk::gksl_generator(dephasing_spec(1.0));
  const auto f = mk::semigroup_reference(l, g);
  const auto p = mk::collision_pair(f, 1.0, mk::compose(l, f));
  const auto k = mk::new_kernel_commuting(p);
  EXPECT_LT((k.delta_weight.matrix() - ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
  EXPECT_LT(mk::max_distance(k.regular, p.n_derivative()), 1e-4);
}

TEST(NewKernelCommuting, NonCommutingSemigroupRaises) {
  const TimeGrid g(10.0, 1000);
  const mk::GkslSpec spec{sigma_z(), {sigma_x()}};
  const auto split = mk::split_generator(spec);
  EXPECT_GT(((split.jump_part * split.decay_part) - (split.decay_part * split.jump_part)).matrix().norm(), 0.1);
  EXPECT_THROW(mk::new_kernel_commuting(mk::semigroup_pair(spec, g)), mk::NumericalError);
}

TEST(NzKernelLaplace, SemigroupGivesGenerator) {
  const TimeGrid g(20.0, 4000);
  const auto spec = damping_spec(1.0);
  const auto l = mk::gksl_generator(spec);
  for (double s : {0.5, 1.0, 2.0}) {
    const auto r = mk::nz_kernel_laplace(mk::semigroup_pair(spec, g), s);
    EXPECT_LT((r.k_nz.matrix() - l.matrix()).norm(), 1e-4) << "s = " << s;
    EXPECT_LT(r.trace_residual_nz, 1e-4);
  }
}

TEST(NzKernelLaplace, ExponentialWaitingIsConstant) {
  const TimeGrid g(10.0, 4000);
  const auto channel = mk::projective_channel(DensityMatrix::basis_state(2, 0));
  const auto p = mk::semimarkov_pair(channel, mk::WaitingTime::exponential(1.0), g);
  const ComplexMatrix expected = (channel.matrix() - ComplexMatrix::Identity(4, 4));
  for (double s : {0.5, 1.0, 2.0}) {
    EXPECT_LT((mk::nz_kernel_laplace(p, s).k_nz.matrix() - expected).norm(), 1e-4) << "s = " << s;
  }
}

TEST(NzKernelLaplace, OscillatingMemoryFunction) {
  const TimeGrid g(40.0, 4000);
  const auto p = example1_pair(g);
  const auto channel = mk::projective_channel(DensityMatrix::basis_state(2, 0));
  const ComplexMatrix shape = channel.matrix() - ComplexMatrix::Identity(4, 4);
  std::vector<double> kappa;
  for (double t : g.nodes()) kappa.push_back(0.5 * std::cos(t / std::sqrt(2.0)));
  for (double s : {0.5, 1.0, 2.0}) {
    const double closed = 0.5 * s / (s * s + 0.5);
    const auto r = mk::nz_kernel_laplace(p, s);
    EXPECT_LT((r.k_nz.matrix() - closed * shape).norm(), 2e-3) << "s = " << s;
    EXPECT_NEAR(mk::laplace_eval(kappa, g, s), closed, 2e-3);
    const auto k_new = mk::nz_kernel_laplace(p, s).k_new;
    EXPECT_LT((k_new.matrix() - s * mk::laplace_eval(p.Q(), s).value.matrix()).norm(), 2e-3);
  }
}

TEST(NzKernelLaplace, SingularNRaises) {
  const TimeGrid g(1.0, 10);
  const LegitimatePair p(MapFamily::zero(g, 2), MapFamily::zero(g, 2), "zero");
  EXPECT_THROW(mk::nz_kernel_laplace(p, 1.0), mk::NumericalError);
}

TEST(EvolveState, IdentityFamilyIsConstant) {
  const TimeGrid g(1.0, 10);
  mk::Rng rng(12);
  const auto rho0 = mk::random_density_matrix(3, rng);
  const auto traj = mk::evolve_state(MapFamily::constant(g, Superoperator::identity(3)), rho0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(traj.states[k], rho0.matrix());
    EXPECT_NEAR(traj.trace_defect[k], 0.0, 1e-15);
    EXPECT_NEAR(traj.min_choi_eig[k], 0.0, 1e-12);
  }
}

TEST(EvolveState, Example1Populations) {
  const TimeGrid g(4.0 * M_PI, 2000);
  const auto traj = mk::evolve_state(mk::solve_volterra(example1_pair(g)), DensityMatrix::basis_state(2, 1));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = g.time(k);
    EXPECT_NEAR(traj.states[k](0, 0).real(), 0.5 * (1.0 - std::cos(t)), 1e-3);
    EXPECT_NEAR(traj.states[k](1, 1).real(), 0.5 * (1.0 + std::cos(t)), 1e-3);
  }
}

TEST(EvolveState, DampingExcitedPopulation) {
  const TimeGrid g(5.0, 1000);
  const auto traj =
      mk::evolve_state(mk::solve_volterra(mk::semigroup_pair(damping_spec(1.0), g)), DensityMatrix::basis_state(2, 1));
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_NEAR(traj.states[k](1, 1).real(), std::exp(-g.time(k)), 1e-3);
    EXPECT_NEAR(traj.purity[k], (traj.states[k] * traj.states[k]).trace().real(), 1e-14);
  }
}

TEST(SemigroupReference, ZeroGeneratorIsIdentity) {
  const TimeGrid g(1.0, 10);
  EXPECT_EQ(mk::max_distance(mk::semigroup_reference(Superoperator::zero(2), g),
                             MapFamily::constant(g, Superoperator::identity(2))),
            0.0);
}

TEST(SemigroupReference, CommutatorIsUnitary) {
  const TimeGrid g(2.0, 20);
  const auto f = mk::semigroup_reference(mk::gksl_generator(mk::GkslSpec{sigma_z(), {}}), g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const ComplexMatrix u = expm_by_eigen(-mk::kI * sigma_z() * g.time(k));
    EXPECT_LT((f[k].matrix() - Superoperator::conjugation(u).matrix()).norm(), 1e-13);
  }
}

TEST(SemigroupReference, DampingPopulationFactor) {
  const TimeGrid g(1.0, 4);
  const auto f = mk::semigroup_reference(mk::gksl_generator(damping_spec(1.0)), g);
  const ComplexMatrix out = f[4].apply(basis_op(2, 1, 1));
  EXPECT_NEAR(out(1, 1).real(), 0.36787944117144233, 1e-12);
  EXPECT_NEAR(out(0, 0).real(), 0.63212055882855767, 1e-12);
}

TEST(CollisionEquation, MatchesPairSolution) {
  const TimeGrid g(10.0, 2000);
  const auto l = mk::gksl_generator(dephasing_spec(1.0));
  const auto f = mk::semigroup_reference(l, g);
  const auto f_dot = mk::compose(l, f);
  const auto w = mk::WaitingTime::exponential(1.0);
  const auto eq = mk::collision_equation(f, f_dot, Superoperator::identity(2), w);
  mk::Rng rng(31);
  const auto rho0 = mk::random_density_matrix(2, rng);
  const auto direct = mk::solve_inhomogeneous(eq.kernel, eq.inhomogeneity, rho0);
  const auto via_pair = mk::evolve_state(mk::solve_volterra(mk::collision_pair(f, 1.0)), rho0);
  EXPECT_LE(mk::max_state_gap(direct, via_pair), 1e-3);
}
