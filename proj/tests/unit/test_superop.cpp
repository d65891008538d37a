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
#include <random>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "memkernel/constructors.hpp"
#include "memkernel/errors.hpp"
#include "memkernel/linalg.hpp"
#include "memkernel/random.hpp"
#include "memkernel/superop.hpp"
#include "test_helpers.hpp"

namespace mk = memkernel;
using mk::ComplexMatrix;
using mk::Superoperator;
using namespace memkernel::testing;

namespace {

ComplexMatrix amplitude_damping_kraus(double p, int which) {
  ComplexMatrix k = ComplexMatrix::Zero(2, 2);
  if (which == 0) {
    k(0, 0) = 1.0;
    k(1, 1) = std::sqrt(1.0 - p);
  } else {
    k(0, 1) = std::sqrt(p);
  }
  return k;
}

Superoperator amplitude_damping(double p) {
  return mk::kraus_to_superop(mk::KrausSet({amplitude_damping_kraus(p, 0), amplitude_damping_kraus(p, 1)}));
}

ComplexMatrix swap_unitary() {
  ComplexMatrix w = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int e = 0; e < 2; ++e) w(e * 2 + a, a * 2 + e) = 1.0;
  return w;
}

}  // namespace

TEST(Vectorization, ColumnStacking) {
  ComplexMatrix rho(2, 2);
  rho << 1.0, 2.0, 3.0, 4.0;
  const auto v = mk::vectorize(rho);
  EXPECT_EQ(v(0), mk::Complex(1.0));
  EXPECT_EQ(v(1), mk::Complex(3.0));
  EXPECT_EQ(v(2), mk::Complex(2.0));
  EXPECT_EQ(v(3), mk::Complex(4.0));
  EXPECT_EQ(mk::devectorize(v, 2), rho);
}

TEST(Vectorization, SandwichMatchesDirectProduct) {
  mk::Rng rng(7);
  const ComplexMatrix x = mk::random_ginibre(3, 3, rng);
  const ComplexMatrix y = mk::random_ginibre(3, 3, rng);
  const ComplexMatrix rho = mk::random_ginibre(3, 3, rng);
  const ComplexMatrix got = Superoperator::sandwich(x, y).apply(rho);
  EXPECT_LT((got - x * rho * y).norm(), 1e-12);
}

TEST(KrausToSuperop, IdentityKraus) {
  const auto s = mk::kraus_to_superop(mk::KrausSet({ComplexMatrix::Identity(2, 2)}));
  EXPECT_LT((s.matrix() - ComplexMatrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(KrausToSuperop, PauliXConjugationHasRankOneChoi) {
  const auto s = mk::kraus_to_superop(mk::KrausSet({sigma_x()}));
  ComplexMatrix rho(2, 2);
  rho << 0.7, 0.1, 0.1, 0.3;
  EXPECT_LT((s.apply(rho) - sigma_x() * rho * sigma_x()).norm(), 1e-15);
  const auto ev = mk::hermitian_eigenvalues(mk::choi(s).matrix());
  EXPECT_NEAR(ev(3), 2.0, 1e-12);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev(k), 0.0, 1e-12);
}

TEST(KrausToSuperop, AmplitudeDampingChoiSpectrum) {
  const auto s = amplitude_damping(0.3);
  EXPECT_LT((mk::dual_on_identity(s) - ComplexMatrix::Identity(2, 2)).norm(), 1e-14);
  const auto ev = mk::hermitian_eigenvalues(mk::choi(s).matrix());
  const double expected[] = {0.0, 0.0, 0.3, 1.7};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(ev(k), expected[k], 1e-12);
}

TEST(KrausToSuperop, RejectsEmptyAndMismatchedSets) {
  EXPECT_THROW(mk::KrausSet({}), mk::ValidationError);
  EXPECT_THROW(mk::KrausSet({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)}), mk::ValidationError);
}

TEST(Superoperator, RejectsNonSquareDimension) {
  EXPECT_THROW(Superoperator(ComplexMatrix::Zero(3, 3)), mk::ValidationError);
  EXPECT_THROW(Superoperator(ComplexMatrix::Zero(4, 2)), mk::ValidationError);
}

TEST(Choi, IdentityIsUnnormalizedBellProjector) {
  const auto c = mk::choi(Superoperator::identity(2)).matrix();
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) expected(i, j) = 1.0;
  EXPECT_LT((c - expected).norm(), 1e-15);
}

TEST(Choi, TraceMapGivesScaledIdentity) {
  const auto s = Superoperator::replacement(ComplexMatrix::Identity(2, 2) / 2.0);
  EXPECT_LT((mk::choi(s).matrix() - ComplexMatrix::Identity(4, 4) / 2.0).norm(), 1e-15);
}

TEST(Choi, RandomKrausMatchesDefinition) {
  mk::Rng rng(11);
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < 3; ++k) ops.push_back(mk::random_ginibre(3, 3, rng));
  const auto s = mk::kraus_to_superop(mk::KrausSet(ops));
  const ComplexMatrix oracle = choi_by_definition(
      [&](const ComplexMatrix& x) {
        ComplexMatrix out = ComplexMatrix::Zero(3, 3);
        for (const auto& k : ops) out += k * x * k.adjoint();
        return out;
      },
      3);
  const ComplexMatrix c = mk::choi(s).matrix();
  EXPECT_LT((c - oracle).norm(), 1e-12);
  EXPECT_GE(mk::min_hermitian_eigenvalue(c), -1e-10 * 9);
  EXPECT_NEAR(c.trace().real(), mk::dual_on_identity(s).trace().real(), 1e-12);
}

TEST(CheckMapProperties, GeneratorIsTraceAnnihilating) {
  mk::Rng rng(3);
  mk::GkslSpec spec{mk::random_hermitian(3, rng), {mk::random_ginibre(3, 3, rng), mk::random_ginibre(3, 3, rng)}};
  const auto r = mk::check_map_properties(mk::gksl_generator(spec), 1e-9);
  EXPECT_TRUE(r.trace_annihilating);
  EXPECT_TRUE(r.hermiticity_preserving);
  EXPECT_FALSE(r.trace_preserving);
}

TEST(CheckMapProperties, AmplitudeDampingIsCptp) {
  const auto r = mk::check_map_properties(amplitude_damping(0.3), 1e-9);
  EXPECT_TRUE(r.cp);
  EXPECT_TRUE(r.trace_preserving);
  EXPECT_FALSE(r.trace_annihilating);
  EXPECT_NEAR(r.min_choi_eig, 0.0, 1e-12);
  EXPECT_LT(r.trace_defect, 1e-14);
}

TEST(CheckMapProperties, DampingGeneratorIsNotCp) {
  const auto split = mk::split_generator(damping_spec(1.0));
  const auto r = mk::check_map_properties(split.jump_part - split.decay_part, 1e-9);
  EXPECT_FALSE(r.cp);
  EXPECT_TRUE(r.trace_annihilating);
  EXPECT_NEAR(r.min_choi_eig, -(1.0 + std::sqrt(2.0)) / 2.0, 1e-12);
}

TEST(CheckMapProperties, RejectsNonPositiveTolerance) {
  EXPECT_THROW(mk::check_map_properties(Superoperator::identity(2), 0.0), mk::ValidationError);
}

TEST(Dual, UnitaryConjugationDualsToAdjoint) {
  mk::Rng rng(5);
  const ComplexMatrix u = mk::random_unitary(3, rng);
  const auto d = mk::dual(Superoperator::conjugation(u));
  EXPECT_LT((d.matrix() - Superoperator::conjugation(u.adjoint()).matrix()).norm(), 1e-12);
}

TEST(Dual, KrausMapDualsToAdjointKraus) {
  mk::Rng rng(6);
  std::vector<ComplexMatrix> ops, adj;
  for (int k = 0; k < 2; ++k) {
    ops.push_back(mk::random_ginibre(2, 2, rng));
    adj.push_back(ops.back().adjoint());
  }
  const auto d = mk::dual(mk::kraus_to_superop(mk::KrausSet(ops)));
  EXPECT_LT((d.matrix() - mk::kraus_to_superop(mk::KrausSet(adj)).matrix()).norm(), 1e-12);
}

TEST(Dual, DefiningIdentityOnRandomPairs) {
  mk::Rng rng(8);
  const Superoperator s(mk::random_ginibre(9, 9, rng));
  const auto d = mk::dual(s);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = mk::random_ginibre(3, 3, rng);
    const ComplexMatrix b = mk::random_ginibre(3, 3, rng);
    const mk::Complex lhs = (a.adjoint() * s.apply(b)).trace();
    const mk::Complex rhs = (d.apply(a).adjoint() * b).trace();
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST(Apply, IdentityLeavesStateUnchanged) {
  ComplexMatrix rho(2, 2);
  rho << 0.6, mk::Complex(0.1, 0.2), mk::Complex(0.1, -0.2), 0.4;
  EXPECT_EQ(Superoperator::identity(2).apply(rho), rho);
}

TEST(Apply, TraceMapGivesMaximallyMixed) {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  const auto out = Superoperator::replacement(ComplexMatrix::Identity(2, 2) / 2.0).apply(rho);
  EXPECT_LT((out - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(Apply, DampingGeneratorOnExcitedState) {
  const ComplexMatrix excited = basis_op(2, 1, 1);
  const auto out = mk::gksl_generator(damping_spec(1.0)).apply(excited);
  const ComplexMatrix expected = basis_op(2, 0, 0) - basis_op(2, 1, 1);
  EXPECT_LT((out - expected).norm(), 1e-14);
  EXPECT_LT((out - damping_generator_action(excited, 1.0)).norm(), 1e-14);
}

TEST(Apply, RejectsDimensionMismatch) {
  EXPECT_THROW(Superoperator::identity(2).apply(ComplexMatrix::Identity(3, 3)), mk::ValidationError);
}

TEST(ReduceSuperop, IdentityReducesToIdentity) {
  const auto omega = mk::DensityMatrix::basis_state(2, 1);
  const auto r = mk::reduce_superop(Superoperator::identity(4), omega);
  EXPECT_LT((r.matrix() - ComplexMatrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(ReduceSuperop, SwapReplacesSystemWithAncilla) {
  const auto omega = mk::DensityMatrix::basis_state(2, 0);
  const auto r = mk::reduce_superop(Superoperator::conjugation(swap_unitary()), omega);
  const auto expected = Superoperator::replacement(basis_op(2, 0, 0));
  EXPECT_LT((r.matrix() - expected.matrix()).norm(), 1e-15);
}

TEST(ReduceSuperop, ExchangeEvolutionMatchesDirectPartialTrace) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(1, 2) = 1.0;
  h(2, 1) = 1.0;
  const double t = M_PI / 4.0;
  const ComplexMatrix u = expm_by_eigen(-mk::kI * t * h);
  const auto omega = mk::DensityMatrix::basis_state(2, 0);
  const auto r = mk::reduce_superop(Superoperator::conjugation(u), omega);
  ComplexMatrix rho(2, 2);
  rho << 0.25, mk::Complex(0.2, 0.1), mk::Complex(0.2, -0.1), 0.75;
  ComplexMatrix joint = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) joint(a * 2, b * 2) = rho(a, b);
  const ComplexMatrix evolved = u * joint * u.adjoint();
  ComplexMatrix oracle = ComplexMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int e = 0; e < 2; ++e) oracle(a, b) += evolved(a * 2 + e, b * 2 + e);
  EXPECT_LT((r.apply(rho) - oracle).norm(), 1e-12);
}

TEST(ReduceSuperop, RejectsNonFactorizingDimension) {
  EXPECT_THROW(mk::reduce_superop(Superoperator::identity(3), mk::DensityMatrix::basis_state(2, 0)),
               mk::ValidationError);
}

TEST(DensityMatrix, ValidatesInput) {
  ComplexMatrix bad(2, 2);
  bad << 0.5, 0.0, 0.0, 0.6;
  EXPECT_THROW(mk::DensityMatrix::from_matrix(bad), mk::ValidationError);
  bad << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(mk::DensityMatrix::from_matrix(bad), mk::ValidationError);
  bad << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(mk::DensityMatrix::from_matrix(bad), mk::ValidationError);
  EXPECT_NO_THROW(mk::DensityMatrix::from_matrix(ComplexMatrix::Identity(2, 2) / 2.0));
}

TEST(Linalg, ExpmMatchesEigenOracle) {
  mk::Rng rng(21);
  for (int d : {2, 4, 9}) {
    const ComplexMatrix a = mk::random_ginibre(d, d, rng);
    const ComplexMatrix e = mk::expm(a);
    EXPECT_LT((e - expm_by_eigen(a)).norm() / e.norm(), 1e-10);
    EXPECT_LT((e - expm_by_taylor(a)).norm() / e.norm(), 1e-10);
  }
}

TEST(Linalg, KronIsSlowFirstFactor) {
  const ComplexMatrix a = basis_op(2, 1, 0);
  const ComplexMatrix b = basis_op(2, 0, 1);
  const ComplexMatrix k = mk::kron(a, b);
  EXPECT_EQ(k(2 * 1 + 0, 2 * 0 + 1), mk::Complex(1.0));
  EXPECT_DOUBLE_EQ(k.norm(), 1.0);
}
