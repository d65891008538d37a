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

#include "memkernel/superop.hpp"

#include <cmath>
#include <string>

#include "memkernel/errors.hpp"
#include "memkernel/linalg.hpp"

namespace memkernel {

namespace {

int exact_sqrt(Eigen::Index n) {
  const auto r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return (static_cast<Eigen::Index>(r) * r == n) ? r : -1;
}

void require_same_dim(const Superoperator& a, const Superoperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
  }
}

}  // namespace

double default_cp_tolerance(int dim) { return 1e-9 * dim * dim; }

ComplexVector vectorize(const ComplexMatrix& op) {
  return Eigen::Map<const ComplexVector>(op.data(), op.size());
}

ComplexMatrix devectorize(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw ValidationError("devectorize: size is not dim²");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

// --- DensityMatrix ---------------------------------------------------------

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix rho, double tol) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) throw ValidationError("density matrix must be square and nonempty");
  const double d = static_cast<double>(rho.rows());
  if (hermiticity_defect(rho) > tol * d) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol) throw ValidationError("density matrix does not have unit trace");
  if (min_hermitian_eigenvalue(rho) < -tol) throw ValidationError("density matrix is not positive semidefinite");
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("pure state vector is zero");
  const ComplexVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
  if (k < 0 || k >= dim) throw ValidationError("basis_state: index out of range");
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho(k, k) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw ValidationError("maximally_mixed: dim must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

// --- KrausSet --------------------------------------------------------------

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("Kraus set is empty");
  const auto d = ops_.front().rows();
  if (d == 0) throw ValidationError("Kraus operators must be nonempty");
  for (const auto& k : ops_) {
    if (k.rows() != d || k.cols() != d) throw ValidationError("Kraus operators must share a square dimension");
  }
}

// --- Superoperator ---------------------------------------------------------

Superoperator::Superoperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ValidationError("superoperator matrix must be square");
  dim_ = exact_sqrt(m_.rows());
  if (dim_ < 1) throw ValidationError("superoperator size is not a perfect square");
}

Superoperator Superoperator::identity(int dim) {
  return Superoperator(ComplexMatrix::Identity(dim * dim, dim * dim));
}

Superoperator Superoperator::zero(int dim) { return Superoperator(ComplexMatrix::Zero(dim * dim, dim * dim)); }

Superoperator Superoperator::sandwich(const ComplexMatrix& x, const ComplexMatrix& y) {
  return Superoperator(kron(y.transpose(), x));
}

Superoperator Superoperator::conjugation(const ComplexMatrix& u) { return Superoperator(kron(u.conjugate(), u)); }

Superoperator Superoperator::replacement(const ComplexMatrix& sigma) {
  const int d = static_cast<int>(sigma.rows());
  // Tr ρ = vec(I)† vec(ρ)
  const ComplexVector id = vectorize(ComplexMatrix::Identity(d, d));
  return Superoperator(vectorize(sigma) * id.adjoint());
}

Superoperator Superoperator::hadamard(const ComplexMatrix& a) {
  return Superoperator(ComplexMatrix(vectorize(a).asDiagonal()));
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& op) const {
  if (op.rows() != dim_ || op.cols() != dim_) {
    throw ValidationError("apply: operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                          ", map dimension is " + std::to_string(dim_));
  }
  return devectorize(m_ * vectorize(op), dim_);
}

Superoperator& Superoperator::operator+=(const Superoperator& rhs) {
  require_same_dim(*this, rhs, "superoperator sum");
  m_ += rhs.m_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& rhs) {
  require_same_dim(*this, rhs, "superoperator difference");
  m_ -= rhs.m_;
  return *this;
}

Superoperator& Superoperator::operator*=(Complex c) {
  m_ *= c;
  return *this;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  require_same_dim(a, b, "superoperator composition");
  return Superoperator(a.m_ * b.m_);
}

double norm(const Superoperator& s) { return s.matrix().norm(); }

Superoperator kraus_to_superop(const KrausSet& ks) {
  const int d = ks.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : ks.operators()) m += kron(k.conjugate(), k);
  return Superoperator(std::move(m));
}

// --- Choi and duals --------------------------------------------------------

ChoiMatrix::ChoiMatrix(const Superoperator& s) : dim_(s.dim()) {
  const int d = dim_;
  const ComplexMatrix& m = s.matrix();
  m_.resize(d * d, d * d);
  // C(i·d + a, j·d + b) = S[E_ij](a, b) = M(a + b·d, i + j·d)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) m_(i * d + a, j * d + b) = m(a + b * d, i + j * d);
}

Superoperator dual(const Superoperator& s) { return Superoperator(s.matrix().adjoint()); }

ComplexMatrix dual_on_identity(const Superoperator& s) {
  const int d = s.dim();
  return devectorize(s.matrix().adjoint() * vectorize(ComplexMatrix::Identity(d, d)), d);
}

double min_choi_eigenvalue(const Superoperator& s) { return min_hermitian_eigenvalue(ChoiMatrix(s).matrix()); }

bool is_cp(const Superoperator& s, double tol) { return min_choi_eigenvalue(s) >= -tol; }

bool is_cptp(const Superoperator& s, double tol) {
  const int d = s.dim();
  return is_cp(s, tol) && (dual_on_identity(s) - ComplexMatrix::Identity(d, d)).norm() <= tol;
}

PropertyReport check_map_properties(const Superoperator& s, double tol) {
  if (!(tol > 0.0)) throw ValidationError("check_map_properties: tol must be positive");
  const int d = s.dim();
  const ChoiMatrix c(s);
  const ComplexMatrix star_id = dual_on_identity(s);

  PropertyReport r;
  r.min_choi_eig = min_hermitian_eigenvalue(c.matrix());
  r.hermiticity_defect = hermiticity_defect(c.matrix());
  r.trace_defect = (star_id - ComplexMatrix::Identity(d, d)).norm();
  r.trace_residual = star_id.norm();
  r.cp = r.min_choi_eig >= -tol;
  r.hermiticity_preserving = r.hermiticity_defect <= tol;
  r.trace_preserving = r.trace_defect <= tol;
  r.trace_annihilating = r.trace_residual <= tol;
  return r;
}

double cp_norm(const Superoperator& s) { return max_hermitian_eigenvalue(dual_on_identity(s)); }

// --- composite spaces ------------------------------------------------------

ComplexMatrix partial_trace_env(const ComplexMatrix& op, int dim_sys, int dim_env) {
  if (op.rows() != static_cast<Eigen::Index>(dim_sys) * dim_env || op.cols() != op.rows()) {
    throw ValidationError("partial_trace_env: operator size does not factor as d_S·d_E");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_sys, dim_sys);
  for (int a = 0; a < dim_sys; ++a)
    for (int b = 0; b < dim_sys; ++b)
      for (int e = 0; e < dim_env; ++e) out(a, b) += op(a * dim_env + e, b * dim_env + e);
  return out;
}

Superoperator reduce_superop(const Superoperator& composite, const DensityMatrix& omega) {
  const int d_env = omega.dim();
  const int d_total = composite.dim();
  if (d_total % d_env != 0) {
    throw ValidationError("reduce_superop: composite dimension " + std::to_string(d_total) +
                          " is not divisible by environment dimension " + std::to_string(d_env));
  }
  const int d_sys = d_total / d_env;
  ComplexMatrix m(d_sys * d_sys, d_sys * d_sys);
  for (int j = 0; j < d_sys; ++j) {
    for (int i = 0; i < d_sys; ++i) {
      ComplexMatrix e_ij = ComplexMatrix::Zero(d_sys, d_sys);
      e_ij(i, j) = 1.0;
      const ComplexMatrix out = partial_trace_env(composite.apply(kron(e_ij, omega.matrix())), d_sys, d_env);
      m.col(i + j * d_sys) = vectorize(out);
    }
  }
  return Superoperator(std::move(m));
}

Superoperator tensor(const Superoperator& a, const Superoperator& b) {
  const int da = a.dim();
  const int db = b.dim();
  const int d = da * db;
  ComplexMatrix m(d * d, d * d);
  for (int q = 0; q < da; ++q)
    for (int p = 0; p < da; ++p) {
      ComplexMatrix e_pq = ComplexMatrix::Zero(da, da);
      e_pq(p, q) = 1.0;
      const ComplexMatrix ap = a.apply(e_pq);
      for (int f = 0; f < db; ++f)
        for (int e = 0; e < db; ++e) {
          ComplexMatrix e_ef = ComplexMatrix::Zero(db, db);
          e_ef(e, f) = 1.0;
          const ComplexMatrix out = kron(ap, b.apply(e_ef));
          // input basis |p e⟩⟨q f| has row p·db + e, column q·db + f
          const int row = p * db + e;
          const int col = q * db + f;
          m.col(row + col * d) = vectorize(out);
        }
    }
  return Superoperator(std::move(m));
}

}  // namespace memkernel
