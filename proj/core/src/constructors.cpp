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

#include "memkernel/constructors.hpp"

#include <cmath>
#include <string>

#include "memkernel/errors.hpp"
#include "memkernel/linalg.hpp"
#include "memkernel/quadrature.hpp"

namespace memkernel {

namespace {

void require_cptp_family(const MapFamily& f, const char* what, double tol) {
  const int d = f.dim();
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!is_cptp(f[k], tol)) throw CpViolation(std::string(what) + ": map is not CPTP at node " + std::to_string(k));
  }
  if ((f[0].matrix() - Superoperator::identity(d).matrix()).norm() > tol) {
    throw ValidationError(std::string(what) + ": family must start at the identity map");
  }
}

void require_channel(const Superoperator& e, const char* what) {
  if (!is_cptp(e, default_cp_tolerance(e.dim()))) throw CpViolation(std::string(what) + ": channel is not CPTP");
}

std::vector<Superoperator> scaled(const std::vector<double>& w, const Superoperator& s) {
  std::vector<Superoperator> out;
  out.reserve(w.size());
  for (double x : w) out.push_back(x * s);
  return out;
}

}  // namespace

// --- GKSL ------------------------------------------------------------------

void GkslSpec::validate() const {
  const auto d = hamiltonian.rows();
  if (d == 0 || hamiltonian.cols() != d) throw ValidationError("GKSL: Hamiltonian must be square and nonempty");
  if (!is_hermitian(hamiltonian, 1e-12 * std::max(1.0, hamiltonian.norm()))) {
    throw ValidationError("GKSL: Hamiltonian is not Hermitian");
  }
  for (const auto& k : jumps) {
    if (k.rows() != d || k.cols() != d) throw ValidationError("GKSL: jump operator dimension mismatch");
  }
}

GkslSplit split_generator(const GkslSpec& spec) {
  spec.validate();
  const int d = spec.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix loss = ComplexMatrix::Zero(d, d);
  Superoperator b = Superoperator::zero(d);
  for (const auto& k : spec.jumps) {
    b += Superoperator::conjugation(k);
    loss += k.adjoint() * k;
  }
  const ComplexMatrix c = spec.hamiltonian - 0.5 * kI * loss;
  Superoperator z = kI * (Superoperator::sandwich(c, id) - Superoperator::sandwich(id, c.adjoint()));
  return {std::move(b), std::move(z), c};
}

Superoperator gksl_generator(const GkslSpec& spec) {
  const GkslSplit parts = split_generator(spec);
  return parts.jump_part - parts.decay_part;
}

LegitimatePair semigroup_pair(const GkslSpec& spec, const TimeGrid& grid,
                              const std::optional<Superoperator>& extra_generator) {
  const GkslSplit parts = split_generator(spec);
  const int d = spec.dim();
  std::vector<Superoperator> n(grid.size());
  Superoperator rate = -parts.decay_part;
  if (extra_generator) {
    if (extra_generator->dim() != d) throw ValidationError("semigroup_pair: extra generator dimension mismatch");
    rate += *extra_generator;
    for (std::size_t k = 0; k < grid.size(); ++k) n[k] = Superoperator(expm(rate.matrix() * grid.time(k)));
  } else {
    // e^{−Zt}[ρ] = e^{−iCt} ρ e^{iC†t}
    for (std::size_t k = 0; k < grid.size(); ++k) {
      n[k] = Superoperator::conjugation(expm(-kI * grid.time(k) * parts.effective_hamiltonian));
    }
  }
  MapFamily n_family(grid, std::move(n));
  MapFamily n_dot = compose(rate, n_family);
  MapFamily q = compose(parts.jump_part, n_family);
  return LegitimatePair(std::move(n_family), std::move(q), extra_generator ? "semigroup+generator" : "semigroup",
                        std::move(n_dot));
}

LegitimatePair reduced_semigroup_pair(const GkslSpec& composite, const DensityMatrix& omega, const TimeGrid& grid) {
  if (composite.dim() % omega.dim() != 0) {
    throw ValidationError("reduced_semigroup_pair: composite dimension is not a multiple of the environment dimension");
  }
  return reduce_pair(semigroup_pair(composite, grid), omega);
}

// --- waiting times -----------------------------------------------------------

WaitingTime WaitingTime::exponential(double rate) {
  if (!(rate > 0.0)) throw ValidationError("exponential waiting time needs a positive rate");
  return WaitingTime(Exponential{rate});
}

WaitingTime WaitingTime::oscillating(double omega) {
  if (!(omega > 0.0)) throw ValidationError("oscillating waiting time needs a positive frequency");
  return WaitingTime(Oscillating{omega});
}

WaitingTime WaitingTime::tabulated(const TimeGrid& grid, std::vector<double> density) {
  if (density.size() != grid.size()) throw ValidationError("tabulated waiting time: one value per node required");
  const auto mass = quadrature::cumulative_trapezoid(density, grid.step());
  const double mass_tol = default_tr_tolerance(grid);
  for (double m : mass) {
    if (m < -mass_tol || m > 1.0 + mass_tol) {
      throw ValidationError("tabulated waiting time: cumulative mass leaves [0, 1]");
    }
  }
  return WaitingTime(Tabulated{grid, std::move(density)});
}

bool WaitingTime::nonnegative() const {
  if (std::holds_alternative<Exponential>(kind_)) return true;
  if (std::holds_alternative<Oscillating>(kind_)) return false;
  for (double f : std::get<Tabulated>(kind_).density) {
    if (f < 0.0) return false;
  }
  return true;
}

void WaitingTime::require_grid(const TimeGrid& grid) const {
  if (const auto* t = std::get_if<Tabulated>(&kind_); t && !(t->grid == grid)) {
    throw ValidationError("tabulated waiting time used on a different grid");
  }
}

std::vector<double> WaitingTime::density(const TimeGrid& grid) const {
  require_grid(grid);
  std::vector<double> out(grid.size());
  if (const auto* e = std::get_if<Exponential>(&kind_)) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = e->rate * std::exp(-e->rate * grid.time(k));
  } else if (const auto* o = std::get_if<Oscillating>(&kind_)) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = 0.5 * o->omega * std::sin(o->omega * grid.time(k));
  } else {
    out = std::get<Tabulated>(kind_).density;
  }
  return out;
}

std::vector<double> WaitingTime::survival(const TimeGrid& grid) const {
  require_grid(grid);
  std::vector<double> out(grid.size());
  if (const auto* e = std::get_if<Exponential>(&kind_)) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::exp(-e->rate * grid.time(k));
  } else if (const auto* o = std::get_if<Oscillating>(&kind_)) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = 0.5 * (1.0 + std::cos(o->omega * grid.time(k)));
  } else {
    const auto mass = quadrature::cumulative_trapezoid(std::get<Tabulated>(kind_).density, grid.step());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = 1.0 - mass[k];
  }
  return out;
}

std::vector<double> WaitingTime::density_derivative(const TimeGrid& grid) const {
  require_grid(grid);
  std::vector<double> out(grid.size());
  if (const auto* e = std::get_if<Exponential>(&kind_)) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = -e->rate * e->rate * std::exp(-e->rate * grid.time(k));
  } else if (const auto* o = std::get_if<Oscillating>(&kind_)) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = 0.5 * o->omega * o->omega * std::cos(o->omega * grid.time(k));
    }
  } else {
    out = quadrature::differentiate(std::get<Tabulated>(kind_).density, grid.step());
  }
  return out;
}

// --- semi-Markov -------------------------------------------------------------

Superoperator projective_channel(const DensityMatrix& target) { return Superoperator::replacement(target.matrix()); }

LegitimatePair semimarkov_pair(const Superoperator& channel, const WaitingTime& w, const TimeGrid& grid) {
  require_channel(channel, "semimarkov_pair");
  const int d = channel.dim();
  const auto f = w.density(grid);
  const auto g = w.survival(grid);
  std::vector<double> minus_f(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) minus_f[k] = -f[k];
  const Superoperator id = Superoperator::identity(d);
  return LegitimatePair(MapFamily(grid, scaled(g, id)), MapFamily(grid, scaled(f, channel)), "semimarkov",
                        MapFamily(grid, scaled(minus_f, id)));
}

MapFamily hadamard_family(const std::function<ComplexMatrix(double)>& a, const TimeGrid& grid,
                          std::optional<double> tol) {
  std::vector<Superoperator> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const ComplexMatrix ak = a(grid.time(k));
    if (ak.rows() == 0 || ak.rows() != ak.cols()) throw ValidationError("hadamard_family: a(t) must be square");
    const int d = static_cast<int>(ak.rows());
    const double psd_tol = tol.value_or(default_cp_tolerance(d));
    if (k == 0 && (ak - ComplexMatrix::Ones(d, d)).norm() > 1e-12 * d) {
      throw ValidationError("hadamard_family: a(0) must be the all-ones matrix");
    }
    if (!is_hermitian(ak, psd_tol) || min_hermitian_eigenvalue(ak) < -psd_tol) {
      throw CpViolation("hadamard_family: a(t) is not positive semidefinite at node " + std::to_string(k));
    }
    out.push_back(Superoperator::hadamard(ak));
  }
  return MapFamily(grid, std::move(out));
}

LegitimatePair hadamard_semimarkov_pair(const Superoperator& channel, const WaitingTime& w, double dephasing_rate,
                                        const TimeGrid& grid) {
  require_channel(channel, "hadamard_semimarkov_pair");
  if (!(dephasing_rate >= 0.0)) throw ValidationError("hadamard_semimarkov_pair: dephasing rate must be >= 0");
  const int d = channel.dim();
  const auto f = w.density(grid);
  const auto g = w.survival(grid);
  auto coherence = [d](double decay) {
    ComplexMatrix m = ComplexMatrix::Constant(d, d, decay);
    m.diagonal().setOnes();
    return m;
  };
  std::vector<Superoperator> n_dot;
  n_dot.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k);
    const double decay = std::exp(-dephasing_rate * t);
    ComplexMatrix m_dot = ComplexMatrix::Constant(d, d, -dephasing_rate * decay);
    m_dot.diagonal().setZero();
    n_dot.push_back(Superoperator::hadamard(-f[k] * coherence(decay) + g[k] * m_dot));
  }
  // a(t) = g(t)·M(t) is PSD whenever g ≥ 0; hadamard_family enforces it.
  MapFamily n = hadamard_family(
      [&](double t) {
        const auto k = static_cast<std::size_t>(std::lround(t / grid.step()));
        return ComplexMatrix(g[k] * coherence(std::exp(-dephasing_rate * t)));
      },
      grid);
  return LegitimatePair(std::move(n), MapFamily(grid, scaled(f, channel)), "hadamard_semimarkov",
                        MapFamily(grid, std::move(n_dot)));
}

// --- collision models --------------------------------------------------------

LegitimatePair collision_pair(const MapFamily& f, double gamma, const std::optional<MapFamily>& f_dot) {
  if (!(gamma > 0.0)) throw ValidationError("collision_pair: rate must be positive");
  require_cptp_family(f, "collision_pair", default_cp_tolerance(f.dim()));
  const TimeGrid& grid = f.grid();
  std::vector<double> decay(grid.size());
  for (std::size_t k = 0; k < decay.size(); ++k) decay[k] = std::exp(-gamma * grid.time(k));
  MapFamily n = scale(f, decay);
  MapFamily q = gamma * n;
  std::optional<MapFamily> n_dot;
  if (f_dot) {
    require_same_grid(f, *f_dot, "collision_pair derivative");
    n_dot = scale(*f_dot, decay) - gamma * n;
  }
  return LegitimatePair(std::move(n), std::move(q), "collision", std::move(n_dot));
}

LegitimatePair generalized_collision_pair(const MapFamily& f, const Superoperator& channel, const WaitingTime& w,
                                          const std::optional<MapFamily>& f_dot) {
  require_cptp_family(f, "generalized_collision_pair", default_cp_tolerance(f.dim()));
  require_channel(channel, "generalized_collision_pair");
  const TimeGrid& grid = f.grid();
  const auto dens = w.density(grid);
  const auto surv = w.survival(grid);
  MapFamily n = scale(f, surv);
  MapFamily q = scale(compose(f, channel), dens);
  std::optional<MapFamily> n_dot;
  if (f_dot) {
    require_same_grid(f, *f_dot, "generalized_collision_pair derivative");
    std::vector<double> minus_f(dens.size());
    for (std::size_t k = 0; k < dens.size(); ++k) minus_f[k] = -dens[k];
    n_dot = scale(f, minus_f) + scale(*f_dot, surv);
  }
  return LegitimatePair(std::move(n), std::move(q), "generalized_collision", std::move(n_dot));
}

NoncommutativeParts noncommutative_parts(const MapFamily& phi, const std::function<ComplexMatrix(double)>& hamiltonian,
                                         std::optional<double> tol) {
  const TimeGrid& grid = phi.grid();
  const int d = phi.dim();
  const double cp_tol = tol.value_or(default_cp_tolerance(d));
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  std::vector<ComplexMatrix> x(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!is_cp(phi[k], cp_tol)) throw CpViolation("noncommutative_parts: Phi(t) is not CP at node " + std::to_string(k));
    x[k] = dual_on_identity(phi[k]);
  }
  auto hamiltonian_at = [&](double t) {
    ComplexMatrix h = hamiltonian(t);
    if (h.rows() != d || h.cols() != d) throw ValidationError("noncommutative_parts: H(t) dimension mismatch");
    if (!is_hermitian(h, 1e-10 * std::max(1.0, h.norm()))) {
      throw ValidationError("noncommutative_parts: H(t) is not Hermitian");
    }
    return h;
  };

  const double dt = grid.step();
  std::vector<ComplexMatrix> v(grid.size());
  v[0] = id;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const ComplexMatrix c_mid = hamiltonian_at(grid.time(k) + 0.5 * dt) - 0.25 * kI * (x[k] + x[k + 1]);
    v[k + 1] = expm(-kI * dt * c_mid) * v[k];
  }

  std::vector<Superoperator> survival, jump, survival_dot;
  std::vector<double> g(grid.size()), f(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Superoperator gk = Superoperator::conjugation(v[k]);
    const ComplexMatrix c = hamiltonian_at(grid.time(k)) - 0.5 * kI * x[k];
    const Superoperator z = kI * (Superoperator::sandwich(c, id) - Superoperator::sandwich(id, c.adjoint()));
    survival_dot.push_back(-(z * gk));
    jump.push_back(phi[k] * gk);
    g[k] = (v[k].adjoint() * v[k]).trace().real();
    f[k] = (v[k].adjoint() * x[k] * v[k]).trace().real();
    survival.push_back(gk);
  }
  return {MapFamily(grid, std::move(survival)), MapFamily(grid, std::move(jump)),
          MapFamily(grid, std::move(survival_dot)), std::move(g), std::move(f)};
}

LegitimatePair noncommutative_collision_pair(const MapFamily& phi,
                                             const std::function<ComplexMatrix(double)>& hamiltonian,
                                             const MapFamily& outer, const Superoperator& channel,
                                             const std::optional<MapFamily>& outer_dot, std::optional<double> tol) {
  require_same_grid(phi, outer, "noncommutative_collision_pair");
  require_cptp_family(outer, "noncommutative_collision_pair", tol.value_or(default_cp_tolerance(outer.dim())));
  require_channel(channel, "noncommutative_collision_pair");
  NoncommutativeParts parts = noncommutative_parts(phi, hamiltonian, tol);
  MapFamily n = compose(outer, parts.survival);
  MapFamily q = compose(compose(outer, channel), parts.jump);
  std::optional<MapFamily> n_dot;
  if (outer_dot) {
    require_same_grid(outer, *outer_dot, "noncommutative_collision_pair derivative");
    n_dot = compose(*outer_dot, parts.survival) + compose(outer, parts.survival_dot);
  }
  return LegitimatePair(std::move(n), std::move(q), "noncommutative_collision", std::move(n_dot));
}

}  // namespace memkernel
