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

#include "memkernel/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "memkernel/errors.hpp"
#include "memkernel/linalg.hpp"

namespace memkernel {

LegitimatePair::LegitimatePair(MapFamily n, MapFamily q, std::string label, std::optional<MapFamily> n_dot)
    : n_(std::move(n)), q_(std::move(q)), n_dot_(std::move(n_dot)), label_(std::move(label)) {
  require_same_grid(n_, q_, "LegitimatePair");
  if (n_dot_) require_same_grid(n_, *n_dot_, "LegitimatePair derivative");
}

MapFamily LegitimatePair::n_derivative() const { return n_dot_ ? *n_dot_ : differentiate(n_); }

double default_tr_tolerance(const TimeGrid& grid) {
  const double dt = grid.step();
  return std::max(10.0 * dt * dt, 1e-8);
}

LegitimacyReport check_legitimate(const LegitimatePair& p, std::optional<double> tol, std::optional<double> tol_tr) {
  const int d = p.dim();
  LegitimacyReport r;
  r.tol = tol.value_or(default_cp_tolerance(d));
  r.tol_TR = tol_tr.value_or(default_tr_tolerance(p.grid()));
  r.exact_derivative = p.n_dot().has_value();

  r.min_choi_eig_N = std::numeric_limits<double>::infinity();
  r.min_choi_eig_Q = std::numeric_limits<double>::infinity();
  r.monotonicity_min_eig = std::numeric_limits<double>::infinity();

  const MapFamily n_dot = p.n_derivative();
  for (std::size_t k = 0; k < p.grid().size(); ++k) {
    r.min_choi_eig_N = std::min(r.min_choi_eig_N, min_choi_eigenvalue(p.N()[k]));
    r.min_choi_eig_Q = std::min(r.min_choi_eig_Q, min_choi_eigenvalue(p.Q()[k]));
    const ComplexMatrix rate = dual_on_identity(n_dot[k]);
    r.tr_residual_max = std::max(r.tr_residual_max, (dual_on_identity(p.Q()[k]) + rate).norm());
    r.monotonicity_min_eig = std::min(r.monotonicity_min_eig, min_hermitian_eigenvalue(-rate));
  }
  r.initial_identity_defect = (p.N()[0].matrix() - Superoperator::identity(d).matrix()).norm();

  r.cp_N = r.min_choi_eig_N >= -r.tol;
  r.cp_Q = r.min_choi_eig_Q >= -r.tol;
  r.initial_identity = r.initial_identity_defect <= 1e-12 * d;
  r.monotone = r.monotonicity_min_eig >= -r.tol_TR;
  const bool tr_ok = r.tr_residual_max <= r.tol_TR;
  r.verdict = r.cp_N && r.cp_Q && r.initial_identity && r.monotone && tr_ok;

  std::string note;
  auto add = [&note](const std::string& s) { note += note.empty() ? s : "; " + s; };
  if (!r.cp_Q) {
    add("Q(t) is not completely positive: not certified by the sufficient conditions, the dynamical map may still be legal");
  }
  if (!r.cp_N) add("N(t) is not completely positive");
  if (!r.initial_identity) add("N(0) differs from the identity map");
  if (!tr_ok) add("trace condition residual exceeds tolerance");
  if (!r.monotone) add("Tr N(t)[rho] is not monotonically non-increasing");
  if (!r.exact_derivative) add("dN/dt from finite differences");
  r.note = std::move(note);
  return r;
}

std::vector<ConvergenceEntry> check_convergence(const LegitimatePair& p, std::span<const double> s_list,
                                                std::optional<double> tol) {
  if (s_list.empty()) throw ValidationError("check_convergence: s_list is empty");
  const double cp_tol = tol.value_or(default_cp_tolerance(p.dim()));
  std::vector<ConvergenceEntry> out;
  out.reserve(s_list.size());
  for (double s : s_list) {
    const LaplaceValue lt = laplace_eval(p.Q(), s);
    ConvergenceEntry e;
    e.s = s;
    e.truncation_bound = lt.truncation_bound;
    e.cp = is_cp(lt.value, cp_tol);
    if (e.cp) {
      e.norm = cp_norm(lt.value);
      e.converges = *e.norm < 1.0;
    }
    out.push_back(e);
  }
  return out;
}

LegitimatePair convex_combine(std::span<const LegitimatePair> pairs, std::span<const double> weights) {
  if (pairs.empty()) throw ValidationError("convex_combine: no pairs given");
  if (pairs.size() != weights.size()) throw ValidationError("convex_combine: one weight per pair required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("convex_combine: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("convex_combine: weights must sum to 1");

  const auto& first = pairs.front();
  MapFamily n = MapFamily::zero(first.grid(), first.dim());
  MapFamily q = n;
  bool exact = true;
  for (const auto& p : pairs) {
    require_same_grid(first.N(), p.N(), "convex_combine");
    exact = exact && p.n_dot().has_value();
  }
  std::optional<MapFamily> n_dot;
  if (exact) n_dot = n;

  std::string label = "convex(";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double w = weights[i] / total;
    n += w * pairs[i].N();
    q += w * pairs[i].Q();
    if (n_dot) *n_dot += w * *pairs[i].n_dot();
    label += (i ? ", " : "") + pairs[i].label();
  }
  return LegitimatePair(std::move(n), std::move(q), label + ")", std::move(n_dot));
}

namespace {

MapFamily reduce_family(const MapFamily& f, const DensityMatrix& omega) {
  std::vector<Superoperator> out;
  out.reserve(f.size());
  for (const auto& s : f.samples()) out.push_back(reduce_superop(s, omega));
  return MapFamily(f.grid(), std::move(out));
}

}  // namespace

LegitimatePair reduce_pair(const LegitimatePair& p, const DensityMatrix& omega) {
  std::optional<MapFamily> n_dot;
  if (p.n_dot()) n_dot = reduce_family(*p.n_dot(), omega);
  return LegitimatePair(reduce_family(p.N(), omega), reduce_family(p.Q(), omega), "reduced(" + p.label() + ")",
                        std::move(n_dot));
}

LegitimatePair gauge_transform(const LegitimatePair& p, const MapFamily& f, const std::optional<MapFamily>& f_dot,
                               std::optional<double> tol) {
  require_same_grid(p.N(), f, "gauge_transform");
  const int d = p.dim();
  const double cp_tol = tol.value_or(default_cp_tolerance(d));
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!is_cptp(f[k], cp_tol)) {
      throw CpViolation("gauge_transform: F(t) is not CPTP at node " + std::to_string(k));
    }
  }
  if ((f[0].matrix() - Superoperator::identity(d).matrix()).norm() > cp_tol) {
    throw ValidationError("gauge_transform: F(0) must be the identity map");
  }
  std::optional<MapFamily> n_dot;
  if (p.n_dot() && f_dot) {
    require_same_grid(f, *f_dot, "gauge_transform derivative");
    n_dot = compose(*f_dot, p.N()) + compose(f, *p.n_dot());
  }
  return LegitimatePair(compose(f, p.N()), compose(f, p.Q()), "gauge(" + p.label() + ")", std::move(n_dot));
}

LegitimatePair cp_shift(const LegitimatePair& p, const MapFamily& g, std::optional<double> tol) {
  require_same_grid(p.N(), g, "cp_shift");
  const double cp_tol = tol.value_or(default_cp_tolerance(p.dim()));
  const MapFamily integral = cumulative_integral(g);
  MapFamily q = p.Q() - g;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!is_cp(integral[k], cp_tol)) {
      throw CpViolation("cp_shift: integral of G(t) is not CP at node " + std::to_string(k));
    }
    if (!is_cp(q[k], cp_tol)) {
      throw CpViolation("cp_shift: shifted Q'(t) = Q(t) - G(t) is not CP at node " + std::to_string(k));
    }
  }
  std::optional<MapFamily> n_dot;
  if (p.n_dot()) n_dot = *p.n_dot() + g;
  return LegitimatePair(p.N() + integral, std::move(q), "shift(" + p.label() + ")", std::move(n_dot));
}

}  // namespace memkernel
