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

#include "memkernel/mapfamily.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/FFT>

#include "memkernel/errors.hpp"
#include "memkernel/parallel.hpp"
#include "memkernel/quadrature.hpp"

namespace memkernel {

TimeGrid::TimeGrid(double t_max, int n_steps) : t_max_(t_max), n_steps_(n_steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("TimeGrid: t_max must be positive and finite");
  if (n_steps < 2) throw ValidationError("TimeGrid: n_steps must be at least 2");
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> t(size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = time(k);
  return t;
}

MapFamily::MapFamily(TimeGrid grid, std::vector<Superoperator> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) {
    throw ValidationError("MapFamily: expected " + std::to_string(grid_.size()) + " samples, got " +
                          std::to_string(samples_.size()));
  }
  const int d = samples_.front().dim();
  if (d < 1) throw ValidationError("MapFamily: empty superoperator sample");
  for (const auto& s : samples_) {
    if (s.dim() != d) throw ValidationError("MapFamily: samples have different dimensions");
  }
}

MapFamily MapFamily::constant(const TimeGrid& grid, const Superoperator& s) {
  return MapFamily(grid, std::vector<Superoperator>(grid.size(), s));
}

MapFamily MapFamily::zero(const TimeGrid& grid, int dim) { return constant(grid, Superoperator::zero(dim)); }

void require_same_grid(const MapFamily& a, const MapFamily& b, const char* what) {
  if (!(a.grid() == b.grid())) throw ValidationError(std::string(what) + ": grids differ");
  if (a.dim() != b.dim()) throw ValidationError(std::string(what) + ": dimensions differ");
}

MapFamily& MapFamily::operator+=(const MapFamily& rhs) {
  require_same_grid(*this, rhs, "MapFamily sum");
  for (std::size_t k = 0; k < samples_.size(); ++k) samples_[k] += rhs.samples_[k];
  return *this;
}

MapFamily& MapFamily::operator-=(const MapFamily& rhs) {
  require_same_grid(*this, rhs, "MapFamily difference");
  for (std::size_t k = 0; k < samples_.size(); ++k) samples_[k] -= rhs.samples_[k];
  return *this;
}

MapFamily& MapFamily::operator*=(Complex c) {
  for (auto& s : samples_) s *= c;
  return *this;
}

MapFamily sample(const std::function<Superoperator(double)>& f, const TimeGrid& grid) {
  std::vector<Superoperator> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { out[k] = f(grid.time(k)); });
  return MapFamily(grid, std::move(out));
}

MapFamily compose(const MapFamily& a, const MapFamily& b) {
  require_same_grid(a, b, "compose");
  std::vector<Superoperator> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] * b[k]);
  return MapFamily(a.grid(), std::move(out));
}

MapFamily compose(const MapFamily& a, const Superoperator& b) {
  std::vector<Superoperator> out;
  out.reserve(a.size());
  for (const auto& s : a.samples()) out.push_back(s * b);
  return MapFamily(a.grid(), std::move(out));
}

MapFamily compose(const Superoperator& a, const MapFamily& b) {
  std::vector<Superoperator> out;
  out.reserve(b.size());
  for (const auto& s : b.samples()) out.push_back(a * s);
  return MapFamily(b.grid(), std::move(out));
}

MapFamily scale(const MapFamily& f, std::span<const double> weights) {
  if (weights.size() != f.size()) throw ValidationError("scale: one weight per node required");
  std::vector<Superoperator> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out.push_back(weights[k] * f[k]);
  return MapFamily(f.grid(), std::move(out));
}

namespace {

constexpr std::size_t kFftThreshold = 512;

// out[k] = Σ_{j=0}^{k} a[k−j] b[j], all k.
std::vector<ComplexMatrix> full_sums_direct(const MapFamily& a, const MapFamily& b) {
  const auto n = static_cast<Eigen::Index>(a.dim()) * a.dim();
  std::vector<ComplexMatrix> out(a.size());
  parallel_for(a.size(), [&](std::size_t k) {
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j <= k; ++j) acc.noalias() += a[k - j].matrix().lazyProduct(b[j].matrix());
    out[k] = std::move(acc);
  });
  return out;
}

// Same sums through zero-padded FFTs of every matrix entry.
std::vector<ComplexMatrix> full_sums_fft(const MapFamily& a, const MapFamily& b) {
  const auto n = static_cast<Eigen::Index>(a.dim()) * a.dim();
  const std::size_t size = a.size();
  std::size_t len = 1;
  while (len < 2 * size) len <<= 1;

  auto transform = [&](const MapFamily& f) {
    std::vector<ComplexMatrix> freq(len, ComplexMatrix(n, n));
    parallel_for(static_cast<std::size_t>(n * n), [&](std::size_t e) {
      const auto r = static_cast<Eigen::Index>(e) % n;
      const auto c = static_cast<Eigen::Index>(e) / n;
      std::vector<Complex> in(len, Complex(0.0)), spec;
      for (std::size_t k = 0; k < size; ++k) in[k] = f[k].matrix()(r, c);
      Eigen::FFT<double> fft;
      fft.fwd(spec, in);
      for (std::size_t m = 0; m < len; ++m) freq[m](r, c) = spec[m];
    });
    return freq;
  };
  const auto fa = transform(a);
  const auto fb = transform(b);
  std::vector<ComplexMatrix> prod(len);
  parallel_for(len, [&](std::size_t m) { prod[m] = fa[m] * fb[m]; });

  std::vector<ComplexMatrix> out(size, ComplexMatrix(n, n));
  parallel_for(static_cast<std::size_t>(n * n), [&](std::size_t e) {
    const auto r = static_cast<Eigen::Index>(e) % n;
    const auto c = static_cast<Eigen::Index>(e) / n;
    std::vector<Complex> spec(len), time;
    for (std::size_t m = 0; m < len; ++m) spec[m] = prod[m](r, c);
    Eigen::FFT<double> fft;
    fft.inv(time, spec);
    for (std::size_t k = 0; k < size; ++k) out[k](r, c) = time[k];
  });
  return out;
}

}  // namespace

MapFamily convolve(const MapFamily& a, const MapFamily& b) {
  require_same_grid(a, b, "convolve");
  const double dt = a.grid().step();
  const int d = a.dim();
  auto sums = a.size() >= kFftThreshold ? full_sums_fft(a, b) : full_sums_direct(a, b);
  std::vector<Superoperator> out(a.size());
  out[0] = Superoperator::zero(d);
  parallel_for(a.size() - 1, [&](std::size_t idx) {
    const std::size_t k = idx + 1;
    // trapezoid: half weight on the j = 0 and j = k end points
    ComplexMatrix ends = a[k].matrix() * b[0].matrix();
    ends.noalias() += a[0].matrix() * b[k].matrix();
    out[k] = Superoperator(ComplexMatrix(dt * sums[k] - (0.5 * dt) * ends));
  });
  return MapFamily(a.grid(), std::move(out));
}

MapFamily differentiate(const MapFamily& f) {
  return MapFamily(f.grid(), quadrature::differentiate(f.samples(), f.grid().step()));
}

MapFamily cumulative_integral(const MapFamily& f) {
  return MapFamily(f.grid(), quadrature::cumulative_trapezoid(f.samples(), f.grid().step()));
}

double max_distance(const MapFamily& a, const MapFamily& b) {
  require_same_grid(a, b, "max_distance");
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, (a[k].matrix() - b[k].matrix()).norm());
  return gap;
}

double max_norm(const MapFamily& f) {
  double m = 0.0;
  for (const auto& s : f.samples()) m = std::max(m, norm(s));
  return m;
}

LaplaceValue laplace_eval(const MapFamily& f, double s) {
  if (!(s > 0.0)) throw ValidationError("laplace_eval: s must be positive");
  const TimeGrid& grid = f.grid();
  const double dt = grid.step();
  const std::size_t k = grid.size() - 1;
  const auto n = static_cast<Eigen::Index>(f.dim()) * f.dim();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j <= k; ++j) {
    acc += (quadrature::trapezoid_weight(j, k, dt) * std::exp(-s * grid.time(j))) * f[j].matrix();
  }
  return {Superoperator(std::move(acc)), std::exp(-s * grid.t_max()) * norm(f[k]) / s};
}

double laplace_eval(std::span<const double> values, const TimeGrid& grid, double s) {
  if (!(s > 0.0)) throw ValidationError("laplace_eval: s must be positive");
  if (values.size() != grid.size()) throw ValidationError("laplace_eval: one value per node required");
  const double dt = grid.step();
  const std::size_t k = grid.size() - 1;
  double acc = 0.0;
  for (std::size_t j = 0; j <= k; ++j) {
    acc += quadrature::trapezoid_weight(j, k, dt) * std::exp(-s * grid.time(j)) * values[j];
  }
  return acc;
}

}  // namespace memkernel
