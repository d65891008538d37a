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

#include <functional>
#include <span>
#include <vector>

#include "memkernel/superop.hpp"

namespace memkernel {

/// Uniform grid t_k = kΔ, k = 0..n_steps, Δ = t_max / n_steps.
class TimeGrid {
 public:
  TimeGrid(double t_max, int n_steps);

  double t_max() const { return t_max_; }
  int n_steps() const { return n_steps_; }
  std::size_t size() const { return static_cast<std::size_t>(n_steps_) + 1; }
  double step() const { return t_max_ / n_steps_; }
  double time(std::size_t k) const { return static_cast<double>(k) * step(); }
  std::vector<double> nodes() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_max_;
  int n_steps_;
};

inline constexpr int kDefaultSteps = 1000;

class MapFamily {
 public:
  /// One sample per node, all of the same dimension.
  MapFamily(TimeGrid grid, std::vector<Superoperator> samples);

  static MapFamily constant(const TimeGrid& grid, const Superoperator& s);
  static MapFamily zero(const TimeGrid& grid, int dim);

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return samples_.front().dim(); }
  std::size_t size() const { return samples_.size(); }
  const Superoperator& operator[](std::size_t k) const { return samples_[k]; }
  const std::vector<Superoperator>& samples() const { return samples_; }

  MapFamily& operator+=(const MapFamily& rhs);
  MapFamily& operator-=(const MapFamily& rhs);
  MapFamily& operator*=(Complex c);

  friend MapFamily operator+(MapFamily a, const MapFamily& b) { return a += b; }
  friend MapFamily operator-(MapFamily a, const MapFamily& b) { return a -= b; }
  friend MapFamily operator*(MapFamily a, Complex c) { return a *= c; }
  friend MapFamily operator*(Complex c, MapFamily a) { return a *= c; }
  friend MapFamily operator*(MapFamily a, double c) { return a *= Complex(c); }
  friend MapFamily operator*(double c, MapFamily a) { return a *= Complex(c); }

 private:
  TimeGrid grid_;
  std::vector<Superoperator> samples_;
};

MapFamily sample(const std::function<Superoperator(double)>& f, const TimeGrid& grid);

/// Pointwise a(t_k) ∘ b(t_k).
MapFamily compose(const MapFamily& a, const MapFamily& b);
MapFamily compose(const MapFamily& a, const Superoperator& b);
MapFamily compose(const Superoperator& a, const MapFamily& b);

/// Pointwise w_k · f(t_k).
MapFamily scale(const MapFamily& f, std::span<const double> weights);

/// [A ∗ B](t_k) = ∫₀^{t_k} A(t_k − τ) ∘ B(τ) dτ by composite trapezoid.
MapFamily convolve(const MapFamily& a, const MapFamily& b);

MapFamily differentiate(const MapFamily& f);

/// Cumulative trapezoid ∫₀^{t_k} F(τ) dτ.
MapFamily cumulative_integral(const MapFamily& f);

/// Largest Frobenius distance between corresponding samples.
double max_distance(const MapFamily& a, const MapFamily& b);
double max_norm(const MapFamily& f);

struct LaplaceValue {
  Superoperator value;
  /// e^{−s t_max} ‖F(t_max)‖_F / s, the size of the neglected tail for a
  /// non-growing family.
  double truncation_bound = 0.0;
};

/// Trapezoid ∫₀^{t_max} e^{−st} F(t) dt. Throws ValidationError for s ≤ 0.
LaplaceValue laplace_eval(const MapFamily& f, double s);

/// Scalar companion of laplace_eval for sampled functions on `grid`.
double laplace_eval(std::span<const double> values, const TimeGrid& grid, double s);

void require_same_grid(const MapFamily& a, const MapFamily& b, const char* what);

}  // namespace memkernel
