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


#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "memkernel/errors.hpp"
#include "memkernel/io.hpp"

namespace memkernel::cli {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string(where) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) throw ValidationError(std::string(where) + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

std::string type_of(const json& j, const char* where) {
  const json& v = require(j, "type", where);
  if (!v.is_string()) throw ValidationError(std::string(where) + ": \"type\" must be a string");
  return v.get<std::string>();
}

void require_dim(const ComplexMatrix& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                          ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

std::vector<ComplexMatrix> matrix_list(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(parse_matrix(m, what));
  return out;
}

TimeGrid parse_grid(const json& j) {
  const double t_max = number(j, "t_max", "grid");
  int n_steps = kDefaultSteps;
  if (j.contains("n_steps")) {
    if (!j["n_steps"].is_number_integer()) throw ValidationError("grid: \"n_steps\" must be an integer");
    n_steps = j["n_steps"].get<int>();
  }
  return TimeGrid(t_max, n_steps);
}

Outputs parse_outputs(const json& j) {
  Outputs o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw ValidationError("outputs: expected an object");
  auto file_name = [](const json& v, const char* key) {
    if (!v.is_string() || v.get<std::string>().empty()) {
      throw ValidationError(std::string("outputs: \"") + key + "\" must be a nonempty string");
    }
    const auto name = v.get<std::string>();
    if (name.find('/') != std::string::npos || name == "." || name == "..") {
      throw ValidationError(std::string("outputs: \"") + key + "\" must be a plain file name");
    }
    return name;
  };
  if (j.contains("trajectory_csv")) o.trajectory_csv = file_name(j["trajectory_csv"], "trajectory_csv");
  if (j.contains("report_json")) o.report_json = file_name(j["report_json"], "report_json");
  if (j.contains("laplace_s_list")) {
    const json& s = j["laplace_s_list"];
    if (!s.is_array() || s.empty()) throw ValidationError("outputs: \"laplace_s_list\" must be a nonempty array");
    o.laplace_s_list.clear();
    for (const auto& v : s) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) {
        throw ValidationError("outputs: \"laplace_s_list\" entries must be positive numbers");
      }
      o.laplace_s_list.push_back(v.get<double>());
    }
  }
  return o;
}

std::function<ComplexMatrix(double)> parse_hamiltonian_drive(const json& j, int dim) {
  ComplexMatrix h0 = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix h1 = ComplexMatrix::Zero(dim, dim);
  double freq = 0.0;
  if (!j.is_null()) {
    if (j.contains("static")) h0 = parse_matrix(j["static"], "hamiltonian.static");
    if (j.contains("drive")) {
      h1 = parse_matrix(j["drive"], "hamiltonian.drive");
      freq = number(j, "drive_frequency", "hamiltonian");
    }
  }
  require_dim(h0, dim, "hamiltonian.static");
  require_dim(h1, dim, "hamiltonian.drive");
  return [h0, h1, freq](double t) { return ComplexMatrix(h0 + std::cos(freq * t) * h1); };
}

// The kernel acts on ρ(t−τ) only when 𝓕(t) commutes with 𝓔 and with itself.
std::string collision_commutation_defect(const MapFamily& f, const Superoperator& channel) {
  constexpr double kTol = 1e-8;
  const Superoperator& last = f[f.size() - 1];
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double scale = std::max(1.0, norm(f[k]) * std::max(norm(channel), norm(last)));
    if (norm(f[k] * channel - channel * f[k]) > kTol * scale) {
      return "collision kernel equation needs F(t) to commute with the channel; fails at t = " +
             format_double(f.grid().time(k));
    }
    if (norm(f[k] * last - last * f[k]) > kTol * scale) {
      return "collision kernel equation needs commuting F(t) at different times; fails at t = " +
             format_double(f.grid().time(k));
    }
  }
  return {};
}

InhomogeneousRoute collision_route(const MapFamily& f, const MapFamily& f_dot, const Superoperator& channel,
                                   const WaitingTime& w) {
  using Kind = InhomogeneousRoute::Kind;
  std::string defect = collision_commutation_defect(f, channel);
  if (!defect.empty()) return {Kind::unavailable, std::nullopt, std::move(defect)};
  return {Kind::kernel_equation, collision_equation(f, f_dot, channel, w), "collision kernel equation"};
}

QuantumModel build_quantum(const std::string& type, const json& m, const TimeGrid& grid, Rng& rng) {
  using Kind = InhomogeneousRoute::Kind;
  if (type == "semigroup") {
    const GkslSpec spec = parse_gksl(m);
    std::optional<Superoperator> extra;
    if (m.contains("generator_prime")) {
      const GkslSpec prime = parse_gksl(m["generator_prime"]);
      if (prime.dim() != spec.dim()) throw ValidationError("generator_prime: dimension mismatch");
      extra = gksl_generator(prime);
    }
    LegitimatePair pair = semigroup_pair(spec, grid, extra);
    // ρ̇ = B ρ(t) + ∫ A N(τ) B ρ(t−τ) dτ + Ṅ(t) ρ₀ with Ṅ = A N.
    const GkslSplit split = split_generator(spec);
    Superoperator a = -split.decay_part;
    if (extra) a += *extra;
    KernelEquation eq{Kernel{compose(a, compose(pair.N(), split.jump_part)), split.jump_part}, pair.n_derivative()};
    return {std::move(pair), {Kind::kernel_equation, std::move(eq), "semigroup kernel equation"}};
  }
  if (type == "reduced_semigroup") {
    const GkslSpec spec = parse_gksl(m);
    const json& env = require(m, "environment_state", "reduced_semigroup");
    int d_env = 0;
    if (env.is_object() && env.contains("dim")) {
      if (!env["dim"].is_number_integer()) throw ValidationError("environment_state: \"dim\" must be an integer");
      d_env = env["dim"].get<int>();
    } else if (env.is_array() || (env.is_object() && env.contains("re"))) {
      d_env = static_cast<int>(parse_matrix(env, "environment_state").rows());
    } else {
      throw ValidationError("reduced_semigroup: environment_state needs \"dim\" or an explicit matrix");
    }
    if (d_env < 1 || spec.dim() % d_env != 0) {
      throw ValidationError("reduced_semigroup: composite dimension is not a multiple of the environment dimension");
    }
    const DensityMatrix omega = parse_state(env, d_env);
    return {reduced_semigroup_pair(spec, omega, grid), {Kind::commuting_pair, std::nullopt, ""}};
  }
  if (type == "semimarkov" || type == "hadamard_semimarkov") {
    const json& ch = require(m, "channel", type.c_str());
    const int d = static_cast<int>(number(m, "dim", type.c_str()));
    if (d < 1) throw ValidationError(type + ": \"dim\" must be positive");
    const Superoperator channel = parse_channel(ch, d, rng);
    const WaitingTime w = parse_waiting(require(m, "waiting", type.c_str()), grid);
    if (type == "semimarkov") return {semimarkov_pair(channel, w, grid), {Kind::commuting_pair, std::nullopt, ""}};
    const double rate = number(m, "dephasing_rate", type.c_str());
    return {hadamard_semimarkov_pair(channel, w, rate, grid), {Kind::commuting_pair, std::nullopt, ""}};
  }
  if (type == "collision" || type == "generalized_collision") {
    const int d = static_cast<int>(number(m, "dim", type.c_str()));
    if (d < 1) throw ValidationError(type + ": \"dim\" must be positive");
    const FamilyWithDerivative f = parse_family(require(m, "family", type.c_str()), d, grid);
    if (type == "collision") {
      const double gamma = number(m, "rate", "collision");
      LegitimatePair pair = collision_pair(f.family, gamma, f.derivative);
      return {std::move(pair), collision_route(f.family, f.derivative, Superoperator::identity(d),
                                               WaitingTime::exponential(gamma))};
    }
    const Superoperator channel = parse_channel(require(m, "channel", type.c_str()), d, rng);
    const WaitingTime w = parse_waiting(require(m, "waiting", type.c_str()), grid);
    LegitimatePair pair = generalized_collision_pair(f.family, channel, w, f.derivative);
    return {std::move(pair), collision_route(f.family, f.derivative, channel, w)};
  }
  if (type == "noncommutative_collision") {
    const int d = static_cast<int>(number(m, "dim", type.c_str()));
    if (d < 1) throw ValidationError(type + ": \"dim\" must be positive");
    const json& phi_spec = require(m, "phi", type.c_str());
    const auto kraus = matrix_list(require(phi_spec, "kraus", "phi"), "phi.kraus");
    for (const auto& k : kraus) require_dim(k, d, "phi.kraus");
    const double decay = phi_spec.contains("decay_rate") ? number(phi_spec, "decay_rate", "phi") : 0.0;
    if (decay < 0.0) throw ValidationError("phi: \"decay_rate\" must be >= 0");
    const Superoperator phi0 = kraus_to_superop(KrausSet(kraus));
    const MapFamily phi = sample([&](double t) { return phi0 * std::exp(-decay * t); }, grid);
    const auto h = parse_hamiltonian_drive(m.contains("hamiltonian") ? m["hamiltonian"] : json(), d);
    const FamilyWithDerivative outer =
        parse_family(m.contains("family") ? m["family"] : json{{"type", "identity"}}, d, grid);
    const Superoperator channel =
        parse_channel(m.contains("channel") ? m["channel"] : json{{"type", "identity"}}, d, rng);
    return {noncommutative_collision_pair(phi, h, outer.family, channel, outer.derivative),
            {Kind::commuting_pair, std::nullopt, ""}};
  }
  throw ValidationError("unknown model type \"" + type + "\"");
}

ClassicalModel build_classical(const json& m, const TimeGrid& grid, const json& initial) {
  const RealMatrix shape = real_matrix_from_json(require(m, "jump_matrix", "classical_semimarkov"));
  if (shape.rows() != shape.cols()) throw ValidationError("classical_semimarkov: jump_matrix must be square");
  const WaitingTime w = parse_waiting(require(m, "waiting", "classical_semimarkov"), grid);
  const auto dens = w.density(grid);
  std::vector<RealMatrix> q;
  q.reserve(grid.size());
  for (double f : dens) q.push_back(f * shape);
  ClassicalOptions opts;
  opts.allow_signed_rates = !w.nonnegative();
  ClassicalPair pair = classical_semimarkov_pair(std::move(q), grid, opts);
  const auto dim = shape.rows();
  RealVector p0 = RealVector::Zero(dim);
  if (initial.is_null()) {
    p0(0) = 1.0;
  } else {
    if (!initial.is_array() || static_cast<Eigen::Index>(initial.size()) != dim) {
      throw ValidationError("initial_state: expected a probability vector of length " + std::to_string(dim));
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (!initial[i].is_number()) throw ValidationError("initial_state: entries must be numbers");
      p0(i) = initial[i].get<double>();
    }
    if (p0.minCoeff() < 0.0 || std::abs(p0.sum() - 1.0) > 1e-12) {
      throw ValidationError("initial_state: probabilities must be nonnegative and sum to 1");
    }
  }
  return {std::move(pair), std::move(p0)};
}

}  // namespace

ComplexMatrix parse_matrix(const json& j, const char* what) {
  try {
    return matrix_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

DensityMatrix parse_state(const json& j, int dim) {
  if (j.is_object() && j.contains("basis")) {
    if (!j["basis"].is_number_integer()) throw ValidationError("state: \"basis\" must be an integer");
    return DensityMatrix::basis_state(dim, j["basis"].get<int>());
  }
  if (j.is_object() && j.contains("maximally_mixed")) return DensityMatrix::maximally_mixed(dim);
  if (j.is_object() && j.contains("pure")) {
    const json& v = j["pure"];
    const json& re = require(v, "re", "state.pure");
    if (!re.is_array() || static_cast<int>(re.size()) != dim) throw ValidationError("state: pure vector has wrong length");
    const bool has_im = v.contains("im");
    if (has_im && (!v["im"].is_array() || v["im"].size() != re.size())) {
      throw ValidationError("state: pure vector re and im lengths differ");
    }
    ComplexVector psi(dim);
    for (int i = 0; i < dim; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (!re[idx].is_number() || (has_im && !v["im"][idx].is_number())) {
        throw ValidationError("state: pure vector entries must be numbers");
      }
      psi(i) = Complex(re[idx].get<double>(), has_im ? v["im"][idx].get<double>() : 0.0);
    }
    return DensityMatrix::pure(psi);
  }
  const ComplexMatrix rho = parse_matrix(j, "state");
  require_dim(rho, dim, "state");
  return DensityMatrix::from_matrix(rho, 1e-9);
}

GkslSpec parse_gksl(const json& j) {
  GkslSpec spec{parse_matrix(require(j, "hamiltonian", "gksl"), "hamiltonian"), {}};
  if (j.contains("jumps")) spec.jumps = matrix_list(j["jumps"], "jumps");
  spec.validate();
  return spec;
}

Superoperator parse_channel(const json& j, int dim, Rng& rng) {
  const std::string type = type_of(j, "channel");
  if (type == "identity") return Superoperator::identity(dim);
  if (type == "kraus") {
    const auto ops = matrix_list(require(j, "operators", "channel"), "channel.operators");
    for (const auto& k : ops) require_dim(k, dim, "channel.operators");
    return kraus_to_superop(KrausSet(ops));
  }
  if (type == "projective") return projective_channel(parse_state(require(j, "target", "channel"), dim));
  if (type == "random") {
    const int n_ops = static_cast<int>(number(j, "n_ops", "channel"));
    return kraus_to_superop(random_kraus_channel(dim, n_ops, rng));
  }
  throw ValidationError("channel: unknown type \"" + type + "\"");
}

WaitingTime parse_waiting(const json& j, const TimeGrid& grid) {
  const std::string type = type_of(j, "waiting");
  if (type == "exponential") return WaitingTime::exponential(number(j, "rate", "waiting"));
  if (type == "oscillating") return WaitingTime::oscillating(number(j, "omega", "waiting"));
  if (type == "tabulated") {
    const json& d = require(j, "density", "waiting");
    if (!d.is_array()) throw ValidationError("waiting: \"density\" must be an array");
    std::vector<double> values;
    for (const auto& v : d) {
      if (!v.is_number()) throw ValidationError("waiting: density entries must be numbers");
      values.push_back(v.get<double>());
    }
    return WaitingTime::tabulated(grid, std::move(values));
  }
  throw ValidationError("waiting: unknown type \"" + type + "\"");
}

FamilyWithDerivative parse_family(const json& j, int dim, const TimeGrid& grid) {
  const std::string type = type_of(j, "family");
  if (type == "identity") {
    return {MapFamily::constant(grid, Superoperator::identity(dim)), MapFamily::zero(grid, dim)};
  }
  if (type == "semigroup") {
    const GkslSpec spec = parse_gksl(j);
    if (spec.dim() != dim) throw ValidationError("family: dimension mismatch");
    const Superoperator l = gksl_generator(spec);
    MapFamily f = semigroup_reference(l, grid);
    MapFamily f_dot = compose(l, f);
    return {std::move(f), std::move(f_dot)};
  }
  throw ValidationError("family: unknown type \"" + type + "\"");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError("config is not valid JSON: " + std::string(e.what()));
  }
}

RunConfig parse_config(const json& config, std::uint64_t seed) {
  if (!config.is_object()) throw ValidationError("config: expected a JSON object");
  RunConfig rc;
  try {
    const json& model = require(config, "model", "config");
    rc.model_type = type_of(model, "model");
    rc.grid = parse_grid(require(config, "grid", "config"));
    if (config.contains("method")) {
      if (!config["method"].is_string()) throw ValidationError("config: \"method\" must be a string");
      rc.method = config["method"].get<std::string>();
    }
    rc.outputs = parse_outputs(config.contains("outputs") ? config["outputs"] : json());
    Rng rng(config.contains("seed") ? config["seed"].get<std::uint64_t>() : seed);
    const json initial = config.contains("initial_state") ? config["initial_state"] : json();
    if (rc.model_type == "classical_semimarkov") {
      rc.classical = build_classical(model, rc.grid, initial);
      return rc;
    }
    rc.quantum = build_quantum(rc.model_type, model, rc.grid, rng);
    const int d = rc.quantum->pair.dim();
    rc.initial_state = initial.is_null() ? DensityMatrix::basis_state(d, 0) : parse_state(initial, d);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return rc;
}

}  // namespace memkernel::cli
