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


#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "memkernel/errors.hpp"
#include "memkernel/io.hpp"

namespace memkernel::cli {

using nlohmann::json;

namespace {

constexpr int kDefaultSeriesOrder = 30;

struct Method {
  enum class Kind { volterra, series, inhomogeneous, all } kind = Kind::volterra;
  int order = kDefaultSeriesOrder;
  std::string name;
};

Method parse_method(const std::string& text) {
  Method m;
  m.name = text;
  if (text == "volterra") return m;
  if (text == "inhomogeneous") {
    m.kind = Method::Kind::inhomogeneous;
    return m;
  }
  if (text == "all") {
    m.kind = Method::Kind::all;
    return m;
  }
  if (text == "series") {
    m.kind = Method::Kind::series;
    m.name = "series:" + std::to_string(m.order);
    return m;
  }
  if (text.rfind("series:", 0) == 0) {
    const std::string digits = text.substr(7);
    if (digits.empty() || digits.size() > 4 || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError("method: series order must be a nonnegative integer, got \"" + digits + "\"");
    }
    m.kind = Method::Kind::series;
    m.order = std::stoi(digits);
    return m;
  }
  throw ValidationError("method: expected volterra, series:M, inhomogeneous or all, got \"" + text + "\"");
}

std::optional<double> checked_tol(const RunOptions& opts) {
  if (opts.tol && !(*opts.tol > 0.0)) throw ValidationError("--tol must be positive");
  return opts.tol;
}

json grid_json(const TimeGrid& g) { return json{{"t_max", g.t_max()}, {"n_steps", g.n_steps()}}; }

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream out;
  write_trajectory_csv(out, t);
  return out.str();
}

Trajectory inhomogeneous_trajectory(const QuantumModel& m, const DensityMatrix& rho0) {
  using Kind = InhomogeneousRoute::Kind;
  switch (m.route.kind) {
    case Kind::kernel_equation:
      return solve_inhomogeneous(m.route.equation->kernel, m.route.equation->inhomogeneity, rho0);
    case Kind::commuting_pair:
      return solve_inhomogeneous(new_kernel_commuting(m.pair), m.pair, rho0);
    case Kind::unavailable:
      break;
  }
  throw NumericalError("inhomogeneous route unavailable: " + m.route.note);
}

json quantum_summary(const QuantumModel& m, const RunConfig& rc, std::optional<double> tol) {
  json report;
  report["model"] = rc.model_type;
  report["label"] = m.pair.label();
  report["dim"] = m.pair.dim();
  report["grid"] = grid_json(rc.grid);
  report["legitimacy"] = to_json(check_legitimate(m.pair, tol));
  report["convergence"] = to_json(check_convergence(m.pair, rc.outputs.laplace_s_list, tol));
  return report;
}

json classical_summary(const ClassicalModel& m, const RunConfig& rc) {
  json report;
  report["model"] = rc.model_type;
  report["dim"] = m.pair.dim();
  report["grid"] = grid_json(rc.grid);
  report["legitimacy"] = to_json(check_classical(m.pair));
  json conv = json::array();
  const auto norms = classical_convergence(m.pair, rc.outputs.laplace_s_list);
  for (std::size_t i = 0; i < norms.size(); ++i) {
    conv.push_back(json{{"s", rc.outputs.laplace_s_list[i]}, {"norm", norms[i]}, {"converges", norms[i] < 1.0}});
  }
  report["convergence"] = std::move(conv);
  return report;
}

RunResult run_quantum(const RunConfig& rc, const Method& method, std::optional<double> tol) {
  const QuantumModel& m = *rc.quantum;
  const DensityMatrix& rho0 = *rc.initial_state;
  json report = quantum_summary(m, rc, tol);
  report["method"] = method.name;

  Trajectory traj{rc.grid, {}, {}, {}, {}};
  switch (method.kind) {
    case Method::Kind::volterra:
      traj = evolve_state(solve_volterra(m.pair), rho0);
      break;
    case Method::Kind::series: {
      const SeriesResult s = solve_series(m.pair, method.order);
      report["series"] = json{{"order", method.order}, {"tail_norm", s.tail_norm}};
      traj = evolve_state(s.lambda, rho0);
      break;
    }
    case Method::Kind::inhomogeneous:
      traj = inhomogeneous_trajectory(m, rho0);
      report["inhomogeneous"] = json{{"available", true}, {"note", m.route.note}};
      break;
    case Method::Kind::all: {
      traj = evolve_state(solve_volterra(m.pair), rho0);
      const SeriesResult s = solve_series(m.pair, kDefaultSeriesOrder);
      const Trajectory series = evolve_state(s.lambda, rho0);
      report["series"] = json{{"order", kDefaultSeriesOrder}, {"tail_norm", s.tail_norm}};
      json gaps;
      gaps["volterra_series"] = max_state_gap(traj, series);
      std::optional<Trajectory> inh;
      std::string note = m.route.note;
      try {
        inh = inhomogeneous_trajectory(m, rho0);
      } catch (const NumericalError& e) {
        note = e.what();
      }
      report["inhomogeneous"] = json{{"available", inh.has_value()}, {"note", note}};
      if (inh) {
        gaps["volterra_inhomogeneous"] = max_state_gap(traj, *inh);
        gaps["series_inhomogeneous"] = max_state_gap(series, *inh);
      }
      report["solver_gaps"] = std::move(gaps);
      break;
    }
  }
  report["outputs"] = json{{"trajectory_csv", rc.outputs.trajectory_csv}, {"report_json", rc.outputs.report_json}};

  RunResult result;
  result.files.push_back({rc.outputs.trajectory_csv, trajectory_csv(traj)});
  result.files.push_back({rc.outputs.report_json, dump_report(report)});
  result.report = std::move(report);
  return result;
}

RunResult run_classical(const RunConfig& rc, const Method& method) {
  const ClassicalModel& m = *rc.classical;
  if (method.kind != Method::Kind::volterra && method.kind != Method::Kind::all) {
    throw ValidationError("method: classical models support volterra and all, got \"" + method.name + "\"");
  }
  json report = classical_summary(m, rc);
  report["method"] = method.name;
  const auto t = solve_classical(m.pair);
  if (method.kind == Method::Kind::all) {
    const MapFamily lambda = solve_volterra(embed_classical(m.pair));
    const int d = m.pair.dim();
    double gap = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          gap = std::max(gap, std::abs(lambda[k].matrix()(i + i * d, j + j * d) - t[k](i, j)));
        }
    report["solver_gaps"] = json{{"classical_embedding", gap}};
  }
  json final_distribution = json::array();
  const RealVector p = t.back() * m.initial;
  for (Eigen::Index i = 0; i < p.size(); ++i) final_distribution.push_back(p(i));
  report["final_distribution"] = std::move(final_distribution);
  report["outputs"] = json{{"trajectory_csv", rc.outputs.trajectory_csv}, {"report_json", rc.outputs.report_json}};

  std::ostringstream csv;
  write_classical_csv(csv, rc.grid, t);
  RunResult result;
  result.files.push_back({rc.outputs.trajectory_csv, csv.str()});
  result.files.push_back({rc.outputs.report_json, dump_report(report)});
  result.report = std::move(report);
  return result;
}

}  // namespace

RunResult run(const json& config, const RunOptions& opts) {
  const auto tol = checked_tol(opts);
  const RunConfig rc = parse_config(config, opts.seed);
  const Method method = parse_method(opts.method.value_or(rc.method));
  if (rc.classical) return run_classical(rc, method);
  return run_quantum(rc, method, tol);
}

RunResult check(const json& config, const RunOptions& opts) {
  const auto tol = checked_tol(opts);
  const RunConfig rc = parse_config(config, opts.seed);
  json report = rc.classical ? classical_summary(*rc.classical, rc) : quantum_summary(*rc.quantum, rc, tol);
  RunResult result;
  result.files.push_back({rc.outputs.report_json, dump_report(report)});
  result.report = std::move(report);
  return result;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

void write_outputs(const std::string& out_dir, const std::vector<OutputFile>& files) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + out_dir + ": " + ec.message());

  std::vector<fs::path> staged;
  auto discard = [&staged] {
    std::error_code ignored;
    for (const auto& p : staged) fs::remove(p, ignored);
  };
  for (const auto& f : files) {
    const fs::path tmp = dir / ("." + f.name + ".tmp");
    std::ofstream out(tmp, std::ios::binary);
    out << f.content;
    out.close();
    staged.push_back(tmp);
    if (!out) {
      discard();
      throw std::runtime_error("cannot write " + (dir / f.name).string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(staged[i], dir / files[i].name, ec);
    if (ec) {
      discard();
      throw std::runtime_error("cannot write " + (dir / files[i].name).string() + ": " + ec.message());
    }
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CpViolation*>(&e)) return kExitNumerical;
  if (dynamic_cast<const ValidationError*>(&e)) return kExitValidation;
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
  return 1;
}

}  // namespace memkernel::cli
