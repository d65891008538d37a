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

#include "memkernel/io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "memkernel/errors.hpp"

namespace memkernel {

using nlohmann::json;

json to_json(const LegitimacyReport& r) {
  return json{{"cp_N", r.cp_N},
              {"cp_Q", r.cp_Q},
              {"initial_identity", r.initial_identity},
              {"tr_residual_max", r.tr_residual_max},
              {"monotone", r.monotone},
              {"verdict", r.verdict},
              {"min_choi_eig_N", r.min_choi_eig_N},
              {"min_choi_eig_Q", r.min_choi_eig_Q},
              {"initial_identity_defect", r.initial_identity_defect},
              {"monotonicity_min_eig", r.monotonicity_min_eig},
              {"tol", r.tol},
              {"tol_TR", r.tol_TR},
              {"exact_derivative", r.exact_derivative},
              {"note", r.note}};
}

json to_json(const PropertyReport& r) {
  return json{{"cp", r.cp},
              {"hermiticity_preserving", r.hermiticity_preserving},
              {"trace_preserving", r.trace_preserving},
              {"trace_annihilating", r.trace_annihilating},
              {"min_choi_eig", r.min_choi_eig},
              {"trace_defect", r.trace_defect}};
}

json to_json(const ConvergenceEntry& e) {
  json j{{"s", e.s}, {"cp", e.cp}, {"converges", e.converges}, {"truncation_bound", e.truncation_bound}};
  j["norm"] = e.norm ? json(*e.norm) : json(nullptr);
  return j;
}

json to_json(const std::vector<ConvergenceEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back(to_json(e));
  return arr;
}

json to_json(const ClassicalReport& r) {
  return json{{"nonnegative_rates", r.nonnegative_rates},
              {"survival_in_range", r.survival_in_range},
              {"tr_semi_residual_max", r.tr_semi_residual_max},
              {"tol_TR", r.tol_TR},
              {"verdict", r.verdict}};
}

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

RealMatrix rows_to_matrix(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw ValidationError(std::string(what) + ": expected a nonempty array of rows");
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  if (!rows[0].is_array() || rows[0].empty()) throw ValidationError(std::string(what) + ": rows must be arrays");
  const auto n_cols = static_cast<Eigen::Index>(rows[0].size());
  RealMatrix m(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw ValidationError(std::string(what) + ": ragged matrix rows");
    }
    for (Eigen::Index j = 0; j < n_cols; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw ValidationError(std::string(what) + ": matrix entries must be numbers");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (j.is_array()) return rows_to_matrix(j, "matrix").cast<Complex>();
  if (!j.is_object() || !j.contains("re")) throw ValidationError("complex matrix must be {\"re\": [[...]], \"im\": [[...]]}");
  const RealMatrix re = rows_to_matrix(j.at("re"), "matrix.re");
  ComplexMatrix m = re.cast<Complex>();
  if (j.contains("im")) {
    const RealMatrix im = rows_to_matrix(j.at("im"), "matrix.im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw ValidationError("matrix: re and im shapes differ");
    m.imag() = im;
  }
  return m;
}

RealMatrix real_matrix_from_json(const json& j) { return rows_to_matrix(j, "matrix"); }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const int d = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().rows());
  out << "t,trace_defect,min_choi_eig,purity";
  for (const char* part : {"re", "im"})
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) out << ",rho_" << part << '_' << i << '_' << j;
  out << '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto& rho = traj.states[k];
    out << format_double(traj.grid.time(k)) << ',' << format_double(traj.trace_defect[k]) << ','
        << format_double(traj.min_choi_eig[k]) << ',' << format_double(traj.purity[k]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out << ',' << format_double(rho(i, j).real());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out << ',' << format_double(rho(i, j).imag());
    out << '\n';
  }
}

void write_classical_csv(std::ostream& out, const TimeGrid& grid, const std::vector<RealMatrix>& t) {
  const auto m = t.empty() ? 0 : t.front().rows();
  out << "t";
  for (Eigen::Index j = 1; j <= m; ++j)
    for (Eigen::Index i = 1; i <= m; ++i) out << ",T_" << i << j;
  out << '\n';
  for (std::size_t k = 0; k < t.size(); ++k) {
    out << format_double(grid.time(k));
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double(t[k](i, j));
    out << '\n';
  }
}

}  // namespace memkernel
