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


#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "runner.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string out_dir = ".";
  std::string method;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool with_method) {
  cmd->add_option("config", f.config_path, "Model configuration (JSON)")->required();
  cmd->add_option("--out-dir", f.out_dir, "Directory for output files");
  cmd->add_option("--tol", f.tol, "CP tolerance for legitimacy and convergence checks");
  cmd->add_option("--seed", f.seed, "Seed for randomized channels");
  if (with_method) cmd->add_option("--method", f.method, "volterra, series:M, inhomogeneous or all");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = memkernel::cli;

  CLI::App app{"Memory-kernel master equations: construct, certify and solve legitimate pairs"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Solve a model and write trajectory CSV and report JSON");
  CLI::App* check_cmd = app.add_subcommand("check", "Certify a model and write report JSON only");
  add_common(run_cmd, flags, true);
  add_common(check_cmd, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }

  cli::RunOptions opts;
  opts.seed = flags.seed;
  if (!flags.method.empty()) opts.method = flags.method;
  if (*run_cmd->get_option("--tol") || *check_cmd->get_option("--tol")) opts.tol = flags.tol;

  try {
    const auto config = cli::load_json(flags.config_path);
    const cli::RunResult result = run_cmd->parsed() ? cli::run(config, opts) : cli::check(config, opts);
    cli::write_outputs(flags.out_dir, result.files);
    if (check_cmd->parsed()) std::cout << cli::dump_report(result.report);
    return cli::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "memkernel: " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
}
