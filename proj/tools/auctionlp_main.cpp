// Copyright 2026 The auctionlp Authors
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

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "auctionlp/commands.hpp"

namespace {

using auctionlp::SolveConfig;

// Flag precedence: command line > config file > defaults.
void AddConfigFlags(CLI::App* cmd, SolveConfig& config,
                    std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file");
  cmd->add_option("-B,--bidders", config.bidders, "number of bidders");
  cmd->add_option("-I,--items", config.items, "number of items (1..3)");
  cmd->add_option("-n,--cells", config.n, "grid cells per axis");
  cmd->add_option("-M,--segments", config.segments,
                  "majorization partition segments (default 50; 1 if B=1)");
  cmd->add_option_function<std::string>(
      "--density",
      [&config](const std::string& arg) {
        config.density = auctionlp::ParseDensityArg(arg, config.items);
      },
      "uniform | linear:a[,a2,...] | cosine:b[,b2,...]");
  cmd->add_option_function<std::string>(
      "--partition-mode",
      [&config](const std::string& arg) {
        config.partition_mode = auctionlp::PartitionModeFromString(arg);
      },
      "exact | uniform_breakpoints");
  cmd->add_option_function<std::string>(
      "--ic-mode",
      [&config](const std::string& arg) {
        config.ic_mode = auctionlp::IcModeFromString(arg);
      },
      "full | irreducible | local_iterative");
  cmd->add_option("--ic-c", config.ic_locality,
                  "locality radius for local ic constraints (lattice units)");
  cmd->add_option("--feas-tol", config.tol.feas, "primal feasibility tolerance");
  cmd->add_option("--opt-tol", config.tol.opt, "optimality tolerance");
  cmd->add_option("--pivot-tol", config.tol.pivot, "simplex pivot tolerance");
  cmd->add_option("--ic-tol", config.tol.ic, "ic violation tolerance");
  cmd->add_option("--out", config.output_dir,
                  "output directory (env AUCTIONLP_OUT overrides the default)");
  cmd->add_option("--seed", config.seed, "seed recorded in artifacts");
}

SolveConfig ResolveConfig(const CLI::App* cmd, SolveConfig cli_values,
                          const std::string& config_path) {
  if (config_path.empty()) return cli_values;
  SolveConfig from_file = SolveConfig::FromJsonFile(config_path);
  // Re-apply any explicitly passed command-line flags on top of the file.
  SolveConfig merged = from_file;
  auto passed = [cmd](const std::string& flag) {
    return cmd->count(flag) > 0;
  };
  if (passed("--bidders")) merged.bidders = cli_values.bidders;
  if (passed("--items")) merged.items = cli_values.items;
  if (passed("--cells")) merged.n = cli_values.n;
  if (passed("--segments")) merged.segments = cli_values.segments;
  if (passed("--density")) merged.density = cli_values.density;
  if (passed("--partition-mode")) {
    merged.partition_mode = cli_values.partition_mode;
  }
  if (passed("--ic-mode")) merged.ic_mode = cli_values.ic_mode;
  if (passed("--ic-c")) merged.ic_locality = cli_values.ic_locality;
  if (passed("--feas-tol")) merged.tol.feas = cli_values.tol.feas;
  if (passed("--opt-tol")) merged.tol.opt = cli_values.tol.opt;
  if (passed("--pivot-tol")) merged.tol.pivot = cli_values.tol.pivot;
  if (passed("--ic-tol")) merged.tol.ic = cli_values.tol.ic;
  if (passed("--out")) merged.output_dir = cli_values.output_dir;
  if (passed("--seed")) merged.seed = cli_values.seed;
  return merged;
}

void ApplyOutputDirEnv(SolveConfig& config, const CLI::App* cmd) {
  if (cmd->count("--out") > 0) return;
  if (const char* env = std::getenv("AUCTIONLP_OUT")) {
    config.output_dir = env;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal multi-item auction solver"};
  app.require_subcommand(1);

  SolveConfig solve_config;
  std::string solve_config_path;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance");
  AddConfigFlags(solve, solve_config, solve_config_path);

  std::string verify_solution, verify_certificate, verify_report;
  CLI::App* verify =
      app.add_subcommand("verify", "re-check solution and certificate files");
  verify->add_option("solution", verify_solution, "solution.json path")
      ->required();
  verify->add_option("certificate", verify_certificate,
                     "certificate.json path")
      ->required();
  verify->add_option("--report", verify_report, "report output path");

  SolveConfig bench_config;
  std::string bench_config_path, bench_csv;
  int b_min = 2, b_max = 6;
  CLI::App* bench =
      app.add_subcommand("benchmark", "revenue benchmark over bidder counts");
  AddConfigFlags(bench, bench_config, bench_config_path);
  bench->add_option("--b-min", b_min, "first bidder count");
  bench->add_option("--b-max", b_max, "last bidder count");
  bench->add_option("--csv", bench_csv, "CSV output path");

  SolveConfig mps_config;
  std::string mps_config_path, mps_path = "model.mps";
  CLI::App* export_mps =
      app.add_subcommand("export-mps", "write the assembled LP as MPS");
  AddConfigFlags(export_mps, mps_config, mps_config_path);
  export_mps->add_option("--mps", mps_path, "MPS output path");

  SolveConfig analytic_config;
  std::string analytic_config_path;
  auctionlp::AnalyticRequest request;
  CLI::App* analytic =
      app.add_subcommand("analytic", "closed-form oracle evaluations");
  AddConfigFlags(analytic, analytic_config, analytic_config_path);
  analytic->add_flag("--myerson", request.myerson,
                     "per-item optimal revenue and their sum");
  analytic->add_flag("--full-surplus", request.full_surplus,
                     "welfare upper bound");
  analytic->add_option("--virtual", request.virtual_at,
                       "virtual value at x (item 1)");
  analytic->add_option("--ironed", request.ironed_at,
                       "ironed virtual value at x (item 1)");
  std::vector<double> mv_point;
  analytic->add_option("--mv", mv_point, "closed-form benchmark at (x, y)")
      ->expected(2);
  analytic->add_option("--margin", request.margin_a,
                       "selling-separately infeasibility margin at level a");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      SolveConfig config =
          ResolveConfig(solve, solve_config, solve_config_path);
      ApplyOutputDirEnv(config, solve);
      return auctionlp::CmdSolve(config, std::cout, std::cerr);
    }
    if (verify->parsed()) {
      return auctionlp::CmdVerify(verify_solution, verify_certificate,
                                  verify_report, std::cout, std::cerr);
    }
    if (bench->parsed()) {
      SolveConfig config = ResolveConfig(bench, bench_config, bench_config_path);
      ApplyOutputDirEnv(config, bench);
      return auctionlp::CmdBenchmark(config, b_min, b_max, bench_csv,
                                     std::cout, std::cerr);
    }
    if (export_mps->parsed()) {
      SolveConfig config = ResolveConfig(export_mps, mps_config, mps_config_path);
      return auctionlp::CmdExportMps(config, mps_path, std::cout, std::cerr);
    }
    if (analytic->parsed()) {
      SolveConfig config =
          ResolveConfig(analytic, analytic_config, analytic_config_path);
      if (mv_point.size() == 2) {
        request.mv = true;
        request.mv_x = mv_point[0];
        request.mv_y = mv_point[1];
      }
      return auctionlp::CmdAnalytic(config, request, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return 1;
  }
  return 0;
}
