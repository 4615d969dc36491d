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

#pragma once

#include <iosfwd>
#include <string>

#include "auctionlp/config.hpp"

namespace auctionlp {

// Exit codes: 0 success, 1 runtime failure, 2 invalid configuration.
// Failures print a machine-readable error JSON to `err`.

// Solves the configured instance and writes summary.json, solution.json,
// certificate.json plus the CSV artifacts into config.output_dir.
int CmdSolve(const SolveConfig& config, std::ostream& out, std::ostream& err);

// Re-checks a solution/certificate pair written by CmdSolve and writes an
// aggregated pass/fail report.
int CmdVerify(const std::string& solution_path,
              const std::string& certificate_path,
              const std::string& report_path, std::ostream& out,
              std::ostream& err);

// Revenue benchmark over a bidder range; CSV columns
// B,selling_separately,lp_optimal,full_surplus,ratio.
int CmdBenchmark(const SolveConfig& base, int b_min, int b_max,
                 const std::string& csv_path, std::ostream& out,
                 std::ostream& err);

int CmdExportMps(const SolveConfig& config, const std::string& path,
                 std::ostream& out, std::ostream& err);

// Closed-form oracle evaluations (JSON to stdout).
struct AnalyticRequest {
  bool myerson = false;
  bool full_surplus = false;
  double virtual_at = -1.0;
  double ironed_at = -1.0;
  bool mv = false;
  double mv_x = 0.0, mv_y = 0.0;
  double margin_a = -1.0;
};
int CmdAnalytic(const SolveConfig& config, const AnalyticRequest& request,
                std::ostream& out, std::ostream& err);

}  // namespace auctionlp
