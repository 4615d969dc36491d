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

#include <cstdint>
#include <string>
#include <vector>

#include "auctionlp/lp.hpp"

namespace auctionlp {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* ToString(SolveStatus status);

enum class VarStatus : uint8_t { kBasic, kAtLower, kAtUpper, kFixed, kFree };

struct Basis {
  // Status for every structural variable followed by one logical per row.
  std::vector<VarStatus> status;
  bool empty() const { return status.empty(); }
};

struct SolveOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  double pivot_tol = 1e-9;
  int64_t max_iterations = -1;  // -1: scaled with problem size
  int refactor_interval = 60;
  bool scale_rows = true;
  // Deterministic anti-degeneracy bound perturbation, restored before the
  // final re-optimization.
  bool perturb = true;
  // Pivots without objective progress before switching to Bland's rule,
  // as a multiple of the row count.
  int64_t stall_factor = 50;
  bool log = false;
  bool full_pricing = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  // Best proven bound when the iteration limit is hit (phase 2 primal value).
  double best_bound = 0.0;
  std::vector<double> x;             // structural values
  std::vector<double> row_dual;      // y, in original row units
  std::vector<double> reduced_cost;  // structural reduced costs
  std::vector<double> row_activity;
  Basis basis;
  int64_t iterations = 0;
  int64_t phase1_iterations = 0;
  std::string message;
};

SolveResult Solve(const SparseLP& lp, const SolveOptions& options = {},
                  const Basis* warm_start = nullptr);

// KKT residuals of a solve result against the original LP.
struct KktReport {
  double primal_bound = 0.0;   // worst bound violation
  double primal_row = 0.0;     // worst row violation
  double dual_sign = 0.0;      // worst row-dual sign violation
  double dual_feas = 0.0;      // worst reduced-cost sign violation
  double complementarity = 0.0;  // worst per-row / per-bound slackness product
  double objective_gap = 0.0;  // |c'x - (y'b + bound terms)|
  bool Ok(double tol) const;
  std::string Summary() const;
};

KktReport VerifyKkt(const SparseLP& lp, const SolveResult& result);

}  // namespace auctionlp
