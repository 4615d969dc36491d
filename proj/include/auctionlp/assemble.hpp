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
#include <utility>
#include <vector>

#include "auctionlp/grid.hpp"
#include "auctionlp/lp.hpp"
#include "auctionlp/partition.hpp"
#include "auctionlp/simplex.hpp"

namespace auctionlp {

using IcPair = std::pair<int32_t, int32_t>;

struct AssembleOptions {
  // Keep the explicit p <= 1 bound. It is implied by the mj rows whenever
  // mu_j > 0, and for one bidder (t_M = 1) dropping it keeps the dual weight
  // on the mj rows where the certificate reads it. Zero-weight cells always
  // keep the explicit bound since the mj rows say nothing about them.
  bool fs_upper_bound = true;
};

// The linear program over variables u_j, p_{j,k}, pi_{j,m,k} with constraint
// families ic, mj-T, mj-J, mj-E. Row/variable order is deterministic:
// variables u (by j), p (by j, k), pi (by j, m, k); rows ic (pair order),
// mj-T (by k, m), mj-J (by k, j), mj-E (by k, j).
SparseLP Assemble(const TypeGrid& grid, const MajorizationPartition& partition,
                  const std::vector<IcPair>& ic_pairs,
                  const AssembleOptions& options = {});

// Variable-index helpers matching the Assemble layout.
struct VarLayout {
  int64_t cells = 0;
  int items = 0;
  int segments = 0;
  int64_t u(int64_t j) const { return j; }
  int64_t p(int64_t j, int k) const { return cells + j * items + k; }
  int64_t pi(int64_t j, int m, int k) const {
    return cells + cells * items + (j * items + k) * segments + m;
  }
  int64_t total() const { return cells * (1 + items + items * segments); }
};
VarLayout LayoutOf(const TypeGrid& grid, const MajorizationPartition& partition);

struct PrimalSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;  // per-bidder revenue
  std::vector<double> u;                  // [j]
  std::vector<std::vector<double>> p;     // [j][k]
  // pi stored sparse: tuples (j, m, k, value)
  struct PiEntry {
    int32_t j, m, k;
    double value;
  };
  std::vector<PiEntry> pi;
  double PiSum(int64_t j, int k, const MajorizationPartition& partition,
               bool weighted_by_t) const;
};

struct DualSolution {
  double objective = 0.0;  // y'b plus bound-dual terms
  std::vector<double> ic;                    // per ic row
  std::vector<std::vector<double>> mj_t;     // [k][m]
  std::vector<std::vector<double>> mj_j;     // [k][j]
  std::vector<std::vector<double>> mj_e;     // [k][j]
  // Reduced costs of variables sitting at a bound (fs', mj-P), reported
  // separately from row duals.
  std::vector<std::pair<int32_t, double>> bound_duals;
};

PrimalSolution ExtractPrimal(const SparseLP& lp, const SolveResult& result,
                             const TypeGrid& grid,
                             const MajorizationPartition& partition);
DualSolution ExtractDual(const SparseLP& lp, const SolveResult& result,
                         const TypeGrid& grid,
                         const MajorizationPartition& partition);

// Violation of the ic inequality u_i - u_j >= <theta_i - theta_j, p_j>;
// positive means violated.
double IcViolation(const TypeGrid& grid, const std::vector<double>& u,
                   const std::vector<std::vector<double>>& p, int64_t i,
                   int64_t j);

}  // namespace auctionlp
