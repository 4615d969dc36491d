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
#include <vector>

#include "auctionlp/assemble.hpp"
#include "auctionlp/grid.hpp"
#include "auctionlp/partition.hpp"
#include "auctionlp/simplex.hpp"

namespace auctionlp {

enum class IcMode { kFull, kIrreducible, kLocalIterative };

// All ordered pairs (i, j), i != j.
std::vector<IcPair> FullPairs(int n, int items);
// Ordered pairs whose lattice difference has componentwise gcd 1; enforcing
// ic on these implies ic on all pairs.
std::vector<IcPair> IrreduciblePairs(int n, int items);
// Irreducible pairs with Euclidean lattice-difference norm <= c. Rejects
// c < 1.
std::vector<IcPair> LocalPairs(int n, int items, double c);

// Fraction of ordered pairs that are irreducible, computed from difference
// multiplicities (no pair enumeration).
double IrreducibleFraction(int n, int items);

// Gcd-1 difference vectors with norm <= c, up to sign/permutation expansion
// (every signed vector listed once). Exposed for tests.
std::vector<std::vector<int>> LocalDirections(int items, double c);

struct IcOptions {
  IcMode mode = IcMode::kLocalIterative;
  double locality = 2.5;   // lattice units, local modes only
  double tol_ic = 1e-8;    // violation threshold in the scan
  int max_rounds = 100;
};

struct RoundLog {
  int round = 0;
  int64_t added = 0;
  double objective = 0.0;
};

struct IterativeResult {
  SolveResult solve;
  PrimalSolution primal;
  DualSolution dual;
  std::vector<RoundLog> rounds;
  std::vector<IcPair> active_pairs;  // pairs present in the final program
  double final_scan_violation = 0.0;  // max over all irreducible pairs
};

// Cutting-plane loop: start from the local pairs, solve, scan all
// irreducible pairs for violations, add every violated pair, re-solve with
// a warm basis. Returns when a full scan is clean.
IterativeResult SolveIterative(const TypeGrid& grid,
                               const MajorizationPartition& partition,
                               const IcOptions& ic_options,
                               const SolveOptions& solve_options,
                               const AssembleOptions& assemble_options = {});

// One-shot solve with a fixed pair set (full or irreducible modes).
IterativeResult SolveWithPairs(const TypeGrid& grid,
                               const MajorizationPartition& partition,
                               std::vector<IcPair> pairs,
                               const SolveOptions& solve_options,
                               const AssembleOptions& assemble_options = {});

// Worst ic violation over every ordered pair (soundness check); O(n^{2I}).
double MaxIcViolationAllPairs(const TypeGrid& grid,
                              const std::vector<double>& u,
                              const std::vector<std::vector<double>>& p);

// CSV log: round,added,objective
void WriteRoundsCsv(const std::vector<RoundLog>& rounds, std::ostream& out);

}  // namespace auctionlp
