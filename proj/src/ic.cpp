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

#include "auctionlp/ic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace auctionlp {

namespace {

// Componentwise gcd of the absolute difference vector.
int DiffGcd(const std::vector<int>& d) {
  int g = 0;
  for (int v : d) g = std::gcd(g, std::abs(v));
  return g;
}

// Iterates over all nonzero difference vectors in (-n, n)^I.
template <typename Fn>
void ForEachDifference(int n, int items, Fn&& fn) {
  std::vector<int> d(items, -(n - 1));
  if (n == 1) return;
  for (;;) {
    bool all_zero = true;
    for (int v : d) {
      if (v != 0) all_zero = false;
    }
    if (!all_zero) fn(d);
    int k = items - 1;
    while (k >= 0 && d[k] == n - 1) {
      d[k] = -(n - 1);
      --k;
    }
    if (k < 0) break;
    ++d[k];
  }
}

// Number of ordered cell pairs realizing a given difference vector.
int64_t DifferenceMultiplicity(int n, const std::vector<int>& d) {
  int64_t count = 1;
  for (int v : d) count *= n - std::abs(v);
  return count;
}

// Enumerates ordered pairs whose difference matches one of the given
// direction vectors.
std::vector<IcPair> PairsFromDirections(
    int n, int items, const std::vector<std::vector<int>>& directions) {
  std::vector<IcPair> pairs;
  std::vector<int64_t> stride(items);
  int64_t cells = 1;
  for (int k = items - 1; k >= 0; --k) {
    stride[k] = cells;
    cells *= n;
  }
  std::vector<int> axes(items, 0);
  for (int64_t j = 0; j < cells; ++j) {
    for (const auto& d : directions) {
      bool ok = true;
      int64_t i = j;
      for (int k = 0; k < items; ++k) {
        const int a = axes[k] + d[k];
        if (a < 0 || a >= n) {
          ok = false;
          break;
        }
        i += static_cast<int64_t>(d[k]) * stride[k];
      }
      if (ok) pairs.push_back({static_cast<int32_t>(i), static_cast<int32_t>(j)});
    }
    for (int k = items - 1; k >= 0; --k) {
      if (++axes[k] < n) break;
      axes[k] = 0;
    }
  }
  return pairs;
}

}  // namespace

std::vector<IcPair> FullPairs(int n, int items) {
  std::vector<std::vector<int>> directions;
  ForEachDifference(n, items, [&](const std::vector<int>& d) {
    directions.push_back(d);
  });
  return PairsFromDirections(n, items, directions);
}

std::vector<IcPair> IrreduciblePairs(int n, int items) {
  std::vector<std::vector<int>> directions;
  ForEachDifference(n, items, [&](const std::vector<int>& d) {
    if (DiffGcd(d) == 1) directions.push_back(d);
  });
  return PairsFromDirections(n, items, directions);
}

std::vector<std::vector<int>> LocalDirections(int items, double c) {
  if (c < 1.0) throw std::invalid_argument("LocalDirections: c must be >= 1");
  const int r = static_cast<int>(std::floor(c));
  std::vector<std::vector<int>> directions;
  std::vector<int> d(items, -r);
  for (;;) {
    double norm2 = 0.0;
    for (int v : d) norm2 += static_cast<double>(v) * v;
    if (norm2 > 0.0 && norm2 <= c * c && DiffGcd(d) == 1) {
      directions.push_back(d);
    }
    int k = items - 1;
    while (k >= 0 && d[k] == r) {
      d[k] = -r;
      --k;
    }
    if (k < 0) break;
    ++d[k];
  }
  return directions;
}

std::vector<IcPair> LocalPairs(int n, int items, double c) {
  return PairsFromDirections(n, items, LocalDirections(items, c));
}

double IrreducibleFraction(int n, int items) {
  int64_t total = 0, irreducible = 0;
  ForEachDifference(n, items, [&](const std::vector<int>& d) {
    const int64_t mult = DifferenceMultiplicity(n, d);
    total += mult;
    if (DiffGcd(d) == 1) irreducible += mult;
  });
  return total == 0 ? 0.0 : static_cast<double>(irreducible) / total;
}

double MaxIcViolationAllPairs(const TypeGrid& grid,
                              const std::vector<double>& u,
                              const std::vector<std::vector<double>>& p) {
  const int64_t cells = grid.cells();
  double worst = 0.0;
  for (int64_t j = 0; j < cells; ++j) {
    for (int64_t i = 0; i < cells; ++i) {
      if (i == j) continue;
      worst = std::max(worst, IcViolation(grid, u, p, i, j));
    }
  }
  return worst;
}

namespace {

// Scans every irreducible pair for ic violations beyond tol against the
// current solution; returns the violated pairs.
std::vector<IcPair> ViolatedIrreduciblePairs(
    const TypeGrid& grid, const std::vector<double>& u,
    const std::vector<std::vector<double>>& p, double tol, double* worst_out) {
  const int n = grid.n();
  const int items = grid.items();
  std::vector<std::vector<int>> directions;
  ForEachDifference(n, items, [&](const std::vector<int>& d) {
    if (DiffGcd(d) == 1) directions.push_back(d);
  });

  std::vector<int64_t> stride(items);
  int64_t cells = 1;
  for (int k = items - 1; k >= 0; --k) {
    stride[k] = cells;
    cells *= n;
  }
  std::vector<IcPair> violated;
  double worst = 0.0;
  std::vector<int> axes(items, 0);
  const double inv_n = 1.0 / n;
  for (int64_t j = 0; j < cells; ++j) {
    for (const auto& d : directions) {
      int64_t i = j;
      bool ok = true;
      double rhs = 0.0;
      for (int k = 0; k < items; ++k) {
        const int a = axes[k] + d[k];
        if (a < 0 || a >= n) {
          ok = false;
          break;
        }
        i += static_cast<int64_t>(d[k]) * stride[k];
        rhs += d[k] * inv_n * p[j][k];
      }
      if (!ok) continue;
      const double viol = rhs - (u[i] - u[j]);
      if (viol > worst) worst = viol;
      if (viol > tol) {
        violated.push_back(
            {static_cast<int32_t>(i), static_cast<int32_t>(j)});
      }
    }
    for (int k = items - 1; k >= 0; --k) {
      if (++axes[k] < n) break;
      axes[k] = 0;
    }
  }
  if (worst_out) *worst_out = worst;
  return violated;
}

IterativeResult FinishResult(const SparseLP& lp, SolveResult&& solve,
                             const TypeGrid& grid,
                             const MajorizationPartition& partition,
                             std::vector<IcPair>&& pairs,
                             std::vector<RoundLog>&& rounds) {
  IterativeResult res;
  res.primal = ExtractPrimal(lp, solve, grid, partition);
  res.dual = ExtractDual(lp, solve, grid, partition);
  res.solve = std::move(solve);
  res.active_pairs = std::move(pairs);
  res.rounds = std::move(rounds);
  return res;
}

}  // namespace

IterativeResult SolveWithPairs(const TypeGrid& grid,
                               const MajorizationPartition& partition,
                               std::vector<IcPair> pairs,
                               const SolveOptions& solve_options,
                               const AssembleOptions& assemble_options) {
  SparseLP lp = Assemble(grid, partition, pairs, assemble_options);
  SolveResult solve = Solve(lp, solve_options);
  std::vector<RoundLog> rounds;
  rounds.push_back({0, static_cast<int64_t>(pairs.size()), solve.objective});
  IterativeResult res = FinishResult(lp, std::move(solve), grid, partition,
                                     std::move(pairs), std::move(rounds));
  if (res.solve.status == SolveStatus::kOptimal) {
    res.final_scan_violation =
        MaxIcViolationAllPairs(grid, res.primal.u, res.primal.p);
  }
  return res;
}

IterativeResult SolveIterative(const TypeGrid& grid,
                               const MajorizationPartition& partition,
                               const IcOptions& ic_options,
                               const SolveOptions& solve_options,
                               const AssembleOptions& assemble_options) {
  if (ic_options.mode == IcMode::kFull) {
    return SolveWithPairs(grid, partition, FullPairs(grid.n(), grid.items()),
                          solve_options, assemble_options);
  }
  if (ic_options.mode == IcMode::kIrreducible) {
    return SolveWithPairs(grid, partition,
                          IrreduciblePairs(grid.n(), grid.items()),
                          solve_options, assemble_options);
  }

  std::vector<IcPair> pairs =
      LocalPairs(grid.n(), grid.items(), ic_options.locality);
  std::vector<RoundLog> rounds;
  int64_t added_this_round = static_cast<int64_t>(pairs.size());
  SparseLP lp = Assemble(grid, partition, pairs, assemble_options);
  SolveResult solve = Solve(lp, solve_options);

  for (int round = 1; round <= ic_options.max_rounds; ++round) {
    rounds.push_back({round, added_this_round, solve.objective});
    if (solve.status != SolveStatus::kOptimal) {
      throw std::runtime_error(
          std::string("SolveIterative: LP solve failed with status ") +
          ToString(solve.status) +
          (solve.message.empty() ? "" : (": " + solve.message)));
    }
    PrimalSolution primal = ExtractPrimal(lp, solve, grid, partition);
    double worst = 0.0;
    std::vector<IcPair> violated = ViolatedIrreduciblePairs(
        grid, primal.u, primal.p, ic_options.tol_ic, &worst);
    if (violated.empty()) {
      IterativeResult res = FinishResult(lp, std::move(solve), grid, partition,
                                         std::move(pairs), std::move(rounds));
      res.final_scan_violation = worst;
      return res;
    }

    // Add every violated constraint and re-solve from the previous basis.
    // Variables are unchanged; the ic rows of the old pairs keep their order
    // and the new rows come in with their logicals basic.
    Basis warm = solve.basis;
    const size_t struct_count = warm.status.size() - lp.num_rows();
    std::vector<VarStatus> logicals(warm.status.begin() + struct_count,
                                    warm.status.end());
    warm.status.resize(struct_count);

    const size_t ic_old_count = pairs.size();
    pairs.insert(pairs.end(), violated.begin(), violated.end());
    added_this_round = static_cast<int64_t>(violated.size());
    lp = Assemble(grid, partition, pairs, assemble_options);

    warm.status.insert(warm.status.end(), logicals.begin(),
                       logicals.begin() + ic_old_count);
    warm.status.insert(warm.status.end(), violated.size(), VarStatus::kBasic);
    warm.status.insert(warm.status.end(), logicals.begin() + ic_old_count,
                       logicals.end());
    solve = Solve(lp, solve_options, &warm);
  }
  throw std::runtime_error("SolveIterative: round limit exceeded; objective " +
                           std::to_string(solve.objective));
}

void WriteRoundsCsv(const std::vector<RoundLog>& rounds, std::ostream& out) {
  out << "round,added,objective\n";
  char buf[96];
  for (const RoundLog& r : rounds) {
    std::snprintf(buf, sizeof(buf), "%d,%lld,%.17g\n", r.round,
                  static_cast<long long>(r.added), r.objective);
    out << buf;
  }
}

}  // namespace auctionlp
