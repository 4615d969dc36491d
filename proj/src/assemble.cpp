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

#include "auctionlp/assemble.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace auctionlp {

VarLayout LayoutOf(const TypeGrid& grid,
                   const MajorizationPartition& partition) {
  VarLayout layout;
  layout.cells = grid.cells();
  layout.items = grid.items();
  layout.segments = partition.segments;
  return layout;
}

SparseLP Assemble(const TypeGrid& grid, const MajorizationPartition& partition,
                  const std::vector<IcPair>& ic_pairs,
                  const AssembleOptions& options) {
  const int64_t cells = grid.cells();
  const int items = grid.items();
  const int segments = partition.segments;
  const VarLayout layout = LayoutOf(grid, partition);
  if (layout.total() > (int64_t{1} << 31) - 2) {
    throw std::invalid_argument("Assemble: model too large");
  }

  SparseLP lp;

  // Variables: u_j >= 0 (ir), objective -mu_j; p_{j,k} in [0, ub] with
  // objective mu_j * theta_{j,k}; pi_{j,m,k} >= 0 (mj-P), objective 0.
  // For mu_j = 0 the pi variables are fixed to zero (forced by mj-J anyway).
  for (int64_t j = 0; j < cells; ++j) {
    lp.AddVariable(0.0, kInfinity, -grid.mu(j),
                   {VarFamily::kU, {static_cast<int32_t>(j), -1, -1}});
  }
  for (int64_t j = 0; j < cells; ++j) {
    for (int k = 0; k < items; ++k) {
      double ub = options.fs_upper_bound ? 1.0 : kInfinity;
      // With one bidder t_M = 1 and the mj rows pin p <= 1 exactly for every
      // positive-weight cell; the relaxed (fs') form keeps the optimal dual
      // weight on the mj rows rather than on the variable bound.
      if (partition.bidders == 1 && grid.mu(j) > 0.0) ub = kInfinity;
      lp.AddVariable(0.0, ub, grid.mu(j) * grid.theta(j, k),
                     {VarFamily::kP,
                      {static_cast<int32_t>(j), static_cast<int32_t>(k), -1}});
    }
  }
  for (int64_t j = 0; j < cells; ++j) {
    const double pi_ub = grid.mu(j) > 0.0 ? kInfinity : 0.0;
    for (int k = 0; k < items; ++k) {
      for (int m = 0; m < segments; ++m) {
        lp.AddVariable(0.0, pi_ub, 0.0,
                       {VarFamily::kPi,
                        {static_cast<int32_t>(j), static_cast<int32_t>(m),
                         static_cast<int32_t>(k)}});
      }
    }
  }

  // ic rows: u_i - u_j - <theta_i - theta_j, p_j> >= 0.
  std::unordered_set<int64_t> seen;
  std::vector<std::pair<int, double>> entries;
  for (const auto& [i, j] : ic_pairs) {
    if (i == j) {
      throw std::invalid_argument("Assemble: ic pair (j,j) is not allowed");
    }
    if (i < 0 || j < 0 || i >= cells || j >= cells) {
      throw std::invalid_argument("Assemble: ic pair out of range");
    }
    if (!seen.insert(static_cast<int64_t>(i) * cells + j).second) {
      throw std::invalid_argument("Assemble: duplicate ic pair");
    }
    entries.clear();
    entries.push_back({static_cast<int>(layout.u(i)), 1.0});
    entries.push_back({static_cast<int>(layout.u(j)), -1.0});
    for (int k = 0; k < items; ++k) {
      const double dk = grid.theta(i, k) - grid.theta(j, k);
      if (dk != 0.0) entries.push_back({static_cast<int>(layout.p(j, k)), -dk});
    }
    lp.AddRow(RowSense::kGe, 0.0, entries, {RowFamily::kIc, {i, j, -1}});
  }

  // mj-T: sum_j pi_{j,m,k} <= w_m.
  for (int k = 0; k < items; ++k) {
    for (int m = 0; m < segments; ++m) {
      entries.clear();
      entries.reserve(cells);
      for (int64_t j = 0; j < cells; ++j) {
        entries.push_back({static_cast<int>(layout.pi(j, m, k)), 1.0});
      }
      lp.AddRow(RowSense::kLe, partition.w[m], entries,
                {RowFamily::kMjT, {static_cast<int32_t>(m),
                                   static_cast<int32_t>(k), -1}});
    }
  }

  // mj-J: sum_m pi_{j,m,k} <= mu_j.
  for (int k = 0; k < items; ++k) {
    for (int64_t j = 0; j < cells; ++j) {
      entries.clear();
      entries.reserve(segments);
      for (int m = 0; m < segments; ++m) {
        entries.push_back({static_cast<int>(layout.pi(j, m, k)), 1.0});
      }
      lp.AddRow(RowSense::kLe, grid.mu(j), entries,
                {RowFamily::kMjJ, {static_cast<int32_t>(j),
                                   static_cast<int32_t>(k), -1}});
    }
  }

  // mj-E: sum_m t_m pi_{j,m,k} - mu_j p_{j,k} >= 0.
  for (int k = 0; k < items; ++k) {
    for (int64_t j = 0; j < cells; ++j) {
      entries.clear();
      entries.reserve(segments + 1);
      for (int m = 0; m < segments; ++m) {
        entries.push_back(
            {static_cast<int>(layout.pi(j, m, k)), partition.t[m]});
      }
      if (grid.mu(j) > 0.0) {
        entries.push_back({static_cast<int>(layout.p(j, k)), -grid.mu(j)});
      }
      lp.AddRow(RowSense::kGe, 0.0, entries,
                {RowFamily::kMjE, {static_cast<int32_t>(j),
                                   static_cast<int32_t>(k), -1}});
    }
  }

  lp.Finalize();
  return lp;
}

double PrimalSolution::PiSum(int64_t j, int k,
                             const MajorizationPartition& partition,
                             bool weighted_by_t) const {
  double s = 0.0;
  for (const PiEntry& e : pi) {
    if (e.j == j && e.k == k) {
      s += weighted_by_t ? partition.t[e.m] * e.value : e.value;
    }
  }
  return s;
}

PrimalSolution ExtractPrimal(const SparseLP& lp, const SolveResult& result,
                             const TypeGrid& grid,
                             const MajorizationPartition& partition) {
  const VarLayout layout = LayoutOf(grid, partition);
  if (lp.num_vars() != layout.total()) {
    throw std::invalid_argument("ExtractPrimal: layout mismatch");
  }
  PrimalSolution sol;
  sol.status = result.status;
  sol.objective = result.objective;
  sol.u.resize(layout.cells);
  sol.p.assign(layout.cells, std::vector<double>(layout.items, 0.0));
  for (int64_t j = 0; j < layout.cells; ++j) {
    sol.u[j] = result.x[layout.u(j)];
    for (int k = 0; k < layout.items; ++k) {
      sol.p[j][k] = result.x[layout.p(j, k)];
    }
  }
  for (int64_t j = 0; j < layout.cells; ++j) {
    for (int k = 0; k < layout.items; ++k) {
      for (int m = 0; m < layout.segments; ++m) {
        const double v = result.x[layout.pi(j, m, k)];
        if (v != 0.0) {
          sol.pi.push_back({static_cast<int32_t>(j), static_cast<int32_t>(m),
                            static_cast<int32_t>(k), v});
        }
      }
    }
  }
  return sol;
}

DualSolution ExtractDual(const SparseLP& lp, const SolveResult& result,
                         const TypeGrid& grid,
                         const MajorizationPartition& partition) {
  DualSolution dual;
  const int64_t cells = grid.cells();
  const int items = grid.items();
  const int segments = partition.segments;
  dual.mj_t.assign(items, std::vector<double>(segments, 0.0));
  dual.mj_j.assign(items, std::vector<double>(cells, 0.0));
  dual.mj_e.assign(items, std::vector<double>(cells, 0.0));
  for (int i = 0; i < lp.num_rows(); ++i) {
    const RowInfo& info = lp.row_info(i);
    const double y = result.row_dual[i];
    switch (info.family) {
      case RowFamily::kIc:
        dual.ic.push_back(y);
        break;
      case RowFamily::kMjT:
        dual.mj_t[info.index[1]][info.index[0]] = y;
        break;
      case RowFamily::kMjJ:
        dual.mj_j[info.index[1]][info.index[0]] = y;
        break;
      case RowFamily::kMjE:
        dual.mj_e[info.index[1]][info.index[0]] = y;
        break;
      case RowFamily::kOther:
        break;
    }
  }
  double obj = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    obj += result.row_dual[i] * lp.rhs(i);
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    const double d = result.reduced_cost[j];
    if (d == 0.0) continue;
    const double v = result.x[j];
    const bool at_lower = lp.lower(j) > -kInfinity &&
                          std::abs(v - lp.lower(j)) <= 1e-9 * (1.0 + std::abs(v));
    const bool at_upper = lp.upper(j) < kInfinity &&
                          std::abs(v - lp.upper(j)) <= 1e-9 * (1.0 + std::abs(v));
    if (at_lower || at_upper) {
      dual.bound_duals.push_back({j, d});
      obj += d * v;
    }
  }
  dual.objective = obj;
  return dual;
}

double IcViolation(const TypeGrid& grid, const std::vector<double>& u,
                   const std::vector<std::vector<double>>& p, int64_t i,
                   int64_t j) {
  double rhs = 0.0;
  for (int k = 0; k < grid.items(); ++k) {
    rhs += (grid.theta(i, k) - grid.theta(j, k)) * p[j][k];
  }
  return rhs - (u[i] - u[j]);
}

}  // namespace auctionlp
