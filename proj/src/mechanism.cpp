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

#include "auctionlp/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace auctionlp {

ExtendedUtility::ExtendedUtility(const TypeGrid* grid, std::vector<double> u,
                                 std::vector<std::vector<double>> p)
    : grid_(grid), u_(std::move(u)), p_(std::move(p)) {}

double ExtendedUtility::operator()(const std::vector<double>& x) const {
  double best = 0.0;
  const int items = grid_->items();
  for (int64_t j = 0; j < grid_->cells(); ++j) {
    double v = u_[j];
    for (int k = 0; k < items; ++k) {
      v += (x[k] - grid_->theta(j, k)) * p_[j][k];
    }
    best = std::max(best, v);
  }
  return best;
}

int64_t ExtendedUtility::ArgmaxPiece(const std::vector<double>& x) const {
  double best = 0.0;
  int64_t arg = -1;
  const int items = grid_->items();
  for (int64_t j = 0; j < grid_->cells(); ++j) {
    double v = u_[j];
    for (int k = 0; k < items; ++k) {
      v += (x[k] - grid_->theta(j, k)) * p_[j][k];
    }
    if (v > best) {
      best = v;
      arg = j;
    }
  }
  return arg;
}

ExtendedUtility ExtendU(const PrimalSolution& primal, const TypeGrid& grid) {
  return ExtendedUtility(&grid, primal.u, primal.p);
}

ReducedMechanism ReducedForm(const PrimalSolution& primal,
                             const TypeGrid& grid, int bidders) {
  ReducedMechanism mech;
  mech.grid = &grid;
  mech.bidders = bidders;
  mech.p = primal.p;
  mech.u = primal.u;
  mech.transfer.resize(grid.cells());
  double revenue = 0.0;
  for (int64_t j = 0; j < grid.cells(); ++j) {
    double value = 0.0;
    for (int k = 0; k < grid.items(); ++k) {
      value += grid.theta(j, k) * primal.p[j][k];
    }
    mech.transfer[j] = value - primal.u[j];
    revenue += grid.mu(j) * mech.transfer[j];
  }
  mech.per_bidder_revenue = revenue;
  mech.total_revenue = bidders * revenue;
  return mech;
}

double EtaHingeIntegral(int bidders, double t) {
  if (t >= 1.0) return 0.0;
  if (bidders == 1) return 1.0 - t;  // z^0 == 1
  const double s = std::pow(t, 1.0 / (bidders - 1));
  const double b = static_cast<double>(bidders);
  return (1.0 / b - t) - (std::pow(s, b) / b - t * s);
}

double CheckMajorization(const ReducedMechanism& mech,
                         const MajorizationPartition& partition,
                         int t_grid_size) {
  if (t_grid_size < 100) {
    throw std::invalid_argument("CheckMajorization: t grid too coarse");
  }
  const TypeGrid& grid = *mech.grid;
  double worst = -kInfinity;
  for (int k = 0; k < grid.items(); ++k) {
    for (int ti = 0; ti <= t_grid_size; ++ti) {
      const double t = static_cast<double>(ti) / t_grid_size;
      double lhs = 0.0;
      for (int64_t j = 0; j < grid.cells(); ++j) {
        lhs += grid.mu(j) * std::max(0.0, mech.p[j][k] - t);
      }
      worst = std::max(worst, lhs - EtaHingeIntegral(partition.bidders, t));
    }
  }
  return worst;
}

void WriteMechanismCsv(const ReducedMechanism& mech, std::ostream& out) {
  const TypeGrid& grid = *mech.grid;
  out << "j";
  for (int k = 0; k < grid.items(); ++k) out << ",theta_" << (k + 1);
  for (int k = 0; k < grid.items(); ++k) out << ",p_" << (k + 1);
  out << ",transfer\n";
  char buf[64];
  for (int64_t j = 0; j < grid.cells(); ++j) {
    out << j;
    for (int k = 0; k < grid.items(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", grid.theta(j, k));
      out << ',' << buf;
    }
    for (int k = 0; k < grid.items(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", mech.p[j][k]);
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", mech.transfer[j]);
    out << ',' << buf << '\n';
  }
}

void WriteAllocationMatrixCsv(const ReducedMechanism& mech, int k,
                              std::ostream& out) {
  const TypeGrid& grid = *mech.grid;
  if (grid.items() != 2) {
    throw std::invalid_argument(
        "WriteAllocationMatrixCsv: contour grids are for two items");
  }
  const int n = grid.n();
  char buf[64];
  std::vector<int> axes(2);
  for (int a0 = 0; a0 < n; ++a0) {
    for (int a1 = 0; a1 < n; ++a1) {
      axes[0] = a0;
      axes[1] = a1;
      const int64_t j = grid.flat_index(axes);
      std::snprintf(buf, sizeof(buf), "%.17g", mech.p[j][k]);
      out << buf << (a1 + 1 < n ? "," : "\n");
    }
  }
}

}  // namespace auctionlp
