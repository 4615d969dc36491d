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
#include <vector>

#include "auctionlp/assemble.hpp"
#include "auctionlp/grid.hpp"
#include "auctionlp/partition.hpp"

namespace auctionlp {

// Max-affine extension of a grid solution:
// u(x) = max{0, max_j (u_j + <x - theta_j, p_j>)}. Convex, non-decreasing,
// and equal to u_j at theta_j whenever the ic rows hold.
class ExtendedUtility {
 public:
  ExtendedUtility(const TypeGrid* grid, std::vector<double> u,
                  std::vector<std::vector<double>> p);
  double operator()(const std::vector<double>& x) const;
  // Index of the affine piece attaining the max (-1 for the zero piece).
  int64_t ArgmaxPiece(const std::vector<double>& x) const;

 private:
  const TypeGrid* grid_;
  std::vector<double> u_;
  std::vector<std::vector<double>> p_;
};

ExtendedUtility ExtendU(const PrimalSolution& primal, const TypeGrid& grid);

// Interim mechanism read off a primal solution: allocation p, transfer
// t_j = <theta_j, p_j> - u_j, per-bidder revenue sum_j mu_j t_j, and the
// total revenue B times that.
struct ReducedMechanism {
  const TypeGrid* grid = nullptr;
  int bidders = 1;
  std::vector<std::vector<double>> p;  // [j][k]
  std::vector<double> u;               // [j]
  std::vector<double> transfer;        // [j]
  double per_bidder_revenue = 0.0;
  double total_revenue = 0.0;
};

ReducedMechanism ReducedForm(const PrimalSolution& primal,
                             const TypeGrid& grid, int bidders);

// Hinge-function test of the increasing convex order: for each item k and
// each t on a uniform grid,
//   violation_k(t) = sum_j mu_j max{0, p_jk - t}
//                    - integral of max{0, z^{B-1} - t} dz.
// Feasible reduced forms stay <= 0 up to solver tolerance; the slack mass
// mu0 sits at allocation 0 and never contributes.
double CheckMajorization(const ReducedMechanism& mech,
                         const MajorizationPartition& partition,
                         int t_grid_size);

// Closed form of the eta side: integral of max{0, z^{B-1} - t} dz over [0,1].
double EtaHingeIntegral(int bidders, double t);

// CSV with columns j, theta, p_1..p_I, transfer.
void WriteMechanismCsv(const ReducedMechanism& mech, std::ostream& out);
// Allocation of item k as an n x n matrix (two-item grids only).
void WriteAllocationMatrixCsv(const ReducedMechanism& mech, int k,
                              std::ostream& out);

}  // namespace auctionlp
