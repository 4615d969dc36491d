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

namespace auctionlp {

// eta is the law of xi^(B-1) with xi uniform on [0,1]; for B=1 it is the
// point mass at 1. CDF: t -> t^{1/(B-1)} for B >= 2.
double EtaCdf(int bidders, double t);
// eta([a,b]) for 0 <= a <= b <= 1.
double EtaMass(int bidders, double a, double b);
// Integral of t over [a,b] against eta: (b^{B/(B-1)} - a^{B/(B-1)})/B.
double EtaFirstMoment(int bidders, double a, double b);

enum class PartitionMode { kUniformBreakpoints, kExact };

// Discretization of eta by a breakpoint chain 0 = q_0 < ... < q_M = 1.
// Segment m has mass w_m = eta([q_{m-1}, q_m]) and conditional mean t_m.
// In exact mode the breakpoints additionally satisfy the property that any
// function constant on [0,t_1] and [t_M,1] and linear between consecutive
// t_m integrates exactly: integral phi d(eta) == sum_m phi(t_m) w_m.
struct MajorizationPartition {
  int bidders = 1;
  int segments = 1;
  PartitionMode mode = PartitionMode::kUniformBreakpoints;
  std::vector<double> q;  // size M+1
  std::vector<double> w;  // size M
  std::vector<double> t;  // size M

  double max_gap() const;  // max_m (q_m - q_{m-1})
  // Integral of (t - t_M)_+ over [t_M, 1] against eta; the tail term of the
  // quadratic gap bound.
  double tail_integral() const;
  // Exact value of integral phi d(eta) for phi piecewise linear with kinks at
  // the t_m and constant outside [t_1, t_M]; phi is given by its values at
  // the t_m. Used as the oracle for the exactness property.
  double IntegrateAdmissible(const std::vector<double>& phi_at_t) const;
  double QuadratureValue(const std::vector<double>& phi_at_t) const;

  // Throws if any structural invariant fails (breakpoint order, mass sum,
  // conditional-mean placement, eta-CDF consistency of the weights).
  void Validate() const;
};

struct PartitionBuildStats {
  int sweeps = 0;
  double residual = 0.0;  // relative spread of the one-sided moments A_m
};

MajorizationPartition BuildPartition(int bidders, int segments,
                                     PartitionMode mode,
                                     PartitionBuildStats* stats = nullptr);

// Segment masses and conditional means for a given breakpoint chain.
void ComputeSegmentStats(int bidders, const std::vector<double>& q,
                         std::vector<double>* w, std::vector<double>* t);

// Relative spread of A_m = integral over [t_m, q_m] of (t - t_m) d(eta);
// zero iff the partition has the exact-integration property.
double ExactnessResidual(int bidders, const std::vector<double>& q);

// CSV with columns m, q_m, w_m, t_m.
void WritePartitionCsv(const MajorizationPartition& partition,
                       std::ostream& out);

}  // namespace auctionlp
