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

#include <string>
#include <vector>

#include "auctionlp/assemble.hpp"
#include "auctionlp/grid.hpp"
#include "auctionlp/partition.hpp"
#include "auctionlp/piecewise.hpp"

namespace auctionlp {

// Dual data recovered from the mj-row duals: phi[m][k] from mj-T, psi[j][k]
// from mj-J, and c[j][k] from mj-E (the discrete transport field; for one
// item it approximates the positive part of the ironed virtual valuation).
// dual_objective = sum_k (sum_m phi*w + sum_j psi*mu).
struct DualCertificate {
  std::vector<std::vector<double>> phi;  // [k][m]
  std::vector<std::vector<double>> psi;  // [k][j]
  std::vector<std::vector<double>> c;    // [k][j]
  double dual_objective = 0.0;
};

DualCertificate ExtractCertificate(const DualSolution& dual,
                                   const TypeGrid& grid,
                                   const MajorizationPartition& partition);

// The cost function behind the certificate for item k:
// phi_k(t) = max{0, max_j (t*c[j][k] - psi[j][k])}; convex, non-decreasing,
// phi_k(0) = 0, and phi_k(t_m) matches phi[m][k] at a dual optimum.
PiecewiseLinear ReconstructPhi(const DualCertificate& cert, int k);

struct GapReport {
  double epsilon = 0.0;       // max breakpoint gap
  double c_eta = 0.0;         // 3*(1 + 1/eta([1/2,1]))
  double primal_objective = 0.0;
  bool linear_valid = false;  // epsilon <= 1/6
  double linear_bound = 0.0;  // (1 + epsilon*C)*objective
  bool quadratic_valid = false;  // exact partitions only
  double quadratic_bound = 0.0;  // objective + tail * sum_k max_j c
  double weak_duality_residual = 0.0;  // dual - primal
  std::string notes;
  double BestBound() const;
};

GapReport CertifyGap(double primal_objective, const DualCertificate& cert,
                     const MajorizationPartition& partition);

// Complementary-slackness and a-priori checks of a primal/certificate pair.
struct CertificateCheck {
  bool weak_duality_ok = false;
  double weak_duality_residual = 0.0;  // negative part of (dual - primal)
  bool slackness_e_ok = false;
  double slackness_e_worst = 0.0;
  bool fenchel_ok = false;
  double fenchel_worst = 0.0;
  bool ex_post_ok = false;
  double ex_post_worst = 0.0;
  bool lt_feasible_ok = false;
  double lt_feasible_worst = 0.0;
  bool phi_monotone_ok = false;
  bool AllOk() const {
    return weak_duality_ok && slackness_e_ok && fenchel_ok && ex_post_ok &&
           lt_feasible_ok && phi_monotone_ok;
  }
};

CertificateCheck CheckCertificate(const PrimalSolution& primal,
                                  const DualCertificate& cert,
                                  const TypeGrid& grid,
                                  const MajorizationPartition& partition,
                                  double tol = 1e-6);

}  // namespace auctionlp
