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

#include "auctionlp/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auctionlp {

DualCertificate ExtractCertificate(const DualSolution& dual,
                                   const TypeGrid& grid,
                                   const MajorizationPartition& partition) {
  const int items = grid.items();
  const int64_t cells = grid.cells();
  const int segments = partition.segments;
  if (static_cast<int>(dual.mj_t.size()) != items ||
      static_cast<int>(dual.mj_j.size()) != items ||
      static_cast<int>(dual.mj_e.size()) != items) {
    throw std::invalid_argument("ExtractCertificate: missing family tags");
  }

  DualCertificate cert;
  cert.phi.assign(items, std::vector<double>(segments, 0.0));
  cert.psi.assign(items, std::vector<double>(cells, 0.0));
  cert.c.assign(items, std::vector<double>(cells, 0.0));
  // mj-T and mj-J are <=-rows of a maximization: duals must be >= 0.
  // mj-E is a >=-row: its dual is <= 0 and c = -y >= 0.
  constexpr double kSignSlack = 1e-7;
  for (int k = 0; k < items; ++k) {
    for (int m = 0; m < segments; ++m) {
      const double y = dual.mj_t[k][m];
      if (y < -kSignSlack) {
        throw std::runtime_error("ExtractCertificate: mj-T dual has wrong sign");
      }
      cert.phi[k][m] = std::max(y, 0.0);
    }
    for (int64_t j = 0; j < cells; ++j) {
      const double yj = dual.mj_j[k][j];
      const double ye = dual.mj_e[k][j];
      if (yj < -kSignSlack || ye > kSignSlack) {
        throw std::runtime_error("ExtractCertificate: mj dual has wrong sign");
      }
      // Zero-weight cells carry no dual weight; their basis-dependent duals
      // are dropped so they cannot distort the reconstructed phi.
      if (grid.mu(j) > 0.0) {
        cert.psi[k][j] = std::max(yj, 0.0);
        cert.c[k][j] = std::max(-ye, 0.0);
      }
    }
  }
  double obj = 0.0;
  for (int k = 0; k < items; ++k) {
    for (int m = 0; m < segments; ++m) obj += cert.phi[k][m] * partition.w[m];
    for (int64_t j = 0; j < cells; ++j) obj += cert.psi[k][j] * grid.mu(j);
  }
  cert.dual_objective = obj;
  return cert;
}

PiecewiseLinear ReconstructPhi(const DualCertificate& cert, int k) {
  return UpperEnvelopeOfLines(cert.c[k], cert.psi[k]);
}

double GapReport::BestBound() const {
  double b = kInfinity;
  if (linear_valid) b = std::min(b, linear_bound);
  if (quadratic_valid) b = std::min(b, quadratic_bound);
  return b;
}

GapReport CertifyGap(double primal_objective, const DualCertificate& cert,
                     const MajorizationPartition& partition) {
  GapReport report;
  report.primal_objective = primal_objective;
  report.epsilon = partition.max_gap();
  const double eta_upper_half =
      EtaMass(partition.bidders, 0.5, 1.0);
  report.c_eta = 3.0 * (1.0 + 1.0 / eta_upper_half);
  if (report.epsilon <= 1.0 / 6.0) {
    report.linear_valid = true;
    report.linear_bound =
        (1.0 + report.epsilon * report.c_eta) * primal_objective;
  } else {
    report.notes = "linear bound omitted: max breakpoint gap exceeds 1/6";
  }
  if (partition.mode == PartitionMode::kExact) {
    double c_sum = 0.0;
    for (const auto& ck : cert.c) {
      c_sum += *std::max_element(ck.begin(), ck.end());
    }
    report.quadratic_valid = true;
    report.quadratic_bound =
        primal_objective + partition.tail_integral() * c_sum;
  }
  report.weak_duality_residual = cert.dual_objective - primal_objective;
  return report;
}

CertificateCheck CheckCertificate(const PrimalSolution& primal,
                                  const DualCertificate& cert,
                                  const TypeGrid& grid,
                                  const MajorizationPartition& partition,
                                  double tol) {
  const int items = grid.items();
  const int64_t cells = grid.cells();
  const int segments = partition.segments;
  CertificateCheck check;

  // (a) weak duality.
  check.weak_duality_residual =
      std::max(0.0, primal.objective - cert.dual_objective);
  check.weak_duality_ok = check.weak_duality_residual <= tol;

  // lt-feasibility: phi[m][k] + psi[j][k] >= t_m * c[j][k].
  double lt_worst = 0.0;
  for (int k = 0; k < items; ++k) {
    for (int64_t j = 0; j < cells; ++j) {
      if (grid.mu(j) <= 0.0) continue;
      for (int m = 0; m < segments; ++m) {
        lt_worst = std::max(lt_worst, partition.t[m] * cert.c[k][j] -
                                          cert.phi[k][m] - cert.psi[k][j]);
      }
    }
  }
  check.lt_feasible_worst = lt_worst;
  check.lt_feasible_ok = lt_worst <= tol;

  // phi monotone in m (values of a non-decreasing function at increasing t).
  check.phi_monotone_ok = true;
  for (int k = 0; k < items; ++k) {
    for (int m = 1; m < segments; ++m) {
      if (cert.phi[k][m] < cert.phi[k][m - 1] - tol) {
        check.phi_monotone_ok = false;
      }
    }
  }

  // (b) slackness-E: c[j][k] * (sum_m t_m pi - mu_j p) = 0 per row.
  std::vector<std::vector<double>> pi_t(items,
                                        std::vector<double>(cells, 0.0));
  std::vector<std::vector<double>> pi_sum(items,
                                          std::vector<double>(cells, 0.0));
  for (const auto& e : primal.pi) {
    pi_t[e.k][e.j] += partition.t[e.m] * e.value;
    pi_sum[e.k][e.j] += e.value;
  }
  double slack_worst = 0.0;
  for (int k = 0; k < items; ++k) {
    for (int64_t j = 0; j < cells; ++j) {
      const double surplus = pi_t[k][j] - grid.mu(j) * primal.p[j][k];
      slack_worst = std::max(slack_worst, std::abs(cert.c[k][j] * surplus));
    }
  }
  check.slackness_e_worst = slack_worst;
  check.slackness_e_ok = slack_worst <= tol;

  // (c) Fenchel slackness wherever pi-mass is positive:
  // phi_k(p_{j,k}) + psi_{j,k} = p_{j,k} * c_{j,k}.
  double fenchel_worst = 0.0;
  for (int k = 0; k < items; ++k) {
    const PiecewiseLinear phi_k = ReconstructPhi(cert, k);
    for (int64_t j = 0; j < cells; ++j) {
      if (pi_sum[k][j] <= tol * grid.mu(j)) continue;
      const double lhs = phi_k(primal.p[j][k]) + cert.psi[k][j];
      const double rhs = primal.p[j][k] * cert.c[k][j];
      fenchel_worst = std::max(fenchel_worst, std::abs(lhs - rhs));
    }
  }
  check.fenchel_worst = fenchel_worst;
  check.fenchel_ok = fenchel_worst <= tol;

  // (d) ex-post estimate: <theta_j, p_j> - u_j - sum_k phi_k(p_{j,k}) >= 0
  // for every positive-weight cell.
  double expost_worst = 0.0;
  {
    std::vector<PiecewiseLinear> phis;
    phis.reserve(items);
    for (int k = 0; k < items; ++k) phis.push_back(ReconstructPhi(cert, k));
    for (int64_t j = 0; j < cells; ++j) {
      if (grid.mu(j) <= 0.0) continue;
      double revenue = -primal.u[j];
      for (int k = 0; k < items; ++k) {
        revenue += grid.theta(j, k) * primal.p[j][k] - phis[k](primal.p[j][k]);
      }
      expost_worst = std::max(expost_worst, -revenue);
    }
  }
  check.ex_post_worst = expost_worst;
  check.ex_post_ok = expost_worst <= tol;

  return check;
}

}  // namespace auctionlp
