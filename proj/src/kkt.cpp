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

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <cstdio>

#include "auctionlp/simplex.hpp"

namespace auctionlp {

bool KktReport::Ok(double tol) const {
  return primal_bound <= tol && primal_row <= tol && dual_sign <= tol &&
         dual_feas <= tol && complementarity <= tol && objective_gap <= tol;
}

std::string KktReport::Summary() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "primal_bound=%.3e primal_row=%.3e dual_sign=%.3e "
                "dual_feas=%.3e complementarity=%.3e objective_gap=%.3e",
                primal_bound, primal_row, dual_sign, dual_feas,
                complementarity, objective_gap);
  return buf;
}

// All checks are scale-relative to the row/column magnitudes involved so a
// single tolerance works across very different coefficient ranges.
KktReport VerifyKkt(const SparseLP& lp, const SolveResult& result) {
  KktReport report;
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  const std::vector<double>& x = result.x;
  const std::vector<double>& y = result.row_dual;

  for (int j = 0; j < n; ++j) {
    const double scale = 1.0 + std::abs(x[j]);
    if (lp.lower(j) > -kInfinity) {
      report.primal_bound =
          std::max(report.primal_bound, (lp.lower(j) - x[j]) / scale);
    }
    if (lp.upper(j) < kInfinity) {
      report.primal_bound =
          std::max(report.primal_bound, (x[j] - lp.upper(j)) / scale);
    }
  }

  {
    double worst = 0.0; int worst_j = -1;
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (lp.lower(j) > -kInfinity) v = std::max(v, lp.lower(j) - x[j]);
      if (lp.upper(j) < kInfinity) v = std::max(v, x[j] - lp.upper(j));
      if (v > worst) { worst = v; worst_j = j; }
    }
    if (worst > 1e-5 && std::getenv("AUCTIONLP_KKT_DEBUG")) {
      std::fprintf(stderr, "[kkt] worst bound violation %.4e at var %d (%s) x=%.6e lb=%.6e ub=%.6e\n",
                   worst, worst_j, lp.VarName(worst_j).c_str(), x[worst_j],
                   lp.lower(worst_j), lp.upper(worst_j));
    }
  }
  std::vector<double> activity(m);
  for (int i = 0; i < m; ++i) {
    double act = 0.0;
    double row_norm = 1.0;
    for (int64_t e = lp.row_start()[i]; e < lp.row_start()[i + 1]; ++e) {
      act += lp.row_value()[e] * x[lp.row_col()[e]];
      row_norm = std::max(row_norm, std::abs(lp.row_value()[e]));
    }
    activity[i] = act;
    const double scale = row_norm * (1.0 + std::abs(lp.rhs(i)));
    double viol = 0.0;
    double slack = lp.rhs(i) - act;
    switch (lp.sense(i)) {
      case RowSense::kLe:
        viol = act - lp.rhs(i);
        report.dual_sign = std::max(report.dual_sign, -y[i]);
        break;
      case RowSense::kGe:
        viol = lp.rhs(i) - act;
        report.dual_sign = std::max(report.dual_sign, y[i]);
        break;
      case RowSense::kEq:
        viol = std::abs(act - lp.rhs(i));
        break;
    }
    report.primal_row = std::max(report.primal_row, viol / scale);
    report.complementarity =
        std::max(report.complementarity, std::abs(y[i] * slack) / scale);
  }

  // Reduced costs recomputed from scratch; sign conditions use the position
  // of x relative to its bounds (maximization).
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = lp.objective(j);
  for (int i = 0; i < m; ++i) {
    if (y[i] == 0.0) continue;
    for (int64_t e = lp.row_start()[i]; e < lp.row_start()[i + 1]; ++e) {
      d[lp.row_col()[e]] -= y[i] * lp.row_value()[e];
    }
  }
  const double band = 1e-6;
  for (int j = 0; j < n; ++j) {
    if (lp.lower(j) == lp.upper(j)) continue;  // fixed: any d admissible
    const double scale = 1.0 + std::abs(lp.objective(j));
    const bool at_lower =
        lp.lower(j) > -kInfinity && x[j] <= lp.lower(j) + band;
    const bool at_upper = lp.upper(j) < kInfinity && x[j] >= lp.upper(j) - band;
    double viol = 0.0;
    if (at_lower && at_upper) {
      viol = 0.0;
    } else if (at_lower) {
      viol = std::max(0.0, d[j]);
    } else if (at_upper) {
      viol = std::max(0.0, -d[j]);
    } else {
      viol = std::abs(d[j]);
      report.complementarity = std::max(
          report.complementarity,
          std::abs(d[j]) * std::min(x[j] - lp.lower(j), lp.upper(j) - x[j]) /
              scale);
    }
    report.dual_feas = std::max(report.dual_feas, viol / scale);
  }

  // c'x = y'b + d'x holds at a complementary primal/dual pair.
  double cx = 0.0, yb = 0.0, dx = 0.0;
  for (int j = 0; j < n; ++j) cx += lp.objective(j) * x[j];
  for (int i = 0; i < m; ++i) yb += y[i] * lp.rhs(i);
  for (int j = 0; j < n; ++j) {
    if (std::abs(d[j]) > 1e-12) dx += d[j] * x[j];
  }
  report.objective_gap = std::abs(cx - yb - dx) / (1.0 + std::abs(cx));
  return report;
}

}  // namespace auctionlp
