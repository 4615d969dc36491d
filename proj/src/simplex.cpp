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
//
// Bounded-variable primal revised simplex. Phase 1 minimizes the sum of
// infeasibilities with a composite objective; phase 2 prices with Devex
// weights over a candidate list and falls back to Bland's rule after a
// degeneracy stall. The basis is kept as a sparse LU with product-form
// updates and periodic refactorization.

#include "auctionlp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "auctionlp/basis_lu.hpp"

namespace auctionlp {

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRatioEps = 1e-11;
constexpr int kCandidates = 64;

class SimplexSolver {
 public:
  SimplexSolver(const SparseLP& lp, const SolveOptions& opt)
      : lp_(lp), opt_(opt) {}

  SolveResult Run(const Basis* warm);

 private:
  enum class StepOutcome { kMoved, kOptimal, kUnbounded, kStuck, kRetry };

  void BuildProblem();
  void InstallBasis(const Basis* warm);
  void SlackBasis();
  bool Refactorize();
  void EnsureFactorized();
  void ComputeBasicValues();
  void ComputePhase2Duals();
  double Infeasibility(double* max_violation) const;

  StepOutcome Phase1Step();
  StepOutcome Phase2Step();

  // Shared pivot machinery.
  enum class PivotOutcome { kOk, kRejectTiny, kRejectDrift };
  PivotOutcome ApplyPivot(int entering, int sign, double theta, int leave_pos,
                          bool leave_to_upper, bool maintain_duals,
                          double d_entering);
  void ApplyBoundFlip(int entering, int sign, double theta);

  void FtranColumn(int j);                     // fills wcol_
  void BtranUnit(int pos);                     // fills rho_
  void ComputePivotRow();                      // rho_ -> alpha_
  double ColumnDot(const std::vector<double>& row_vec, int j) const;

  int PriceFullBland(double tol) const;
  int PriceDevex(double tol);
  void RebuildCandidates(double tol);
  bool Eligible(int j, double d, double tol) const;

  struct RatioResult {
    bool unbounded = false;
    bool bound_flip = false;
    int leave_pos = -1;
    bool leave_to_upper = false;
    double theta = 0.0;
    double pivot = 0.0;
  };
  RatioResult RatioTestPhase2(int entering, int sign);
  RatioResult RatioTestPhase1(int entering, int sign);

  double SolutionObjective() const;
  void Progress(double delta);
  double BasisResidual() const;  // max row residual of the tracked solution
  void ParanoidCheck(const char* where);

  const SparseLP& lp_;
  SolveOptions opt_;
  int m_ = 0, n_struct_ = 0, n_total_ = 0;
  std::vector<double> cost_, lb_, ub_;
  std::vector<double> lb_true_, ub_true_;
  bool perturbed_ = false;
  std::vector<double> rhs_;
  std::vector<double> row_scale_;
  std::vector<int64_t> cs_;
  std::vector<int32_t> cr_;
  std::vector<double> cv_;
  std::vector<int64_t> rs_;
  std::vector<int32_t> rc_;
  std::vector<double> rv_;

  std::vector<VarStatus> stat_;
  std::vector<int32_t> basic_;
  std::vector<int32_t> pos_of_;
  std::vector<double> x_;
  BasisLu lu_;
  struct Eta {
    int32_t pos;
    double pivot;
    std::vector<std::pair<int32_t, double>> nz;
  };
  std::vector<Eta> etas_;
  int64_t eta_nnz_ = 0;

  std::vector<double> d_;
  std::vector<double> devex_;
  std::vector<int32_t> candidates_;
  std::vector<char> banned_;
  bool duals_valid_ = false;

  std::vector<double> wcol_;
  std::vector<int32_t> wcol_nz_;
  std::vector<double> rho_;
  std::vector<double> alpha_;
  std::vector<int32_t> alpha_nz_;

  double obj_ = 0.0;
  int64_t iters_ = 0, phase1_iters_ = 0;
  int64_t flips_ = 0, degen_ = 0;
  int64_t since_progress_ = 0;
  int64_t stall_limit_ = 0;
  int64_t max_iters_ = 0;
  int updates_since_refactor_ = 0;
  int ban_rechecks_ = 0;
  int64_t picks_since_rebuild_ = 0;
  bool bland_ = false;
  std::string message_;

  bool is_logical(int j) const { return j >= n_struct_; }
};

void SimplexSolver::BuildProblem() {
  m_ = lp_.num_rows();
  n_struct_ = lp_.num_vars();
  n_total_ = n_struct_ + m_;

  row_scale_.assign(m_, 1.0);
  if (opt_.scale_rows) {
    for (int i = 0; i < m_; ++i) {
      double amax = 0.0;
      for (int64_t e = lp_.row_start()[i]; e < lp_.row_start()[i + 1]; ++e) {
        amax = std::max(amax, std::abs(lp_.row_value()[e]));
      }
      if (amax > 0.0) {
        row_scale_[i] = std::clamp(1.0 / amax, 1e-8, 1e8);
      }
    }
  }

  cost_.assign(n_total_, 0.0);
  lb_.assign(n_total_, 0.0);
  ub_.assign(n_total_, 0.0);
  for (int j = 0; j < n_struct_; ++j) {
    cost_[j] = lp_.objective(j);
    lb_[j] = lp_.lower(j);
    ub_[j] = lp_.upper(j);
  }
  rhs_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    rhs_[i] = lp_.rhs(i) * row_scale_[i];
    const int sj = n_struct_ + i;
    switch (lp_.sense(i)) {
      case RowSense::kLe:
        lb_[sj] = 0.0;
        ub_[sj] = kInf;
        break;
      case RowSense::kGe:
        lb_[sj] = -kInf;
        ub_[sj] = 0.0;
        break;
      case RowSense::kEq:
        lb_[sj] = 0.0;
        ub_[sj] = 0.0;
        break;
    }
  }

  // Scaled copies of the structural matrix, both orientations.
  const auto& col_start = lp_.col_start();
  const auto& col_row = lp_.col_row();
  const auto& col_value = lp_.col_value();
  cs_.assign(col_start.begin(), col_start.end());
  cr_.assign(col_row.begin(), col_row.end());
  cv_.resize(col_value.size());
  for (size_t e = 0; e < col_value.size(); ++e) {
    cv_[e] = col_value[e] * row_scale_[col_row[e]];
  }
  rs_.assign(lp_.row_start().begin(), lp_.row_start().end());
  rc_.assign(lp_.row_col().begin(), lp_.row_col().end());
  rv_.resize(lp_.row_value().size());
  for (int i = 0; i < m_; ++i) {
    for (int64_t e = rs_[i]; e < rs_[i + 1]; ++e) {
      rv_[e] = lp_.row_value()[e] * row_scale_[i];
    }
  }

  x_.assign(n_total_, 0.0);
  d_.assign(n_total_, 0.0);
  devex_.assign(n_total_, 1.0);
  banned_.assign(n_total_, 0);
  wcol_.assign(m_, 0.0);
  rho_.assign(m_, 0.0);
  alpha_.assign(n_total_, 0.0);
  pos_of_.assign(n_total_, -1);
  basic_.assign(m_, 0);

  stall_limit_ = std::max<int64_t>(1000, opt_.stall_factor * m_);
  max_iters_ = opt_.max_iterations > 0
                   ? opt_.max_iterations
                   : 20000 + 50 * static_cast<int64_t>(m_);

  // Deterministic bound perturbation against primal degeneracy; the true
  // bounds are restored before the final re-optimization.
  lb_true_ = lb_;
  ub_true_ = ub_;
  if (opt_.perturb) {
    auto mix = [](uint64_t z) {
      z += 0x9e3779b97f4a7c15ull;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    const double scale = 0.125 * opt_.feas_tol;
    for (int j = 0; j < n_total_; ++j) {
      if (lb_[j] == ub_[j]) continue;  // fixed stays fixed
      const double xi =
          scale * (0.5 + 0.5 * (mix(j) >> 11) * 0x1.0p-53);
      const double xi2 =
          scale * (0.5 + 0.5 * (mix(~static_cast<uint64_t>(j)) >> 11) *
                             0x1.0p-53);
      if (lb_[j] > -kInf) lb_[j] -= xi;
      if (ub_[j] < kInf) ub_[j] += xi2;
    }
    perturbed_ = true;
  }
}

void SimplexSolver::SlackBasis() {
  for (int j = 0; j < n_struct_; ++j) {
    if (lb_[j] == ub_[j]) {
      stat_[j] = VarStatus::kFixed;
      x_[j] = lb_[j];
    } else if (lb_[j] > -kInf) {
      stat_[j] = VarStatus::kAtLower;
      x_[j] = lb_[j];
    } else if (ub_[j] < kInf) {
      stat_[j] = VarStatus::kAtUpper;
      x_[j] = ub_[j];
    } else {
      stat_[j] = VarStatus::kFree;
      x_[j] = 0.0;
    }
    pos_of_[j] = -1;
  }
  for (int i = 0; i < m_; ++i) {
    const int sj = n_struct_ + i;
    stat_[sj] = VarStatus::kBasic;
    basic_[i] = sj;
    pos_of_[sj] = i;
  }
}

void SimplexSolver::InstallBasis(const Basis* warm) {
  stat_.assign(n_total_, VarStatus::kAtLower);
  if (warm == nullptr ||
      static_cast<int>(warm->status.size()) != n_total_) {
    SlackBasis();
    return;
  }
  int basics = 0;
  for (int j = 0; j < n_total_; ++j) {
    VarStatus s = warm->status[j];
    if (s == VarStatus::kBasic) {
      ++basics;
      stat_[j] = s;
      continue;
    }
    // Coerce nonbasic statuses to consistent bounds.
    if (lb_[j] == ub_[j]) {
      s = VarStatus::kFixed;
    } else if (s == VarStatus::kAtLower && lb_[j] <= -kInf) {
      s = ub_[j] < kInf ? VarStatus::kAtUpper : VarStatus::kFree;
    } else if (s == VarStatus::kAtUpper && ub_[j] >= kInf) {
      s = lb_[j] > -kInf ? VarStatus::kAtLower : VarStatus::kFree;
    } else if (s == VarStatus::kFree && lb_[j] > -kInf) {
      s = VarStatus::kAtLower;
    }
    stat_[j] = s;
  }
  if (basics != m_) {
    SlackBasis();
    return;
  }
  int pos = 0;
  for (int j = 0; j < n_total_; ++j) {
    pos_of_[j] = -1;
    if (stat_[j] == VarStatus::kBasic) {
      basic_[pos] = j;
      pos_of_[j] = pos;
      ++pos;
    }
  }
  for (int j = 0; j < n_total_; ++j) {
    if (stat_[j] == VarStatus::kBasic) continue;
    switch (stat_[j]) {
      case VarStatus::kAtLower:
      case VarStatus::kFixed:
        x_[j] = lb_[j];
        break;
      case VarStatus::kAtUpper:
        x_[j] = ub_[j];
        break;
      default:
        x_[j] = 0.0;
        break;
    }
  }
}

bool SimplexSolver::Refactorize() {
  std::vector<std::vector<BasisLu::Entry>> cols(m_);
  for (int p = 0; p < m_; ++p) {
    const int j = basic_[p];
    if (is_logical(j)) {
      cols[p].push_back({j - n_struct_, 1.0});
    } else {
      cols[p].reserve(cs_[j + 1] - cs_[j]);
      for (int64_t e = cs_[j]; e < cs_[j + 1]; ++e) {
        cols[p].push_back({cr_[e], cv_[e]});
      }
    }
  }
  std::vector<int> unpivoted_rows;
  const std::vector<int> failed =
      lu_.Factorize(cols, 0.1, 1e-11, &unpivoted_rows);
  etas_.clear();
  eta_nnz_ = 0;
  updates_since_refactor_ = 0;
  duals_valid_ = false;
  if (failed.empty()) return true;

  // Repair: swap the logicals of the uncovered rows into the deficient
  // positions, displacing their variables to a bound. Positions already
  // holding such a logical keep it.
  std::vector<char> row_needed(m_, 0);
  for (int r : unpivoted_rows) row_needed[r] = 1;
  std::vector<int> open_positions;
  for (int p : failed) {
    const int j = basic_[p];
    if (is_logical(j) && row_needed[j - n_struct_]) {
      row_needed[j - n_struct_] = 0;  // stays, will pivot next time
    } else {
      open_positions.push_back(p);
    }
  }
  size_t next = 0;
  for (int r : unpivoted_rows) {
    if (!row_needed[r] ) continue;
    if (next >= open_positions.size()) break;
    const int p = open_positions[next++];
    const int displaced = basic_[p];
    const int logical = n_struct_ + r;
    basic_[p] = logical;
    pos_of_[logical] = p;
    pos_of_[displaced] = -1;
    if (lb_[displaced] == ub_[displaced]) {
      stat_[displaced] = VarStatus::kFixed;
      x_[displaced] = lb_[displaced];
    } else if (lb_[displaced] > -kInf &&
               (x_[displaced] - lb_[displaced] <=
                ub_[displaced] - x_[displaced])) {
      stat_[displaced] = VarStatus::kAtLower;
      x_[displaced] = lb_[displaced];
    } else if (ub_[displaced] < kInf) {
      stat_[displaced] = VarStatus::kAtUpper;
      x_[displaced] = ub_[displaced];
    } else {
      stat_[displaced] = VarStatus::kFree;
      x_[displaced] = 0.0;
    }
    stat_[logical] = VarStatus::kBasic;
  }
  return false;
}

void SimplexSolver::EnsureFactorized() {
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (Refactorize()) return;
  }
  SlackBasis();
  if (!Refactorize()) {
    throw std::runtime_error("simplex: slack basis failed to factorize");
  }
}

void SimplexSolver::ComputeBasicValues() {
  std::vector<double> rhs_eff(rhs_);
  for (int j = 0; j < n_total_; ++j) {
    if (stat_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
    if (is_logical(j)) {
      rhs_eff[j - n_struct_] -= x_[j];
    } else {
      for (int64_t e = cs_[j]; e < cs_[j + 1]; ++e) {
        rhs_eff[cr_[e]] -= cv_[e] * x_[j];
      }
    }
  }
  lu_.Ftran(rhs_eff);  // now indexed by basis position
  for (const Eta& eta : etas_) {
    const double t = rhs_eff[eta.pos] / eta.pivot;
    if (t != 0.0) {
      for (const auto& [i, v] : eta.nz) rhs_eff[i] -= v * t;
    }
    rhs_eff[eta.pos] = t;
  }
  for (int p = 0; p < m_; ++p) x_[basic_[p]] = rhs_eff[p];
  obj_ = SolutionObjective();
}

double SimplexSolver::BasisResidual() const {
  // rows: sum_j a_ij x_j + s_i - b_i should vanish.
  std::vector<double> act(m_, 0.0);
  for (int j = 0; j < n_struct_; ++j) {
    if (x_[j] == 0.0) continue;
    for (int64_t e = cs_[j]; e < cs_[j + 1]; ++e) {
      act[cr_[e]] += cv_[e] * x_[j];
    }
  }
  double worst = 0.0;
  double xmax = 0.0;
  for (int i = 0; i < m_; ++i) {
    worst = std::max(worst, std::abs(act[i] + x_[n_struct_ + i] - rhs_[i]));
  }
  for (int j = 0; j < n_total_; ++j) xmax = std::max(xmax, std::abs(x_[j]));
  std::fprintf(stderr, "[simplex] residual=%.3e xmax=%.3e etas=%zu\n", worst,
               xmax, etas_.size());
  return worst;
}

void SimplexSolver::ParanoidCheck(const char* where) {
  // Tracked-value consistency: every nonbasic exactly at its bound value,
  // every basic within bounds + slack, row residuals small.
  double worst_bound = 0.0;
  for (int j = 0; j < n_total_; ++j) {
    if (stat_[j] == VarStatus::kBasic) {
      worst_bound = std::max(worst_bound,
                             std::max(lb_[j] - x_[j], x_[j] - ub_[j]));
    }
  }
  std::vector<double> act(m_, 0.0);
  for (int j = 0; j < n_struct_; ++j) {
    if (x_[j] == 0.0) continue;
    for (int64_t e = cs_[j]; e < cs_[j + 1]; ++e) {
      act[cr_[e]] += cv_[e] * x_[j];
    }
  }
  double worst_row = 0.0;
  for (int i = 0; i < m_; ++i) {
    worst_row = std::max(worst_row,
                         std::abs(act[i] + x_[n_struct_ + i] - rhs_[i]));
  }
  if (worst_bound > 1e-5 || worst_row > 1e-5) {
    std::fprintf(stderr,
                 "[paranoid] %s iter=%lld bound_viol=%.3e row_resid=%.3e\n",
                 where, (long long)iters_, worst_bound, worst_row);
    std::abort();
  }
}

double SimplexSolver::SolutionObjective() const {
  double s = 0.0;
  for (int j = 0; j < n_struct_; ++j) s += cost_[j] * x_[j];
  return s;
}

void SimplexSolver::FtranColumn(int j) {
  std::fill(wcol_.begin(), wcol_.end(), 0.0);
  if (is_logical(j)) {
    wcol_[j - n_struct_] = 1.0;
  } else {
    for (int64_t e = cs_[j]; e < cs_[j + 1]; ++e) wcol_[cr_[e]] = cv_[e];
  }
  lu_.Ftran(wcol_);
  for (const Eta& eta : etas_) {
    const double t = wcol_[eta.pos] / eta.pivot;
    if (t != 0.0) {
      for (const auto& [i, v] : eta.nz) wcol_[i] -= v * t;
    }
    wcol_[eta.pos] = t;
  }
  wcol_nz_.clear();
  for (int p = 0; p < m_; ++p) {
    if (wcol_[p] != 0.0) wcol_nz_.push_back(p);
  }
}

void SimplexSolver::BtranUnit(int pos) {
  std::fill(rho_.begin(), rho_.end(), 0.0);
  rho_[pos] = 1.0;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double t = rho_[it->pos];
    for (const auto& [i, v] : it->nz) t -= v * rho_[i];
    rho_[it->pos] = t / it->pivot;
  }
  lu_.Btran(rho_);  // now indexed by constraint row
}

double SimplexSolver::ColumnDot(const std::vector<double>& row_vec,
                                int j) const {
  if (is_logical(j)) return row_vec[j - n_struct_];
  double s = 0.0;
  for (int64_t e = cs_[j]; e < cs_[j + 1]; ++e) {
    s += cv_[e] * row_vec[cr_[e]];
  }
  return s;
}

void SimplexSolver::ComputePivotRow() {
  for (int32_t j : alpha_nz_) alpha_[j] = 0.0;
  alpha_nz_.clear();
  for (int i = 0; i < m_; ++i) {
    const double r = rho_[i];
    if (r == 0.0) continue;
    // logical of row i
    const int sj = n_struct_ + i;
    if (alpha_[sj] == 0.0) alpha_nz_.push_back(sj);
    alpha_[sj] += r;
    for (int64_t e = rs_[i]; e < rs_[i + 1]; ++e) {
      const int j = rc_[e];
      if (alpha_[j] == 0.0) alpha_nz_.push_back(j);
      alpha_[j] += rv_[e] * r;
    }
  }
}

void SimplexSolver::ComputePhase2Duals() {
  std::vector<double> y(m_, 0.0);
  for (int p = 0; p < m_; ++p) y[p] = cost_[basic_[p]];
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double t = y[it->pos];
    for (const auto& [i, v] : it->nz) t -= v * y[i];
    y[it->pos] = t / it->pivot;
  }
  lu_.Btran(y);
  for (int j = 0; j < n_total_; ++j) {
    if (stat_[j] == VarStatus::kBasic) {
      d_[j] = 0.0;
    } else {
      d_[j] = cost_[j] - ColumnDot(y, j);
    }
  }
  candidates_.clear();
  duals_valid_ = true;
}

double SimplexSolver::Infeasibility(double* max_violation) const {
  double sum = 0.0, worst = 0.0;
  for (int p = 0; p < m_; ++p) {
    const int j = basic_[p];
    const double v = x_[j];
    double viol = 0.0;
    if (v < lb_[j]) viol = lb_[j] - v;
    if (v > ub_[j]) viol = v - ub_[j];
    sum += viol;
    worst = std::max(worst, viol);
  }
  if (max_violation) *max_violation = worst;
  return sum;
}

bool SimplexSolver::Eligible(int j, double d, double tol) const {
  if (banned_[j]) return false;
  switch (stat_[j]) {
    case VarStatus::kAtLower: return d > tol;
    case VarStatus::kAtUpper: return d < -tol;
    case VarStatus::kFree: return std::abs(d) > tol;
    default: return false;
  }
}

int SimplexSolver::PriceFullBland(double tol) const {
  for (int j = 0; j < n_total_; ++j) {
    if (stat_[j] == VarStatus::kBasic || stat_[j] == VarStatus::kFixed) {
      continue;
    }
    if (Eligible(j, d_[j], tol)) return j;
  }
  return -1;
}

void SimplexSolver::RebuildCandidates(double tol) {
  candidates_.clear();
  struct Scored {
    double score;
    int32_t j;
  };
  std::vector<Scored> scored;
  scored.reserve(256);
  for (int j = 0; j < n_total_; ++j) {
    if (stat_[j] == VarStatus::kBasic || stat_[j] == VarStatus::kFixed) {
      continue;
    }
    const double dj = d_[j];
    if (!Eligible(j, dj, tol)) continue;
    scored.push_back({dj * dj / devex_[j], j});
  }
  const size_t keep = std::min<size_t>(kCandidates, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    [](const Scored& a, const Scored& b) {
                      return a.score > b.score ||
                             (a.score == b.score && a.j < b.j);
                    });
  for (size_t k = 0; k < keep; ++k) candidates_.push_back(scored[k].j);
}

int SimplexSolver::PriceDevex(double tol) {
  // Candidate list refreshed by a full pass every kCandidateLife picks or
  // when it runs dry; between refreshes only the cached list is scanned.
  const int kCandidateLife = opt_.full_pricing ? 0 : 24;
  if (picks_since_rebuild_ >= kCandidateLife) candidates_.clear();
  for (int attempt = 0; attempt < 2; ++attempt) {
    double best_score = 0.0;
    int best = -1;
    size_t out = 0;
    for (size_t k = 0; k < candidates_.size(); ++k) {
      const int j = candidates_[k];
      if (stat_[j] == VarStatus::kBasic || stat_[j] == VarStatus::kFixed ||
          !Eligible(j, d_[j], tol)) {
        continue;  // stale
      }
      candidates_[out++] = j;
      const double score = d_[j] * d_[j] / devex_[j];
      if (score > best_score || (score == best_score && best >= 0 && j < best)) {
        best_score = score;
        best = j;
      }
    }
    candidates_.resize(out);
    if (best >= 0) {
      ++picks_since_rebuild_;
      return best;
    }
    RebuildCandidates(tol);
    picks_since_rebuild_ = 0;
    if (candidates_.empty()) return -1;
  }
  return -1;
}

SimplexSolver::RatioResult SimplexSolver::RatioTestPhase2(int entering,
                                                          int sign) {
  RatioResult res;
  const double bound_range = ub_[entering] - lb_[entering];
  double theta_bound = bound_range;  // may be inf

  // Pass 1: relaxed bounds give the largest admissible step.
  double theta_rel = theta_bound;
  for (int32_t p : wcol_nz_) {
    const double delta = sign * wcol_[p];
    if (std::abs(delta) <= kRatioEps) continue;
    const int j = basic_[p];
    const double v = x_[j];
    if (delta > 0.0 && lb_[j] > -kInf) {
      theta_rel = std::min(theta_rel, (v - lb_[j] + opt_.feas_tol) / delta);
    } else if (delta < 0.0 && ub_[j] < kInf) {
      theta_rel = std::min(theta_rel, (v - ub_[j] - opt_.feas_tol) / delta);
    }
  }
  if (theta_rel == kInf) {
    res.unbounded = true;
    return res;
  }

  // Pass 2: best pivot among blockers within the relaxed step.
  double best_pivot = 0.0;
  int best_pos = -1;
  bool best_to_upper = false;
  double best_theta = kInf;
  for (int32_t p : wcol_nz_) {
    const double delta = sign * wcol_[p];
    if (std::abs(delta) <= kRatioEps) continue;
    const int j = basic_[p];
    const double v = x_[j];
    double theta_j;
    bool to_upper;
    if (delta > 0.0 && lb_[j] > -kInf) {
      theta_j = (v - lb_[j]) / delta;
      to_upper = false;
    } else if (delta < 0.0 && ub_[j] < kInf) {
      theta_j = (v - ub_[j]) / delta;
      to_upper = true;
    } else {
      continue;
    }
    if (theta_j <= theta_rel) {
      const double piv = std::abs(wcol_[p]);
      const bool better =
          bland_ ? (best_pos < 0 || theta_j < best_theta ||
                    (theta_j == best_theta && j < basic_[best_pos]))
                 : (piv > best_pivot);
      if (better) {
        best_pivot = piv;
        best_pos = p;
        best_to_upper = to_upper;
        best_theta = theta_j;
      }
    }
  }

  if (best_pos < 0 || theta_bound <= std::max(best_theta, 0.0)) {
    if (theta_bound == kInf) {
      res.unbounded = true;
      return res;
    }
    res.bound_flip = true;
    res.theta = theta_bound;
    return res;
  }
  res.leave_pos = best_pos;
  res.leave_to_upper = best_to_upper;
  res.theta = std::max(best_theta, 0.0);
  res.pivot = wcol_[best_pos];
  return res;
}

SimplexSolver::RatioResult SimplexSolver::RatioTestPhase1(int entering,
                                                          int sign) {
  RatioResult res;
  double theta = ub_[entering] - lb_[entering];
  int best_pos = -1;
  bool best_to_upper = false;
  for (int32_t p : wcol_nz_) {
    const double delta = sign * wcol_[p];
    if (std::abs(delta) <= kRatioEps) continue;
    const int j = basic_[p];
    const double v = x_[j];
    // An infeasible basic blocks when it reaches the bound it violates; a
    // feasible one blocks at the bound it approaches.
    double theta_j = kInf;
    bool to_upper = false;
    if (v > ub_[j] + opt_.feas_tol) {
      if (delta > 0.0) {
        theta_j = (v - ub_[j]) / delta;
        to_upper = true;
      }
    } else if (v < lb_[j] - opt_.feas_tol) {
      if (delta < 0.0) {
        theta_j = (v - lb_[j]) / delta;
        to_upper = false;
      }
    } else if (delta > 0.0 && lb_[j] > -kInf) {
      theta_j = (v - lb_[j]) / delta;
      to_upper = false;
    } else if (delta < 0.0 && ub_[j] < kInf) {
      theta_j = (v - ub_[j]) / delta;
      to_upper = true;
    }
    theta_j = std::max(theta_j, 0.0);
    if (theta_j < theta ||
        (best_pos >= 0 && theta_j == theta &&
         std::abs(wcol_[p]) > std::abs(wcol_[best_pos]))) {
      theta = theta_j;
      best_pos = p;
      best_to_upper = to_upper;
    }
  }
  if (theta == kInf) {
    res.unbounded = true;  // cannot happen for a consistent phase-1 direction
    return res;
  }
  if (best_pos < 0) {
    res.bound_flip = true;
    res.theta = theta;
    return res;
  }
  res.leave_pos = best_pos;
  res.leave_to_upper = best_to_upper;
  res.theta = theta;
  res.pivot = wcol_[best_pos];
  return res;
}

void SimplexSolver::ApplyBoundFlip(int entering, int sign, double theta) {
  for (int32_t p : wcol_nz_) {
    x_[basic_[p]] -= sign * theta * wcol_[p];
  }
  x_[entering] += sign * theta;
  stat_[entering] =
      stat_[entering] == VarStatus::kAtLower ? VarStatus::kAtUpper
                                             : VarStatus::kAtLower;
}

SimplexSolver::PivotOutcome SimplexSolver::ApplyPivot(
    int entering, int sign, double theta, int leave_pos, bool leave_to_upper,
    bool maintain_duals, double d_entering) {
  const double pivot = wcol_[leave_pos];
  double spike_max = 0.0;
  for (int32_t p : wcol_nz_) {
    spike_max = std::max(spike_max, std::abs(wcol_[p]));
  }
  // Pivots at the noise floor of the spike would wreck the basis.
  if (std::abs(pivot) < opt_.pivot_tol ||
      std::abs(pivot) < 1e-7 * spike_max) {
    return PivotOutcome::kRejectTiny;
  }

  const int leaving = basic_[leave_pos];

  double gamma = 0.0;
  if (maintain_duals) {
    // Pivot row for the reduced-cost and Devex updates.
    BtranUnit(leave_pos);
    ComputePivotRow();
    const double alpha_q = alpha_[entering];
    if (std::abs(alpha_q - pivot) >
        1e-6 * std::max({1.0, std::abs(pivot), spike_max})) {
      return PivotOutcome::kRejectDrift;  // stale factors; refactorize
    }
    gamma = d_entering / pivot;
  }

  // Primal update. The leaving variable keeps the value it actually
  // reached: snapping it to its bound would inject the clamp error into
  // every basic through the next recompute.
  for (int32_t p : wcol_nz_) {
    x_[basic_[p]] -= sign * theta * wcol_[p];
  }
  x_[entering] += sign * theta;

  // Status swap.
  stat_[leaving] = lb_[leaving] == ub_[leaving]
                       ? VarStatus::kFixed
                       : (leave_to_upper ? VarStatus::kAtUpper
                                         : VarStatus::kAtLower);
  stat_[entering] = VarStatus::kBasic;
  pos_of_[entering] = leave_pos;
  pos_of_[leaving] = -1;
  basic_[leave_pos] = entering;

  if (maintain_duals) {
    const double devex_q = devex_[entering];
    const double pivot2 = pivot * pivot;
    for (int32_t j : alpha_nz_) {
      if (stat_[j] == VarStatus::kBasic || stat_[j] == VarStatus::kFixed) {
        continue;
      }
      d_[j] -= gamma * alpha_[j];
      const double ratio2 = alpha_[j] * alpha_[j] / pivot2;
      devex_[j] = std::max(devex_[j], ratio2 * devex_q);
    }
    d_[entering] = 0.0;
    d_[leaving] = -gamma;
    devex_[leaving] = std::max(devex_q / pivot2, 1.0);
    if (devex_[leaving] > 1e7) {
      std::fill(devex_.begin(), devex_.end(), 1.0);
    }
  }

  // Product-form update.
  Eta eta;
  eta.pos = leave_pos;
  eta.pivot = pivot;
  eta.nz.reserve(wcol_nz_.size());
  for (int32_t p : wcol_nz_) {
    if (p != leave_pos) eta.nz.push_back({p, wcol_[p]});
  }
  eta_nnz_ += static_cast<int64_t>(eta.nz.size());
  etas_.push_back(std::move(eta));
  ++updates_since_refactor_;
  if (std::abs(pivot) < 1e-3 * spike_max) {
    // Weak pivot accepted; refresh the factorization at the next check.
    updates_since_refactor_ = opt_.refactor_interval;
  }
  ban_rechecks_ = 0;
  return PivotOutcome::kOk;
}

void SimplexSolver::Progress(double delta) {
  if (delta > 1e-13 * (1.0 + std::abs(obj_))) {
    since_progress_ = 0;
    if (bland_) bland_ = false;
  } else if (++since_progress_ > stall_limit_) {
    bland_ = true;
  }
}

SimplexSolver::StepOutcome SimplexSolver::Phase1Step() {
  // Gradient of the infeasibility sum over basis positions.
  std::vector<double> g(m_, 0.0);
  bool any = false;
  for (int p = 0; p < m_; ++p) {
    const int j = basic_[p];
    if (x_[j] > ub_[j] + opt_.feas_tol) {
      g[p] = 1.0;
      any = true;
    } else if (x_[j] < lb_[j] - opt_.feas_tol) {
      g[p] = -1.0;
      any = true;
    }
  }
  if (!any) return StepOutcome::kOptimal;  // feasible

  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double t = g[it->pos];
    for (const auto& [i, v] : it->nz) t -= v * g[i];
    g[it->pos] = t / it->pivot;
  }
  lu_.Btran(g);

  // dd_j = g' B^{-1} a_j; entering must have sign * dd > 0 to reduce the
  // infeasibility when moving in direction `sign`.
  int entering = -1, sign = 0;
  double best = opt_.opt_tol;
  for (int j = 0; j < n_total_; ++j) {
    const VarStatus s = stat_[j];
    if (s == VarStatus::kBasic || s == VarStatus::kFixed || banned_[j]) {
      continue;
    }
    const double dd = ColumnDot(g, j);
    int sg = 0;
    if (s == VarStatus::kAtLower && dd > best) {
      sg = 1;
    } else if (s == VarStatus::kAtUpper && dd < -best) {
      sg = -1;
    } else if (s == VarStatus::kFree && std::abs(dd) > best) {
      sg = dd > 0.0 ? 1 : -1;
    }
    if (sg != 0) {
      entering = j;
      sign = sg;
      best = std::abs(dd);
      if (bland_) break;
    }
  }
  if (entering < 0) {
    bool any_banned = false;
    for (char b : banned_) {
      if (b) {
        any_banned = true;
        break;
      }
    }
    if ((any_banned || updates_since_refactor_ > 0) && ban_rechecks_ < 8) {
      ++ban_rechecks_;
      std::fill(banned_.begin(), banned_.end(), 0);
      EnsureFactorized();
      ComputeBasicValues();
      return StepOutcome::kRetry;
    }
    return StepOutcome::kStuck;  // infeasible and no descent
  }

  FtranColumn(entering);
  const RatioResult rr = RatioTestPhase1(entering, sign);
  if (rr.unbounded || rr.theta > 1e7) {
    if (updates_since_refactor_ > 0) {
      EnsureFactorized();
      ComputeBasicValues();
      return StepOutcome::kRetry;
    }
    if (rr.unbounded) return StepOutcome::kStuck;
  }

  const double inf_before = Infeasibility(nullptr);
  if (rr.bound_flip) {
    ApplyBoundFlip(entering, sign, rr.theta);
  } else {
    const PivotOutcome po =
        ApplyPivot(entering, sign, rr.theta, rr.leave_pos, rr.leave_to_upper,
                   /*maintain_duals=*/false, 0.0);
    if (po != PivotOutcome::kOk) {
      if (updates_since_refactor_ > 0) {
        EnsureFactorized();
        ComputeBasicValues();
        return StepOutcome::kRetry;
      }
      banned_[entering] = 1;
      return StepOutcome::kRetry;
    }
  }
  ++iters_;
  ++phase1_iters_;
  const double inf_after = Infeasibility(nullptr);
  if (opt_.log && inf_after > inf_before * (1.0 + 1e-9) + 1e-13) {
    std::fprintf(stderr,
                 "[dbg] P1 WORSE iter=%lld enter=%d sign=%d theta=%.3e "
                 "inf %.6e -> %.6e flip=%d\n",
                 (long long)iters_, entering, sign, rr.theta, inf_before,
                 inf_after, (int)rr.bound_flip);
    if (inf_after > 1.0) std::abort();
  }
  Progress(inf_before - inf_after);

  if (updates_since_refactor_ >= opt_.refactor_interval ||
      eta_nnz_ > std::max<int64_t>(1 << 20, 4 * lu_.entries())) {
    EnsureFactorized();
    ComputeBasicValues();
  }
  return StepOutcome::kMoved;
}

SimplexSolver::StepOutcome SimplexSolver::Phase2Step() {
  if (!duals_valid_) ComputePhase2Duals();

  int entering = -1;
  if (bland_) {
    entering = PriceFullBland(opt_.opt_tol);
  } else {
    entering = PriceDevex(opt_.opt_tol);
    if (entering < 0) {
      // Candidate list exhausted; only a clean full pass proves optimality.
      entering = PriceFullBland(opt_.opt_tol);
    }
  }
  if (entering < 0) {
    // Banned columns may hide an eligible candidate; re-check once with a
    // fresh factorization before declaring optimality.
    bool any_banned = false;
    for (char b : banned_) {
      if (b) {
        any_banned = true;
        break;
      }
    }
    if (any_banned && ban_rechecks_ < 8) {
      ++ban_rechecks_;
      std::fill(banned_.begin(), banned_.end(), 0);
      EnsureFactorized();
      ComputeBasicValues();
      ComputePhase2Duals();
      return StepOutcome::kRetry;
    }
    if (opt_.log) {
      // Audit: recompute duals from scratch and report hidden eligibility.
      std::vector<double> dref(d_);
      ComputePhase2Duals();
      double max_diff = 0.0;
      int eligible = 0, banned_eligible = 0;
      for (int j = 0; j < n_total_; ++j) {
        max_diff = std::max(max_diff, std::abs(dref[j] - d_[j]));
        if (stat_[j] == VarStatus::kBasic || stat_[j] == VarStatus::kFixed) {
          continue;
        }
        const bool el =
            (stat_[j] == VarStatus::kAtLower && d_[j] > opt_.opt_tol) ||
            (stat_[j] == VarStatus::kAtUpper && d_[j] < -opt_.opt_tol) ||
            (stat_[j] == VarStatus::kFree && std::abs(d_[j]) > opt_.opt_tol);
        if (el) {
          ++eligible;
          if (banned_[j]) ++banned_eligible;
        }
      }
      std::fprintf(stderr,
                   "[audit] optimal-claim: d-drift=%.3e eligible=%d "
                   "(banned=%d) rechecks=%d\n",
                   max_diff, eligible, banned_eligible, ban_rechecks_);
    }
    return StepOutcome::kOptimal;
  }

  const double dq = d_[entering];
  const int sign = stat_[entering] == VarStatus::kAtUpper
                       ? -1
                       : (stat_[entering] == VarStatus::kFree && dq < 0.0 ? -1
                                                                          : 1);

  FtranColumn(entering);
  const RatioResult rr = RatioTestPhase2(entering, sign);
  if (rr.unbounded || (rr.theta > 1e7 && !rr.bound_flip)) {
    // Trust rays and giant steps only on fresh factors.
    if (updates_since_refactor_ > 0) {
      EnsureFactorized();
      ComputeBasicValues();
      ComputePhase2Duals();
      return StepOutcome::kRetry;
    }
    if (rr.unbounded) return StepOutcome::kUnbounded;
  }

  {
    double xm = 0.0;
    int xj = -1;
    for (int j = 0; j < n_total_; ++j) {
      if (std::abs(x_[j]) > xm) { xm = std::abs(x_[j]); xj = j; }
    }
    if (opt_.log && xm > 5.0) {
      std::fprintf(stderr,
                   "[dbg] XMAX iter=%lld xmax=%.3e at var=%d (logical=%d) "
                   "stat=%d basicpos=%d\n",
                   (long long)iters_, xm, xj, xj >= n_struct_ ? xj - n_struct_ : -1,
                   (int)stat_[xj], pos_of_[xj]);
      std::abort();
    }
  }
  if (rr.bound_flip) {
    if (opt_.log && rr.theta > 3.0) {
      std::fprintf(stderr,
                   "[dbg] FLIP iter=%lld var=%d theta=%.3e dq=%.3e\n",
                   (long long)iters_, entering, rr.theta, dq);
    }
    ApplyBoundFlip(entering, sign, rr.theta);
    ++iters_;
    ++flips_;
    const double delta = sign * rr.theta * dq;
    obj_ += delta;
    Progress(delta);
    return StepOutcome::kMoved;
  }

  const PivotOutcome po =
      ApplyPivot(entering, sign, rr.theta, rr.leave_pos, rr.leave_to_upper,
                 /*maintain_duals=*/true, dq);
  if (po != PivotOutcome::kOk) {
    if (updates_since_refactor_ > 0) {
      EnsureFactorized();
      ComputeBasicValues();
      ComputePhase2Duals();
      return StepOutcome::kRetry;
    }
    banned_[entering] = 1;
    return StepOutcome::kRetry;
  }
  ++iters_;
  if (opt_.log && rr.theta > 3.0) {
    std::fprintf(stderr,
                 "[dbg] PIVOT iter=%lld enter=%d leave=%d theta=%.3e piv=%.3e "
                 "dq=%.3e\n",
                 (long long)iters_, entering, basic_[rr.leave_pos], rr.theta,
                 rr.pivot, dq);
  }
  if (rr.theta < 1e-12) ++degen_;
  const double delta = sign * rr.theta * dq;
  obj_ += delta;
  Progress(delta);

  if (updates_since_refactor_ >= opt_.refactor_interval ||
      eta_nnz_ > std::max<int64_t>(1 << 20, 4 * lu_.entries())) {
    EnsureFactorized();
    ComputeBasicValues();
    ComputePhase2Duals();
    std::fill(banned_.begin(), banned_.end(), 0);
  }
  return StepOutcome::kMoved;
}

SolveResult SimplexSolver::Run(const Basis* warm) {
  SolveResult result;
  BuildProblem();
  InstallBasis(warm);
  EnsureFactorized();
  ComputeBasicValues();

  SolveStatus status = SolveStatus::kIterationLimit;
  for (int round = 0; round < 6; ++round) {
    // Phase 1: drive out infeasibility.
    bool infeasible = false;
    while (iters_ < max_iters_) {
      double worst = 0.0;
      const double inf_sum = Infeasibility(&worst);
      if (worst <= opt_.feas_tol) break;
      if (opt_.log && iters_ % 1000 == 0) {
        std::fprintf(stderr, "[simplex] phase1 iter=%lld inf=%.3e%s\n",
                     static_cast<long long>(iters_), inf_sum,
                     bland_ ? " bland" : "");
        BasisResidual();
      }
      const StepOutcome out = Phase1Step();
      if (opt_.log) ParanoidCheck("phase1");
      if (out == StepOutcome::kOptimal) break;
      if (out == StepOutcome::kStuck) {
        infeasible = true;
        break;
      }
    }
    if (infeasible) {
      double worst = 0.0;
      Infeasibility(&worst);
      if (worst > opt_.feas_tol) {
        status = SolveStatus::kInfeasible;
        message_ = "phase 1 stalled with residual infeasibility";
        break;
      }
    }
    if (iters_ >= max_iters_) break;
    std::fill(banned_.begin(), banned_.end(), 0);

    // Phase 2.
    bool done = false;
    while (iters_ < max_iters_) {
      if (opt_.log && iters_ % 1000 == 0) {
        std::fprintf(stderr, "[simplex] phase2 iter=%lld obj=%.9e stall=%lld%s\n",
                     static_cast<long long>(iters_), obj_,
                     static_cast<long long>(since_progress_),
                     bland_ ? " bland" : "");
        BasisResidual();
      }
      const StepOutcome out = Phase2Step();
      if (opt_.log) ParanoidCheck("phase2");
      if (out == StepOutcome::kOptimal) {
        done = true;
        status = SolveStatus::kOptimal;
        break;
      }
      if (out == StepOutcome::kUnbounded) {
        done = true;
        status = SolveStatus::kUnbounded;
        break;
      }
    }
    if (!done) break;  // iteration limit

    if (status == SolveStatus::kOptimal) {
      if (perturbed_) {
        // Optimal for the perturbed bounds; restore the true ones and
        // re-optimize from this basis (usually a handful of pivots).
        lb_ = lb_true_;
        ub_ = ub_true_;
        perturbed_ = false;
        for (int j = 0; j < n_total_; ++j) {
          if (stat_[j] == VarStatus::kBasic) continue;
          switch (stat_[j]) {
            case VarStatus::kAtLower:
            case VarStatus::kFixed:
              x_[j] = lb_[j];
              break;
            case VarStatus::kAtUpper:
              x_[j] = ub_[j];
              break;
            default:
              x_[j] = 0.0;
              break;
          }
        }
        EnsureFactorized();
        ComputeBasicValues();
        status = SolveStatus::kIterationLimit;
        continue;
      }
      // Clean refactorization; if roundoff pushed a basic out of bounds,
      // resume (bounded number of rounds).
      EnsureFactorized();
      ComputeBasicValues();
      double worst = 0.0;
      Infeasibility(&worst);
      if (worst <= opt_.feas_tol * 10.0) break;
      status = SolveStatus::kIterationLimit;
      continue;
    }
    break;  // unbounded
  }

  result.status = status;
  result.iterations = iters_;
  result.phase1_iterations = phase1_iters_;
  result.message = message_ + " flips=" + std::to_string(flips_) +
                   " degen=" + std::to_string(degen_);
  result.objective = SolutionObjective();
  result.best_bound = result.objective;
  result.x.assign(x_.begin(), x_.begin() + n_struct_);

  // Duals in original row units: y_orig = r_i * y_scaled.
  std::vector<double> y(m_, 0.0);
  for (int p = 0; p < m_; ++p) y[p] = cost_[basic_[p]];
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double t = y[it->pos];
    for (const auto& [i, v] : it->nz) t -= v * y[i];
    y[it->pos] = t / it->pivot;
  }
  lu_.Btran(y);
  result.row_dual.resize(m_);
  for (int i = 0; i < m_; ++i) result.row_dual[i] = y[i] * row_scale_[i];
  result.reduced_cost.resize(n_struct_);
  for (int j = 0; j < n_struct_; ++j) {
    result.reduced_cost[j] =
        stat_[j] == VarStatus::kBasic ? 0.0 : cost_[j] - ColumnDot(y, j);
  }
  result.row_activity.resize(m_);
  for (int i = 0; i < m_; ++i) {
    // activity = b - slack
    result.row_activity[i] = (rhs_[i] - x_[n_struct_ + i]) / row_scale_[i];
  }
  result.basis.status = stat_;
  return result;
}

}  // namespace

SolveResult Solve(const SparseLP& lp, const SolveOptions& options,
                  const Basis* warm_start) {
  if (!lp.finalized()) {
    throw std::logic_error("Solve: SparseLP must be finalized");
  }
  SimplexSolver solver(lp, options);
  return solver.Run(warm_start);
}

}  // namespace auctionlp
