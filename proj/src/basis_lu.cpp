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

#include "auctionlp/basis_lu.hpp"

#include <algorithm>
#include <cmath>

namespace auctionlp {

namespace {

struct WorkEntry {
  int32_t row;
  double value;
};

// Doubly-linked lists of columns keyed by active entry count.
class CountLists {
 public:
  explicit CountLists(int m)
      : head_(m + 1, -1), next_(m, -1), prev_(m, -1), where_(m, -1) {}

  void Link(int c, int count) {
    where_[c] = count;
    next_[c] = head_[count];
    prev_[c] = -1;
    if (head_[count] >= 0) prev_[head_[count]] = c;
    head_[count] = c;
  }

  void Unlink(int c) {
    const int count = where_[c];
    if (count < 0) return;
    if (prev_[c] >= 0) {
      next_[prev_[c]] = next_[c];
    } else {
      head_[count] = next_[c];
    }
    if (next_[c] >= 0) prev_[next_[c]] = prev_[c];
    where_[c] = -1;
  }

  void Move(int c, int count) {
    Unlink(c);
    Link(c, count);
  }

  int head(int count) const { return head_[count]; }
  int next(int c) const { return next_[c]; }

 private:
  std::vector<int32_t> head_, next_, prev_, where_;
};

}  // namespace

std::vector<int> BasisLu::Factorize(const std::vector<std::vector<Entry>>& cols,
                                    double rel_pivot_tol,
                                    double abs_pivot_tol,
                                    std::vector<int>* unpivoted_rows) {
  m_ = static_cast<int>(cols.size());
  perm_row_.assign(m_, -1);
  perm_col_.assign(m_, -1);
  diag_.assign(m_, 0.0);
  work_.assign(std::max(1, 2 * m_), 0.0);

  std::vector<std::vector<WorkEntry>> col_entries(m_);
  std::vector<std::vector<int32_t>> row_cols(m_);
  std::vector<int32_t> col_count(m_, 0), row_count(m_, 0);
  std::vector<char> col_done(m_, 0), row_done(m_, 0);

  for (int c = 0; c < m_; ++c) {
    col_entries[c].reserve(cols[c].size());
    for (const Entry& e : cols[c]) {
      if (e.value == 0.0) continue;
      col_entries[c].push_back({e.index, e.value});
      row_cols[e.index].push_back(c);
      ++row_count[e.index];
    }
    col_count[c] = static_cast<int32_t>(col_entries[c].size());
  }

  CountLists lists(m_);
  for (int c = 0; c < m_; ++c) lists.Link(c, col_count[c]);

  std::vector<double> row_value(m_, 0.0);
  std::vector<char> in_pivot_row(m_, 0);
  std::vector<int32_t> pivot_row_cols;
  std::vector<WorkEntry> l_col;

  std::vector<int64_t> l_start_raw(1, 0);
  std::vector<Entry> l_raw;  // index = original row
  std::vector<int64_t> u_start_raw(1, 0);
  std::vector<Entry> u_raw;  // index = basis column position

  auto find_entry = [&](int c, int r) -> int {
    auto& v = col_entries[c];
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k].row == r) return static_cast<int>(k);
    }
    return -1;
  };

  constexpr int kMaxCandidates = 16;

  int steps = 0;
  for (; steps < m_; ++steps) {
    int best_col = -1, best_row = -1;
    double best_value = 0.0;
    int64_t best_score = -1;
    int examined = 0;
    int classes_with_candidates = 0;
    for (int count = 1; count <= m_; ++count) {
      bool class_had_candidate = false;
      for (int c = lists.head(count); c >= 0; c = lists.next(c)) {
        double cmax = 0.0;
        for (const WorkEntry& e : col_entries[c]) {
          cmax = std::max(cmax, std::abs(e.value));
        }
        if (cmax < abs_pivot_tol) continue;
        bool any = false;
        for (const WorkEntry& e : col_entries[c]) {
          const double a = std::abs(e.value);
          if (a < rel_pivot_tol * cmax || a < abs_pivot_tol) continue;
          any = true;
          const int64_t score = static_cast<int64_t>(row_count[e.row] - 1) *
                                (col_count[c] - 1);
          if (best_score < 0 || score < best_score ||
              (score == best_score && a > std::abs(best_value))) {
            best_score = score;
            best_col = c;
            best_row = e.row;
            best_value = e.value;
          }
        }
        if (any) {
          ++examined;
          class_had_candidate = true;
        }
        if (best_score == 0 || examined >= kMaxCandidates) break;
      }
      if (class_had_candidate) ++classes_with_candidates;
      if (best_score == 0 || examined >= kMaxCandidates) break;
      // A candidate from a low count class is good enough; scanning further
      // classes only trades pivot quality for search time.
      if (best_score >= 0 && classes_with_candidates >= 2) break;
    }
    if (best_col < 0) break;

    const int pc = best_col, pr = best_row;
    const double pivot = best_value;

    // Materialize the pivot row, validating the lazy row structure, and drop
    // its entries from their columns.
    pivot_row_cols.clear();
    for (int32_t c : row_cols[pr]) {
      if (col_done[c] || in_pivot_row[c]) continue;
      const int pos = find_entry(c, pr);
      if (pos < 0) continue;
      in_pivot_row[c] = 1;
      row_value[c] = col_entries[c][pos].value;
      pivot_row_cols.push_back(c);
      col_entries[c][pos] = col_entries[c].back();
      col_entries[c].pop_back();
      --col_count[c];
    }
    row_cols[pr].clear();

    l_col.clear();
    for (const WorkEntry& e : col_entries[pc]) {
      if (e.row == pr) continue;
      l_col.push_back({e.row, e.value / pivot});
      --row_count[e.row];
    }
    col_entries[pc].clear();
    col_done[pc] = 1;
    row_done[pr] = 1;
    lists.Unlink(pc);

    for (const WorkEntry& le : l_col) {
      const int i = le.row;
      for (int32_t c : pivot_row_cols) {
        if (c == pc) continue;
        const double delta = le.value * row_value[c];
        const int pos = find_entry(c, i);
        if (pos >= 0) {
          col_entries[c][pos].value -= delta;
        } else {
          col_entries[c].push_back({i, -delta});
          ++col_count[c];
          ++row_count[i];
          row_cols[i].push_back(c);
        }
      }
    }

    perm_row_[steps] = pr;
    perm_col_[steps] = pc;
    diag_[steps] = pivot;
    for (const WorkEntry& le : l_col) l_raw.push_back({le.row, le.value});
    l_start_raw.push_back(static_cast<int64_t>(l_raw.size()));
    for (int32_t c : pivot_row_cols) {
      if (c != pc) {
        u_raw.push_back({c, row_value[c]});
        lists.Move(c, col_count[c]);
      }
      in_pivot_row[c] = 0;
      row_value[c] = 0.0;
    }
    u_start_raw.push_back(static_cast<int64_t>(u_raw.size()));
  }

  if (steps < m_) {
    std::vector<int> failed;
    for (int c = 0; c < m_; ++c) {
      if (!col_done[c]) failed.push_back(c);
    }
    if (unpivoted_rows) {
      unpivoted_rows->clear();
      for (int r = 0; r < m_; ++r) {
        if (!row_done[r]) unpivoted_rows->push_back(r);
      }
    }
    return failed;
  }

  // Remap to step coordinates so the triangular solves are direct.
  std::vector<int32_t> rstep(m_), cstep(m_);
  for (int k = 0; k < m_; ++k) {
    rstep[perm_row_[k]] = k;
    cstep[perm_col_[k]] = k;
  }
  l_start_ = std::move(l_start_raw);
  l_entries_.resize(l_raw.size());
  for (size_t e = 0; e < l_raw.size(); ++e) {
    l_entries_[e] = {rstep[l_raw[e].index], l_raw[e].value};
  }
  u_start_ = std::move(u_start_raw);
  u_entries_.resize(u_raw.size());
  for (size_t e = 0; e < u_raw.size(); ++e) {
    u_entries_[e] = {cstep[u_raw[e].index], u_raw[e].value};
  }
  return {};
}

void BasisLu::Ftran(std::vector<double>& v) const {
  double* wk = work_.data();
  double* xs = work_.data() + m_;
  for (int k = 0; k < m_; ++k) wk[k] = v[perm_row_[k]];
  for (int k = 0; k < m_; ++k) {
    const double t = wk[k];
    if (t == 0.0) continue;
    for (int64_t e = l_start_[k]; e < l_start_[k + 1]; ++e) {
      wk[l_entries_[e].index] -= l_entries_[e].value * t;
    }
  }
  for (int k = m_ - 1; k >= 0; --k) {
    double t = wk[k];
    for (int64_t e = u_start_[k]; e < u_start_[k + 1]; ++e) {
      t -= u_entries_[e].value * xs[u_entries_[e].index];
    }
    xs[k] = t / diag_[k];
  }
  for (int k = 0; k < m_; ++k) v[perm_col_[k]] = xs[k];
}

void BasisLu::Btran(std::vector<double>& v) const {
  double* wk = work_.data();
  double* acc = work_.data() + m_;
  for (int k = 0; k < m_; ++k) {
    wk[k] = v[perm_col_[k]];
    acc[k] = 0.0;
  }
  for (int k = 0; k < m_; ++k) {
    const double y = (wk[k] - acc[k]) / diag_[k];
    wk[k] = y;
    if (y == 0.0) continue;
    for (int64_t e = u_start_[k]; e < u_start_[k + 1]; ++e) {
      acc[u_entries_[e].index] += u_entries_[e].value * y;
    }
  }
  for (int k = m_ - 1; k >= 0; --k) {
    double t = wk[k];
    for (int64_t e = l_start_[k]; e < l_start_[k + 1]; ++e) {
      t -= l_entries_[e].value * wk[l_entries_[e].index];
    }
    wk[k] = t;
  }
  for (int k = 0; k < m_; ++k) v[perm_row_[k]] = wk[k];
}

}  // namespace auctionlp
