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

#include "auctionlp/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace auctionlp {

int SparseLP::AddVariable(double lower, double upper, double objective,
                          VarInfo info) {
  if (finalized_) throw std::logic_error("SparseLP: already finalized");
  if (lower > upper) throw std::invalid_argument("SparseLP: lower > upper");
  if (!std::isfinite(objective)) {
    throw std::invalid_argument("SparseLP: objective must be finite");
  }
  obj_.push_back(objective);
  lower_.push_back(lower);
  upper_.push_back(upper);
  var_info_.push_back(info);
  return num_vars() - 1;
}

int SparseLP::AddRow(RowSense sense, double rhs,
                     const std::vector<std::pair<int, double>>& entries,
                     RowInfo info) {
  if (finalized_) throw std::logic_error("SparseLP: already finalized");
  if (!std::isfinite(rhs)) throw std::invalid_argument("SparseLP: rhs not finite");
  std::unordered_set<int> seen;
  for (const auto& [col, value] : entries) {
    if (col < 0 || col >= num_vars()) {
      throw std::invalid_argument("SparseLP: entry references unknown variable");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("SparseLP: coefficient must be finite");
    }
    if (!seen.insert(col).second) {
      throw std::invalid_argument("SparseLP: duplicate (row, var) entry");
    }
    if (value == 0.0) continue;
    a_col_.push_back(col);
    a_value_.push_back(value);
  }
  row_start_.push_back(static_cast<int64_t>(a_col_.size()));
  sense_.push_back(sense);
  rhs_.push_back(rhs);
  row_info_.push_back(info);
  return num_rows() - 1;
}

void SparseLP::Finalize() {
  if (finalized_) return;
  const int n = num_vars();
  const int m = num_rows();
  std::vector<int64_t> count(n + 1, 0);
  for (int32_t c : a_col_) ++count[c + 1];
  col_start_.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) col_start_[j + 1] = col_start_[j] + count[j + 1];
  col_row_.resize(a_col_.size());
  col_value_.resize(a_col_.size());
  std::vector<int64_t> cursor(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < m; ++i) {
    for (int64_t e = row_start_[i]; e < row_start_[i + 1]; ++e) {
      const int64_t pos = cursor[a_col_[e]]++;
      col_row_[pos] = i;
      col_value_[pos] = a_value_[e];
    }
  }
  // Every variable must appear in a row or carry an objective coefficient.
  for (int j = 0; j < n; ++j) {
    if (col_start_[j] == col_start_[j + 1] && obj_[j] == 0.0 &&
        !(lower_[j] == upper_[j])) {
      throw std::invalid_argument("SparseLP: unreferenced variable " +
                                  VarName(j));
    }
  }
  finalized_ = true;
}

double SparseLP::RowActivity(int i, const std::vector<double>& x) const {
  double s = 0.0;
  for (int64_t e = row_start_[i]; e < row_start_[i + 1]; ++e) {
    s += a_value_[e] * x[a_col_[e]];
  }
  return s;
}

namespace {

char FamilyChar(VarFamily f) {
  switch (f) {
    case VarFamily::kU: return 'U';
    case VarFamily::kP: return 'P';
    case VarFamily::kPi: return 'Q';
    case VarFamily::kOther: return 'X';
  }
  return 'X';
}

char FamilyChar(RowFamily f) {
  switch (f) {
    case RowFamily::kIc: return 'I';
    case RowFamily::kMjT: return 'T';
    case RowFamily::kMjJ: return 'J';
    case RowFamily::kMjE: return 'E';
    case RowFamily::kOther: return 'R';
  }
  return 'R';
}

std::string EncodeName(char kind, char family, int ordinal) {
  // Eight characters: kind, family, six base-36 digits.
  static const char* kDigits = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string name(8, '0');
  name[0] = kind;
  name[1] = family;
  for (int pos = 7; pos >= 2; --pos) {
    name[pos] = kDigits[ordinal % 36];
    ordinal /= 36;
  }
  return name;
}

}  // namespace

std::string SparseLP::VarName(int j) const {
  return EncodeName('C', FamilyChar(var_info_[j].family), j);
}

std::string SparseLP::RowName(int i) const {
  return EncodeName('R', FamilyChar(row_info_[i].family), i);
}

}  // namespace auctionlp
