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

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace auctionlp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarFamily : uint8_t { kU, kP, kPi, kOther };
enum class RowFamily : uint8_t { kIc, kMjT, kMjJ, kMjE, kOther };

enum class RowSense : char { kLe = 'L', kGe = 'G', kEq = 'E' };

struct VarInfo {
  VarFamily family = VarFamily::kOther;
  // (j), (j,k) or (j,m,k) depending on the family; unused slots are -1.
  std::array<int32_t, 3> index = {-1, -1, -1};
};

struct RowInfo {
  RowFamily family = RowFamily::kOther;
  std::array<int32_t, 3> index = {-1, -1, -1};
};

// A sparse LP, objective sense maximize. Rows are stored in CSR order of
// insertion; Finalize() builds the column-wise view used by the solver.
class SparseLP {
 public:
  int AddVariable(double lower, double upper, double objective,
                  VarInfo info = {});
  // entries are (variable, coefficient) pairs; duplicates are an error.
  int AddRow(RowSense sense, double rhs,
             const std::vector<std::pair<int, double>>& entries,
             RowInfo info = {});

  void Finalize();  // builds CSC; verifies structural invariants
  bool finalized() const { return finalized_; }

  int num_vars() const { return static_cast<int>(obj_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int64_t num_entries() const { return static_cast<int64_t>(a_value_.size()); }

  double objective(int j) const { return obj_[j]; }
  double lower(int j) const { return lower_[j]; }
  double upper(int j) const { return upper_[j]; }
  RowSense sense(int i) const { return sense_[i]; }
  double rhs(int i) const { return rhs_[i]; }
  const VarInfo& var_info(int j) const { return var_info_[j]; }
  const RowInfo& row_info(int i) const { return row_info_[i]; }

  // Row-wise storage (always valid).
  const std::vector<int64_t>& row_start() const { return row_start_; }
  const std::vector<int32_t>& row_col() const { return a_col_; }
  const std::vector<double>& row_value() const { return a_value_; }

  // Column-wise storage (valid after Finalize()).
  const std::vector<int64_t>& col_start() const { return col_start_; }
  const std::vector<int32_t>& col_row() const { return col_row_; }
  const std::vector<double>& col_value() const { return col_value_; }

  double RowActivity(int i, const std::vector<double>& x) const;
  std::string VarName(int j) const;
  std::string RowName(int i) const;

 private:
  std::vector<double> obj_, lower_, upper_;
  std::vector<VarInfo> var_info_;
  std::vector<RowSense> sense_;
  std::vector<double> rhs_;
  std::vector<RowInfo> row_info_;
  std::vector<int64_t> row_start_ = {0};
  std::vector<int32_t> a_col_;
  std::vector<double> a_value_;
  std::vector<int64_t> col_start_;
  std::vector<int32_t> col_row_;
  std::vector<double> col_value_;
  bool finalized_ = false;
};

}  // namespace auctionlp
