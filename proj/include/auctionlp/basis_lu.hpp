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

#include <cstdint>
#include <vector>

namespace auctionlp {

// Sparse LU factorization of a square basis matrix with Markowitz pivoting
// and threshold partial pivoting. Columns are fed as sparse (row, value)
// lists; row and column order is chosen by the elimination.
//
// Solves are in-place on dense work vectors indexed by row (Ftran input /
// output by column position of the basis, see below). The factorization
// keeps original indices; permutations are applied internally.
class BasisLu {
 public:
  struct Entry {
    int32_t index;  // original row (L) or column position (U)
    double value;
  };

  // cols[p] lists the nonzeros of basis column p. Returns the positions that
  // could not be pivoted (empty on success); on failure `unpivoted_rows`
  // (when given) receives the rows left uncovered, the factorization is
  // unusable, and callers should repair the basis and retry.
  std::vector<int> Factorize(const std::vector<std::vector<Entry>>& cols,
                             double rel_pivot_tol = 0.1,
                             double abs_pivot_tol = 1e-11,
                             std::vector<int>* unpivoted_rows = nullptr);

  int dim() const { return m_; }
  int64_t entries() const {
    return static_cast<int64_t>(l_entries_.size() + u_entries_.size());
  }

  // Solves B x = v. v is indexed by row on input; the result is indexed by
  // basis column position.
  void Ftran(std::vector<double>& v) const;
  // Solves B^T y = c. c is indexed by basis column position on input; the
  // result is indexed by row.
  void Btran(std::vector<double>& v) const;

 private:
  int m_ = 0;
  // Step-ordered structures, indices remapped to step coordinates.
  std::vector<int32_t> perm_row_;   // step -> original row
  std::vector<int32_t> perm_col_;   // step -> basis column position
  std::vector<double> diag_;        // pivot values per step
  std::vector<int64_t> l_start_;    // L columns by step
  std::vector<Entry> l_entries_;    // index = step of the affected row
  std::vector<int64_t> u_start_;    // U rows by step
  std::vector<Entry> u_entries_;    // index = step of the column
  mutable std::vector<double> work_;
};

}  // namespace auctionlp
