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
#include <iosfwd>
#include <vector>

#include "auctionlp/density.hpp"

namespace auctionlp {

// Uniform partition of [0,1]^I into n^I cubes. Cell j carries the center
// theta(j) and the conservative weight mu(j) = min(rho over cell) / n^I.
// Mass not assigned to any cell is the slack weight mu0, so that
// mu0 + sum_j mu(j) = 1. Cells are ordered row-major by multi-index with
// axis 0 slowest. Immutable after construction.
class TypeGrid {
 public:
  TypeGrid(int n, int items, std::vector<double> mu, double mu0);

  int n() const { return n_; }
  int items() const { return items_; }
  int64_t cells() const { return static_cast<int64_t>(mu_.size()); }

  // Component k of the center of cell j: (2*a+1)/(2n) for axis index a.
  double theta(int64_t j, int k) const;
  std::vector<double> theta(int64_t j) const;
  double mu(int64_t j) const { return mu_[j]; }
  const std::vector<double>& mu() const { return mu_; }
  double mu0() const { return mu0_; }

  // Axis index along dimension k of cell j (0-based).
  int axis_of(int64_t j, int k) const;
  int64_t flat_index(const std::vector<int>& axes) const;

  double total_cell_mass() const;

 private:
  int n_;
  int items_;
  std::vector<double> mu_;
  double mu0_;
  std::vector<int64_t> stride_;
};

struct GridOptions {
  // Upper bound on n^I; larger models are rejected.
  int64_t max_cells = 1 << 20;
  // Sample count per axis when a factor has no monotonicity flag.
  int min_samples = 9;
};

// Builds the grid for the given density. Throws std::invalid_argument on a
// too-large model or on negative density samples.
TypeGrid BuildGrid(int n, const DensitySpec& density,
                   const GridOptions& options = {});

// CSV with columns j, theta_1..theta_I, mu.
void WriteGridCsv(const TypeGrid& grid, std::ostream& out);

}  // namespace auctionlp
