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

#include "auctionlp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace auctionlp {

TypeGrid::TypeGrid(int n, int items, std::vector<double> mu, double mu0)
    : n_(n), items_(items), mu_(std::move(mu)), mu0_(mu0) {
  stride_.resize(items_);
  int64_t s = 1;
  for (int k = items_ - 1; k >= 0; --k) {
    stride_[k] = s;
    s *= n_;
  }
  if (static_cast<int64_t>(mu_.size()) != s) {
    throw std::invalid_argument("TypeGrid: weight count != n^I");
  }
}

int TypeGrid::axis_of(int64_t j, int k) const {
  return static_cast<int>((j / stride_[k]) % n_);
}

double TypeGrid::theta(int64_t j, int k) const {
  return (2.0 * axis_of(j, k) + 1.0) / (2.0 * n_);
}

std::vector<double> TypeGrid::theta(int64_t j) const {
  std::vector<double> x(items_);
  for (int k = 0; k < items_; ++k) x[k] = theta(j, k);
  return x;
}

int64_t TypeGrid::flat_index(const std::vector<int>& axes) const {
  int64_t j = 0;
  for (int k = 0; k < items_; ++k) j += axes[k] * stride_[k];
  return j;
}

double TypeGrid::total_cell_mass() const {
  double s = 0.0;
  for (double m : mu_) s += m;
  return s;
}

namespace {

// Minimum of a 1D factor over [lo, hi]; exact for flagged monotone factors,
// otherwise a sampled approximation (samples include both endpoints).
double AxisMin(const ItemDensity& item, double lo, double hi, int samples) {
  switch (item.monotonicity) {
    case Monotonicity::kIncreasing:
      return item.pdf(lo);
    case Monotonicity::kDecreasing:
      return item.pdf(hi);
    case Monotonicity::kNone:
      break;
  }
  double best = item.pdf(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    best = std::min(best, item.pdf(x));
  }
  return best;
}

}  // namespace

TypeGrid BuildGrid(int n, const DensitySpec& density,
                   const GridOptions& options) {
  if (n < 1) throw std::invalid_argument("BuildGrid: n must be >= 1");
  const int items = density.item_count();
  if (items < 1 || items > 3) {
    throw std::invalid_argument("BuildGrid: 1 <= I <= 3 supported");
  }
  int64_t cells = 1;
  for (int k = 0; k < items; ++k) {
    cells *= n;
    if (cells > options.max_cells) {
      throw std::invalid_argument("BuildGrid: model too large (n^I exceeds budget)");
    }
  }

  // Per-axis minima of each factor over every 1D cell, then take products.
  std::vector<std::vector<double>> axis_min(items, std::vector<double>(n));
  for (int k = 0; k < items; ++k) {
    for (int a = 0; a < n; ++a) {
      const double lo = static_cast<double>(a) / n;
      const double hi = static_cast<double>(a + 1) / n;
      const double m = AxisMin(density.item(k), lo, hi, options.min_samples);
      if (m < 0.0 || !std::isfinite(m)) {
        throw std::invalid_argument("BuildGrid: negative density sample");
      }
      axis_min[k][a] = m;
    }
  }

  const double cell_volume = std::pow(static_cast<double>(n), -items);
  std::vector<double> mu(cells);
  std::vector<int> axes(items, 0);
  for (int64_t j = 0; j < cells; ++j) {
    double m = 1.0;
    for (int k = 0; k < items; ++k) m *= axis_min[k][axes[k]];
    mu[j] = m * cell_volume;
    for (int k = items - 1; k >= 0; --k) {
      if (++axes[k] < n) break;
      axes[k] = 0;
    }
  }

  double total = 0.0;
  for (double m : mu) total += m;
  if (total > 1.0 + 1e-9) {
    throw std::invalid_argument("BuildGrid: cell mass exceeds 1");
  }
  const double mu0 = std::max(0.0, 1.0 - total);
  return TypeGrid(n, items, std::move(mu), mu0);
}

void WriteGridCsv(const TypeGrid& grid, std::ostream& out) {
  out << "j";
  for (int k = 0; k < grid.items(); ++k) out << ",theta_" << (k + 1);
  out << ",mu\n";
  char buf[64];
  for (int64_t j = 0; j < grid.cells(); ++j) {
    out << j;
    for (int k = 0; k < grid.items(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", grid.theta(j, k));
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", grid.mu(j));
    out << ',' << buf << '\n';
  }
}

}  // namespace auctionlp
