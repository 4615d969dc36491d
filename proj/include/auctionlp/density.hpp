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

#include <functional>
#include <string>
#include <vector>

namespace auctionlp {

enum class Monotonicity { kNone, kIncreasing, kDecreasing };

// One factor of a product density on [0,1]. pdf must be non-negative,
// cdf(0)=0, cdf(1)=1, cdf non-decreasing, and the factor integrates to 1.
struct ItemDensity {
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  Monotonicity monotonicity = Monotonicity::kNone;
  std::string label = "custom";
};

ItemDensity UniformItem();
// rho(x) = a + 2*(1-a)*x for a in [0,2]; a=1 is uniform, a=0 is 2x,
// a=2 is 2-2x. Always integrates to 1.
ItemDensity LinearItem(double a);
// rho(x) = 1 + beta*cos(2*pi*x), |beta| < 1. Non-monotone (two bumps),
// useful for exercising ironing.
ItemDensity CosineItem(double beta);

// Joint type density on [0,1]^I, always a product of per-item factors.
class DensitySpec {
 public:
  static DensitySpec Uniform(int items);
  static DensitySpec Product(std::vector<ItemDensity> items);

  int item_count() const { return static_cast<int>(items_.size()); }
  const ItemDensity& item(int k) const { return items_[k]; }
  bool is_uniform() const { return uniform_; }

  double pdf(const std::vector<double>& x) const;

  // Checks positivity on a sample grid, CDF endpoints/monotonicity, and that
  // every factor integrates to 1 within 1e-9 (quadrature).
  void Validate() const;

 private:
  std::vector<ItemDensity> items_;
  bool uniform_ = false;
};

}  // namespace auctionlp
