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

#include "auctionlp/density.hpp"

#include <cmath>
#include <stdexcept>

#include "auctionlp/quadrature.hpp"

namespace auctionlp {

ItemDensity UniformItem() {
  ItemDensity d;
  d.pdf = [](double) { return 1.0; };
  d.cdf = [](double x) { return x; };
  d.monotonicity = Monotonicity::kIncreasing;  // constant; either flag works
  d.label = "uniform";
  return d;
}

ItemDensity LinearItem(double a) {
  if (a < 0.0 || a > 2.0) {
    throw std::invalid_argument("LinearItem: a must be in [0,2]");
  }
  ItemDensity d;
  const double b = 2.0 * (1.0 - a);
  d.pdf = [a, b](double x) { return a + b * x; };
  d.cdf = [a](double x) { return a * x + (1.0 - a) * x * x; };
  d.monotonicity = a <= 1.0 ? Monotonicity::kIncreasing
                            : Monotonicity::kDecreasing;
  d.label = "linear:" + std::to_string(a);
  return d;
}

ItemDensity CosineItem(double beta) {
  if (std::abs(beta) >= 1.0) {
    throw std::invalid_argument("CosineItem: |beta| must be < 1");
  }
  ItemDensity d;
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  d.pdf = [beta](double x) { return 1.0 + beta * std::cos(kTwoPi * x); };
  d.cdf = [beta](double x) {
    return x + beta * std::sin(kTwoPi * x) / kTwoPi;
  };
  d.monotonicity = Monotonicity::kNone;
  d.label = "cosine:" + std::to_string(beta);
  return d;
}

DensitySpec DensitySpec::Uniform(int items) {
  if (items < 1) throw std::invalid_argument("DensitySpec: items must be >= 1");
  DensitySpec spec;
  spec.items_.assign(items, UniformItem());
  spec.uniform_ = true;
  return spec;
}

DensitySpec DensitySpec::Product(std::vector<ItemDensity> items) {
  if (items.empty()) {
    throw std::invalid_argument("DensitySpec: items must be non-empty");
  }
  DensitySpec spec;
  spec.items_ = std::move(items);
  spec.uniform_ = true;
  for (const auto& item : spec.items_) {
    if (item.label != "uniform") spec.uniform_ = false;
  }
  return spec;
}

double DensitySpec::pdf(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != item_count()) {
    throw std::invalid_argument("DensitySpec::pdf: dimension mismatch");
  }
  double value = 1.0;
  for (int k = 0; k < item_count(); ++k) value *= items_[k].pdf(x[k]);
  return value;
}

void DensitySpec::Validate() const {
  constexpr int kSamples = 257;
  for (int k = 0; k < item_count(); ++k) {
    const ItemDensity& item = items_[k];
    if (!item.pdf || !item.cdf) {
      throw std::invalid_argument("DensitySpec: missing evaluator");
    }
    if (std::abs(item.cdf(0.0)) > 1e-12 || std::abs(item.cdf(1.0) - 1.0) > 1e-9) {
      throw std::invalid_argument("DensitySpec: CDF endpoints must be 0 and 1");
    }
    double prev = item.cdf(0.0);
    for (int i = 0; i <= kSamples; ++i) {
      const double x = static_cast<double>(i) / kSamples;
      const double p = item.pdf(x);
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("DensitySpec: density must be >= 0");
      }
      const double c = item.cdf(x);
      if (c < prev - 1e-12) {
        throw std::invalid_argument("DensitySpec: CDF must be non-decreasing");
      }
      prev = c;
    }
    const double mass =
        AdaptiveSimpson([&item](double x) { return item.pdf(x); }, 0.0, 1.0,
                        1e-12);
    if (std::abs(mass - 1.0) > 1e-9) {
      throw std::invalid_argument("DensitySpec: factor does not integrate to 1");
    }
  }
}

}  // namespace auctionlp
