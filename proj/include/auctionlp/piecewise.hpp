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

#include <cstddef>
#include <vector>

namespace auctionlp {

// Continuous piecewise-linear function on [lo, hi] given by breakpoints and
// values; evaluation clamps the argument to the domain.
struct PiecewiseLinear {
  std::vector<double> x;
  std::vector<double> y;
  double operator()(double t) const;
  double lo() const { return x.front(); }
  double hi() const { return x.back(); }
  // Max over a uniform probe grid of the negative part of the second
  // difference; ~0 for convex functions.
  double ConvexityDefect(int probes = 1000) const;
};

// Pointwise maximum of 0 and the lines slope[i] * t - offset[i] on [0, 1].
// Slopes are expected non-negative, so the result is convex non-decreasing
// with value 0 at 0 whenever offsets are non-negative.
PiecewiseLinear UpperEnvelopeOfLines(const std::vector<double>& slope,
                                     const std::vector<double>& offset);

// Indices of the vertices of the upper concave hull of the point set
// (xs strictly increasing), by the monotone-chain sweep.
std::vector<size_t> UpperConcaveHull(const std::vector<double>& xs,
                                     const std::vector<double>& ys);

}  // namespace auctionlp
