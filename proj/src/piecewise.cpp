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

#include "auctionlp/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auctionlp {

double PiecewiseLinear::operator()(double t) const {
  if (x.empty()) return 0.0;
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const size_t hi = static_cast<size_t>(it - x.begin());
  const size_t lo = hi - 1;
  const double span = x[hi] - x[lo];
  if (span <= 0.0) return y[hi];
  const double w = (t - x[lo]) / span;
  return y[lo] + w * (y[hi] - y[lo]);
}

double PiecewiseLinear::ConvexityDefect(int probes) const {
  if (x.size() < 3) return 0.0;
  double defect = 0.0;
  const double a = lo(), b = hi();
  double prev2 = (*this)(a), prev1 = (*this)(a + (b - a) / probes);
  for (int i = 2; i <= probes; ++i) {
    const double cur = (*this)(a + (b - a) * i / probes);
    defect = std::min(defect, cur - 2.0 * prev1 + prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return -defect;
}

PiecewiseLinear UpperEnvelopeOfLines(const std::vector<double>& slope,
                                     const std::vector<double>& offset) {
  if (slope.size() != offset.size()) {
    throw std::invalid_argument("UpperEnvelopeOfLines: size mismatch");
  }
  struct Line {
    double a, b;  // t -> a*t - b
  };
  std::vector<Line> lines;
  lines.reserve(slope.size() + 1);
  lines.push_back({0.0, 0.0});
  for (size_t i = 0; i < slope.size(); ++i) {
    lines.push_back({slope[i], offset[i]});
  }
  // Slope ascending; among equal slopes only the highest line matters.
  std::sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) {
    return l.a < r.a || (l.a == r.a && l.b < r.b);
  });
  std::vector<Line> hull;
  auto useless = [](const Line& l1, const Line& l2, const Line& l3) {
    // With a1 < a2 < a3, line l2 never reaches the envelope iff the crossing
    // of l1 and l3 lies at or above l2.
    return (l3.b - l1.b) * (l2.a - l1.a) <= (l2.b - l1.b) * (l3.a - l1.a);
  };
  for (const Line& l : lines) {
    if (!hull.empty() && hull.back().a == l.a) continue;
    while (hull.size() >= 2 &&
           useless(hull[hull.size() - 2], hull.back(), l)) {
      hull.pop_back();
    }
    while (hull.size() == 1 && hull.back().b >= l.b) {
      hull.pop_back();  // dominated everywhere by the steeper line
    }
    hull.push_back(l);
  }

  PiecewiseLinear f;
  size_t seg = 0;
  auto cross_after = [&](size_t i) {
    return (hull[i + 1].b - hull[i].b) / (hull[i + 1].a - hull[i].a);
  };
  while (seg + 1 < hull.size() && cross_after(seg) <= 0.0) ++seg;
  f.x.push_back(0.0);
  f.y.push_back(-hull[seg].b);
  while (seg + 1 < hull.size()) {
    const double t = cross_after(seg);
    if (t >= 1.0) break;
    f.x.push_back(t);
    f.y.push_back(hull[seg].a * t - hull[seg].b);
    ++seg;
  }
  f.x.push_back(1.0);
  f.y.push_back(hull[seg].a - hull[seg].b);
  return f;
}

std::vector<size_t> UpperConcaveHull(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
  const size_t n = xs.size();
  std::vector<size_t> hull;
  for (size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const size_t a = hull[hull.size() - 2], b = hull.back();
      // Keep the chain concave: slope(a,b) must exceed slope(b,i).
      const double lhs = (ys[b] - ys[a]) * (xs[i] - xs[b]);
      const double rhs = (ys[i] - ys[b]) * (xs[b] - xs[a]);
      if (lhs > rhs) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return hull;
}

}  // namespace auctionlp
