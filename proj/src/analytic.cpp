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

#include "auctionlp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "auctionlp/piecewise.hpp"
#include "auctionlp/quadrature.hpp"

namespace auctionlp {

double VirtualValue(const OneDimProblem& prob, double x) {
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument("VirtualValue: x outside [0,1]");
  }
  const double rho = prob.density.pdf(x);
  const double tail = 1.0 - prob.density.cdf(x);
  if (tail == 0.0) return x;  // V(1) = 1 regardless of the density
  return x - tail / rho;
}

double Quantile(const ItemDensity& density, double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (density.cdf(mid) < s) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

IronedVirtual IronVirtual(const OneDimProblem& prob) {
  if (prob.grid_resolution < 1000) {
    throw std::invalid_argument("IronVirtual: grid resolution must be >= 1000");
  }
  IronedVirtual iv;
  iv.density_ = &prob.density;
  const int K = prob.grid_resolution;
  iv.s_.resize(K + 1);
  iv.g_.resize(K + 1);
  for (int i = 0; i <= K; ++i) {
    const double s = static_cast<double>(i) / K;
    iv.s_[i] = s;
    // G(s) = integral of V(Q(r)) dr over [s,1]; by parts this is Q(s)(1-s).
    iv.g_[i] = Quantile(prob.density, s) * (1.0 - s);
  }
  const std::vector<size_t> hull = UpperConcaveHull(iv.s_, iv.g_);
  iv.hull_s_.reserve(hull.size());
  iv.hull_g_.reserve(hull.size());
  for (size_t idx : hull) {
    iv.hull_s_.push_back(iv.s_[idx]);
    iv.hull_g_.push_back(iv.g_[idx]);
  }
  iv.hull_slope_.resize(hull.size() - 1);
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    iv.hull_slope_[i] = (iv.hull_g_[i + 1] - iv.hull_g_[i]) /
                        (iv.hull_s_[i + 1] - iv.hull_s_[i]);
  }
  // The top unironed region: walk back while hull vertices are consecutive
  // samples (high types are never ironed, so the walk is non-trivial).
  size_t pos = hull.size() - 1;
  while (pos > 0 && hull[pos] - hull[pos - 1] == 1) --pos;
  iv.top_unironed_quantile_ = iv.s_[hull[pos]];
  return iv;
}

namespace {

// Index of the hull segment containing quantile s.
size_t SegmentOf(const std::vector<double>& xs, double s) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), s);
  size_t hi = static_cast<size_t>(it - xs.begin());
  if (hi <= 0) hi = 1;
  if (hi >= xs.size()) hi = xs.size() - 1;
  return hi - 1;
}

}  // namespace

double IronedVirtual::operator()(double x) const {
  const double s = density_->cdf(x);
  return -hull_slope_[SegmentOf(hull_s_, s)];
}

double IronedVirtual::dual_field(double x) const {
  return std::max(0.0, (*this)(x));
}

double IronedVirtual::hull_value(double s) const {
  const size_t seg = SegmentOf(hull_s_, s);
  return hull_g_[seg] + hull_slope_[seg] * (s - hull_s_[seg]);
}

double IronedVirtual::raw_value(double s) const {
  const size_t seg = SegmentOf(s_, s);
  const double w = (s - s_[seg]) / (s_[seg + 1] - s_[seg]);
  return g_[seg] + w * (g_[seg + 1] - g_[seg]);
}

bool IronedVirtual::ironed_anywhere() const {
  return hull_s_.size() != s_.size();
}

double IronedVirtual::MyersonRevenue(int bidders) const {
  double revenue = 0.0;
  for (size_t i = 0; i + 1 < hull_s_.size(); ++i) {
    const double value = -hull_slope_[i];
    if (value <= 0.0) continue;
    revenue += value * (std::pow(hull_s_[i + 1], bidders) -
                        std::pow(hull_s_[i], bidders));
  }
  return revenue;
}

double MyersonRevenue(const OneDimProblem& prob) {
  return IronVirtual(prob).MyersonRevenue(prob.bidders);
}

double FullSurplus(const DensitySpec& density, int bidders) {
  double total = 0.0;
  for (int k = 0; k < density.item_count(); ++k) {
    const ItemDensity& item = density.item(k);
    total += bidders *
             AdaptiveSimpson(
                 [&](double x) {
                   return x * std::pow(item.cdf(x), bidders - 1) * item.pdf(x);
                 },
                 0.0, 1.0, 1e-11);
  }
  return total;
}

MvPoint ManelliVincent(double x, double y) {
  const double bundle_price = (4.0 - std::sqrt(2.0)) / 3.0;
  MvPoint best;
  best.u = 0.0;
  best.region = MvRegion::kZero;
  const double a = x - 2.0 / 3.0;
  if (a > best.u) best = {a, MvRegion::kFirstItem};
  const double b = y - 2.0 / 3.0;
  if (b > best.u) best = {b, MvRegion::kSecondItem};
  const double w = x + y - bundle_price;
  if (w > best.u) best = {w, MvRegion::kBundle};
  return best;
}

const char* ToString(MvRegion region) {
  switch (region) {
    case MvRegion::kZero: return "Z";
    case MvRegion::kFirstItem: return "A";
    case MvRegion::kSecondItem: return "B";
    case MvRegion::kBundle: return "W";
  }
  return "?";
}

double ManelliVincentRevenue() { return (12.0 + 2.0 * std::sqrt(2.0)) / 27.0; }

namespace {

// Recursive tensor quadrature of f(x) * prod rho_i(x_i) over the region
// sum x_i > threshold_sum within the unit cube.
double IntegrateOverExcess(
    const DensitySpec& density, int dim, double threshold_sum,
    std::vector<double>& point,
    const std::function<double(const std::vector<double>&)>& f, double tol) {
  const int items = density.item_count();
  if (dim == items - 1) {
    const double lo = std::clamp(threshold_sum, 0.0, 1.0);
    if (lo >= 1.0) return 0.0;
    return AdaptiveSimpson(
        [&](double x) {
          point[dim] = x;
          return f(point) * density.item(dim).pdf(x);
        },
        lo, 1.0, tol);
  }
  return AdaptiveSimpson(
      [&](double x) {
        point[dim] = x;
        return density.item(dim).pdf(x) *
               IntegrateOverExcess(density, dim + 1, threshold_sum - x, point,
                                   f, tol);
      },
      0.0, 1.0, tol);
}

}  // namespace

SeparateSaleReport SeparateSaleInfeasible(const DensitySpec& density,
                                          int bidders, double a) {
  const int items = density.item_count();
  if (a <= 0.0 || a >= 1.0) {
    throw std::invalid_argument("SeparateSaleInfeasible: a must be in (0,1)");
  }
  // The gradient of u = max{0, sum x_i - I a} is supported on
  // sum x_i > I a, where every coordinate exceeds I(a-1)+1; the per-item
  // fields must be un-ironed there for the virtual-value identity.
  const double support_lo = items * (a - 1.0) + 1.0;
  std::vector<IronedVirtual> ironed;
  ironed.reserve(items);
  for (int k = 0; k < items; ++k) {
    OneDimProblem prob{density.item(k), bidders, 20000};
    IronedVirtual iv = IronVirtual(prob);
    const double threshold_x =
        Quantile(density.item(k), iv.top_unironed_quantile());
    if (threshold_x > support_lo + 1e-9) {
      throw std::invalid_argument(
          "SeparateSaleInfeasible: a is below an ironing threshold");
    }
    ironed.push_back(std::move(iv));
  }

  SeparateSaleReport report;
  const double cut = items * a;
  std::vector<double> point(items, 0.0);
  const double tol = 1e-10;
  // <x, grad u> - u = I*a on the support.
  report.lhs = cut * IntegrateOverExcess(
                         density, 0, cut, point,
                         [](const std::vector<double>&) { return 1.0; }, tol);
  double rhs = 0.0;
  for (int k = 0; k < items; ++k) {
    rhs += IntegrateOverExcess(
        density, 0, cut, point,
        [&](const std::vector<double>& x) { return ironed[k](x[k]); }, tol);
  }
  report.rhs = rhs;
  report.u_mass = IntegrateOverExcess(
      density, 0, cut, point,
      [&](const std::vector<double>& x) {
        double s = -cut;
        for (double v : x) s += v;
        return s;
      },
      tol);
  report.margin = report.lhs - report.rhs;
  return report;
}

}  // namespace auctionlp
