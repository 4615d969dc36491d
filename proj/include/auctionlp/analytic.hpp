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

#include <vector>

#include "auctionlp/density.hpp"

namespace auctionlp {

// One-dimensional benchmark problem: a value distribution on [0,1] plus the
// bidder count. grid_resolution is the quantile-space sample count for the
// ironing sweep.
struct OneDimProblem {
  ItemDensity density;
  int bidders = 1;
  int grid_resolution = 20000;
};

// V(x) = x - (1 - F(x)) / rho(x).
double VirtualValue(const OneDimProblem& prob, double x);

// Quantile function F^{-1} by bisection.
double Quantile(const ItemDensity& density, double s);

// Ironed virtual valuation. Built from G(s) = Q(s)*(1-s), the upper integral
// of the virtual value in quantile space, concavified by the monotone-chain
// upper hull; the ironed value is minus the hull slope at s = F(x).
class IronedVirtual {
 public:
  double operator()(double x) const;   // ironed virtual value
  double dual_field(double x) const;   // max{0, ironed value}
  double hull_value(double s) const;   // concave majorant of G at quantile s
  double raw_value(double s) const;    // G itself (interpolated)
  // Quantile above which the hull follows G sample-by-sample (no ironing).
  double top_unironed_quantile() const { return top_unironed_quantile_; }
  bool ironed_anywhere() const;

  // Exact revenue of the one-item Myerson auction implied by the hull:
  // sum over hull segments of max(0, ironed value) * d(s^B).
  double MyersonRevenue(int bidders) const;

 private:
  friend IronedVirtual IronVirtual(const OneDimProblem& prob);
  const ItemDensity* density_ = nullptr;
  std::vector<double> s_, g_;          // samples of G
  std::vector<double> hull_s_, hull_g_;  // hull vertices
  std::vector<double> hull_slope_;       // per hull segment
  double top_unironed_quantile_ = 0.0;
};

IronedVirtual IronVirtual(const OneDimProblem& prob);

// B * integral of max{0, ironed V} F^{B-1} rho; the optimal one-item revenue.
double MyersonRevenue(const OneDimProblem& prob);

// Sum over items of B * E[max over bidders of the item value]; the welfare
// bound no mechanism can beat.
double FullSurplus(const DensitySpec& density, int bidders);

// Closed-form benchmark for one bidder and two i.i.d. uniform items: items
// priced at 2/3 each, the bundle at (4 - sqrt(2))/3.
enum class MvRegion { kZero, kFirstItem, kSecondItem, kBundle };
struct MvPoint {
  double u = 0.0;
  MvRegion region = MvRegion::kZero;
};
MvPoint ManelliVincent(double x, double y);
const char* ToString(MvRegion region);
// Expected revenue of that mechanism: (12 + 2*sqrt(2)) / 27.
double ManelliVincentRevenue();

// Dual-infeasibility certificate against selling the items separately, using
// the test function u(x) = max{0, sum_i x_i - I*a}. A positive margin shows
// the product of the one-item optimal fields is infeasible, so selling
// separately is not optimal. The margin equals (I-1) * integral of u.
struct SeparateSaleReport {
  double lhs = 0.0;     // integral of (<x, grad u> - u) d(mu)
  double rhs = 0.0;     // sum_i integral of u_{x_i} * ironed V_i d(mu)
  double margin = 0.0;  // lhs - rhs
  double u_mass = 0.0;  // integral of u d(mu)
};
SeparateSaleReport SeparateSaleInfeasible(const DensitySpec& density,
                                          int bidders, double a);

}  // namespace auctionlp
