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

#include "auctionlp/quadrature.hpp"

#include <cmath>

namespace auctionlp {
namespace {

double SimpsonRule(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double Recurse(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = SimpsonRule(fa, flm, fm, m - a);
  const double right = SimpsonRule(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return Recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         Recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double AdaptiveSimpson(const std::function<double(double)>& f, double a,
                       double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = SimpsonRule(fa, fm, fb, b - a);
  return Recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace auctionlp
