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

#include "auctionlp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace auctionlp {

double EtaCdf(int bidders, double t) {
  if (bidders < 1) throw std::invalid_argument("EtaCdf: bidders must be >= 1");
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("EtaCdf: t outside [0,1]");
  if (bidders == 1) return t >= 1.0 ? 1.0 : 0.0;
  return std::pow(t, 1.0 / (bidders - 1));
}

double EtaMass(int bidders, double a, double b) {
  if (a > b) throw std::invalid_argument("EtaMass: a > b");
  if (bidders == 1) {
    // Point mass at 1; the closed interval [a, 1] carries it.
    return b >= 1.0 ? 1.0 : 0.0;
  }
  return EtaCdf(bidders, b) - EtaCdf(bidders, a);
}

double EtaFirstMoment(int bidders, double a, double b) {
  if (a > b) throw std::invalid_argument("EtaFirstMoment: a > b");
  if (bidders == 1) return b >= 1.0 ? 1.0 : 0.0;
  const double e = static_cast<double>(bidders) / (bidders - 1);
  return (std::pow(b, e) - std::pow(a, e)) / bidders;
}

namespace {

// One-sided moment of a segment about its conditional mean:
// A = integral over [t_seg, hi] of (t - t_seg) d(eta). The partition is
// exact iff A is constant across segments.
double OneSidedMoment(int bidders, double lo, double hi) {
  const double w = EtaMass(bidders, lo, hi);
  if (w <= 0.0) return 0.0;
  const double t = EtaFirstMoment(bidders, lo, hi) / w;
  return EtaFirstMoment(bidders, t, hi) - t * EtaMass(bidders, t, hi);
}

}  // namespace

void ComputeSegmentStats(int bidders, const std::vector<double>& q,
                         std::vector<double>* w, std::vector<double>* t) {
  const int segments = static_cast<int>(q.size()) - 1;
  w->resize(segments);
  t->resize(segments);
  for (int m = 0; m < segments; ++m) {
    (*w)[m] = EtaMass(bidders, q[m], q[m + 1]);
    (*t)[m] = (*w)[m] > 0.0 ? EtaFirstMoment(bidders, q[m], q[m + 1]) / (*w)[m]
                            : q[m + 1];
  }
}

double ExactnessResidual(int bidders, const std::vector<double>& q) {
  const int segments = static_cast<int>(q.size()) - 1;
  if (segments <= 1) return 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double mean = 0.0;
  for (int m = 0; m < segments; ++m) {
    const double a = OneSidedMoment(bidders, q[m], q[m + 1]);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    mean += a;
  }
  mean /= segments;
  if (mean <= 0.0) return 0.0;
  return (hi - lo) / mean;
}

namespace {

// Picks the interior breakpoint equalizing the one-sided moments of the two
// segments it separates. g is increasing in the breakpoint, so bisection.
double EqualizeBreakpoint(int bidders, double lo, double hi, double init) {
  double a = lo, b = hi;
  double x = std::clamp(init, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double g = OneSidedMoment(bidders, lo, x) -
                     OneSidedMoment(bidders, x, hi);
    if (g > 0.0) {
      b = x;
    } else {
      a = x;
    }
    const double next = 0.5 * (a + b);
    if (next == x || b - a <= 1e-17 * (1.0 + x)) break;
    x = next;
  }
  return x;
}

}  // namespace

MajorizationPartition BuildPartition(int bidders, int segments,
                                     PartitionMode mode,
                                     PartitionBuildStats* stats) {
  if (bidders < 1) {
    throw std::invalid_argument("BuildPartition: bidders must be >= 1");
  }
  if (segments < 1) {
    throw std::invalid_argument("BuildPartition: segments must be >= 1");
  }
  if (bidders == 1 && segments > 1) {
    throw std::invalid_argument(
        "BuildPartition: eta is a point mass for one bidder; M must be 1");
  }

  MajorizationPartition p;
  p.bidders = bidders;
  p.segments = segments;
  p.mode = mode;
  p.q.resize(segments + 1);

  if (bidders == 1) {
    p.q = {0.0, 1.0};
    p.w = {1.0};
    p.t = {1.0};
    if (stats) *stats = {};
    return p;
  }

  if (mode == PartitionMode::kUniformBreakpoints || bidders == 2) {
    // For two bidders eta is uniform and the uniform chain is already exact.
    for (int m = 0; m <= segments; ++m) {
      p.q[m] = static_cast<double>(m) / segments;
    }
    if (stats) *stats = {};
  } else {
    // Start at eta-quantiles, then Gauss-Seidel sweeps of the local
    // two-segment equalization until the moments A_m agree.
    for (int m = 0; m <= segments; ++m) {
      p.q[m] = std::pow(static_cast<double>(m) / segments,
                        static_cast<double>(bidders - 1));
    }
    constexpr int kMaxSweeps = 10000;
    constexpr double kTol = 1e-10;
    double residual = ExactnessResidual(bidders, p.q);
    int sweep = 0;
    while (residual > kTol && sweep < kMaxSweeps) {
      for (int m = 1; m < segments; ++m) {
        p.q[m] = EqualizeBreakpoint(bidders, p.q[m - 1], p.q[m + 1], p.q[m]);
      }
      residual = ExactnessResidual(bidders, p.q);
      ++sweep;
    }
    if (stats) {
      stats->sweeps = sweep;
      stats->residual = residual;
    }
    if (residual > kTol) {
      throw std::runtime_error(
          "BuildPartition: exact-partition iteration did not converge; "
          "residual = " +
          std::to_string(residual));
    }
  }

  ComputeSegmentStats(bidders, p.q, &p.w, &p.t);
  return p;
}

double MajorizationPartition::max_gap() const {
  double g = 0.0;
  for (int m = 0; m < segments; ++m) g = std::max(g, q[m + 1] - q[m]);
  return g;
}

double MajorizationPartition::tail_integral() const {
  const double tm = t[segments - 1];
  return EtaFirstMoment(bidders, tm, 1.0) - tm * EtaMass(bidders, tm, 1.0);
}

double MajorizationPartition::IntegrateAdmissible(
    const std::vector<double>& phi_at_t) const {
  if (static_cast<int>(phi_at_t.size()) != segments) {
    throw std::invalid_argument("IntegrateAdmissible: size mismatch");
  }
  if (bidders == 1) return phi_at_t[0];
  // Piecewise-linear pieces: constant left of t_1, linear on [t_m, t_{m+1}],
  // constant right of t_M. Each piece alpha + beta*s integrates to
  // alpha*mass + beta*first_moment in closed form.
  double total = 0.0;
  auto piece = [&](double lo, double hi, double alpha, double beta) {
    total += alpha * EtaMass(bidders, lo, hi) +
             beta * EtaFirstMoment(bidders, lo, hi);
  };
  piece(0.0, t[0], phi_at_t[0], 0.0);
  for (int m = 0; m + 1 < segments; ++m) {
    const double beta = (phi_at_t[m + 1] - phi_at_t[m]) / (t[m + 1] - t[m]);
    const double alpha = phi_at_t[m] - beta * t[m];
    piece(t[m], t[m + 1], alpha, beta);
  }
  piece(t[segments - 1], 1.0, phi_at_t[segments - 1], 0.0);
  return total;
}

double MajorizationPartition::QuadratureValue(
    const std::vector<double>& phi_at_t) const {
  double total = 0.0;
  for (int m = 0; m < segments; ++m) total += phi_at_t[m] * w[m];
  return total;
}

void MajorizationPartition::Validate() const {
  if (static_cast<int>(q.size()) != segments + 1 ||
      static_cast<int>(w.size()) != segments ||
      static_cast<int>(t.size()) != segments) {
    throw std::invalid_argument("MajorizationPartition: size mismatch");
  }
  if (q.front() != 0.0 || q.back() != 1.0) {
    throw std::invalid_argument("MajorizationPartition: q must span [0,1]");
  }
  double mass = 0.0;
  for (int m = 0; m < segments; ++m) {
    if (!(q[m] < q[m + 1])) {
      throw std::invalid_argument("MajorizationPartition: q not increasing");
    }
    if (bidders >= 2 && !(q[m] < t[m] && t[m] <= q[m + 1])) {
      throw std::invalid_argument(
          "MajorizationPartition: conditional mean outside its segment");
    }
    if (m > 0 && !(t[m - 1] < t[m])) {
      throw std::invalid_argument("MajorizationPartition: t not increasing");
    }
    if (std::abs(w[m] - EtaMass(bidders, q[m], q[m + 1])) > 1e-10) {
      throw std::invalid_argument(
          "MajorizationPartition: weight inconsistent with eta CDF");
    }
    mass += w[m];
  }
  if (std::abs(mass - 1.0) > 1e-10) {
    throw std::invalid_argument("MajorizationPartition: weights must sum to 1");
  }
}

void WritePartitionCsv(const MajorizationPartition& partition,
                       std::ostream& out) {
  out << "m,q_m,w_m,t_m\n";
  char buf[200];
  for (int m = 0; m < partition.segments; ++m) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", m + 1,
                  partition.q[m + 1], partition.w[m], partition.t[m]);
    out << buf;
  }
}

}  // namespace auctionlp
