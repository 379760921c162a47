// Copyright 2026 The tddnc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tddnc/lambert_w.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tddnc {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr int kMaxIterations = 64;

// Series about the branch point in p = -sqrt(2 (1 + e x)).
double branch_point_guess(double one_plus_ex) {
  const double p = -std::sqrt(2.0 * std::max(one_plus_ex, 0.0));
  return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
}

// Newton on f(w) = w + ln(-w) - L, the log form of w e^w = x. Steps that
// would cross the branch point are halved.
double refine(double w, double log_neg_x) {
  for (int it = 0; it < kMaxIterations; ++it) {
    const double f = w + std::log(-w) - log_neg_x;
    const double df = 1.0 + 1.0 / w;
    if (df == 0.0) break;
    double step = f / df;
    double next = w - step;
    while (next >= -1.0 && step != 0.0) {
      step *= 0.5;
      next = w - step;
    }
    if (std::abs(next - w) <= 1e-16 * std::abs(next)) return next;
    w = next;
  }
  return w;
}

}  // namespace

double lambert_w_minus1_from_log(double log_neg_x) {
  if (!(log_neg_x <= -1.0)) {
    throw std::invalid_argument("W_{-1} requires ln(-x) <= -1");
  }
  if (log_neg_x == -1.0) return -1.0;
  double w0;
  if (log_neg_x > -2.0) {
    // 1 + e x = 1 - exp(L + 1)
    w0 = branch_point_guess(-std::expm1(log_neg_x + 1.0));
  } else {
    w0 = log_neg_x - std::log(-log_neg_x);
  }
  if (w0 >= -1.0) w0 = -1.0 - 1e-8;
  return refine(w0, log_neg_x);
}

double lambert_w_minus1(double x) {
  if (!(x < 0.0) || x < -kInvE) {
    throw std::invalid_argument("W_{-1} is real only on [-1/e, 0)");
  }
  const double one_plus_ex = 1.0 + std::numbers::e * x;
  if (one_plus_ex <= 0.0) return -1.0;
  if (one_plus_ex < 1e-3) {
    // Near the branch point the log form loses the tiny distance to -1/e, so
    // refine against the defining equation directly (Halley).
    double w = branch_point_guess(one_plus_ex);
    for (int it = 0; it < kMaxIterations; ++it) {
      const double ew = std::exp(w);
      const double f = w * ew - x;
      const double wp1 = w + 1.0;
      if (wp1 == 0.0) break;
      const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
      const double next = w - f / denom;
      if (!(next < -1.0) || std::abs(next - w) <= 1e-16 * std::abs(next)) {
        return next < -1.0 ? next : w;
      }
      w = next;
    }
    return w;
  }
  return lambert_w_minus1_from_log(std::log(-x));
}

}  // namespace tddnc
