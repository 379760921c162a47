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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tddnc/lambert_w.hpp"

using tddnc::lambert_w_minus1;
using tddnc::lambert_w_minus1_from_log;

namespace {

double residual(double w, double x) {
  return std::fabs(w * std::exp(w) - x) / std::fabs(x);
}

}  // namespace

TEST_CASE("branch point") {
  CHECK(lambert_w_minus1(-1.0 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("reference value") {
  const double w = lambert_w_minus1(-0.1);
  CHECK(w == doctest::Approx(-3.577152).epsilon(1e-6));
  CHECK(residual(w, -0.1) <= 1e-12);
}

TEST_CASE("defining equation across the domain") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lo = -1.0 / std::numbers::e;
  for (int k = 0; k < 20000; ++k) {
    double x;
    switch (k % 3) {
      case 0: x = lo * u(rng); break;
      case 1: x = lo * (1.0 - std::pow(10.0, -16.0 * u(rng))); break;
      default: x = -std::pow(10.0, -300.0 * u(rng)) * (-lo); break;
    }
    if (x == 0.0 || x < lo) continue;
    const double w = lambert_w_minus1(x);
    CAPTURE(x);
    CHECK(w <= -1.0);
    CHECK(residual(w, x) <= 1e-12);
  }
}

TEST_CASE("decreasing on the lower branch") {
  double last = -1.0;
  for (double x = -0.3678; x < -1e-6; x *= 0.9) {
    const double w = lambert_w_minus1(x);
    CHECK(w < last);
    last = w;
  }
}

TEST_CASE("rejects arguments off the branch") {
  CHECK_THROWS_AS(lambert_w_minus1(0.0), std::invalid_argument);
  CHECK_THROWS_AS(lambert_w_minus1(0.5), std::invalid_argument);
  CHECK_THROWS_AS(lambert_w_minus1(-0.37), std::invalid_argument);
  CHECK_THROWS_AS(lambert_w_minus1(std::nan("")), std::invalid_argument);
}

TEST_CASE("log-argument form") {
  for (double L : {-1.0, -1.0000001, -1.5, -3.0, -50.0, -745.0, -1e4, -1e8}) {
    const double w = lambert_w_minus1_from_log(L);
    CAPTURE(L);
    CHECK(w <= -1.0);
    // w e^w = -e^L  <=>  w + ln(-w) = L
    CHECK(std::fabs(w + std::log(-w) - L) <= 1e-12 * std::fabs(L) + 1e-9);
  }
  CHECK(lambert_w_minus1_from_log(std::log(0.1)) ==
        doctest::Approx(lambert_w_minus1(-0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(lambert_w_minus1_from_log(-0.5), std::invalid_argument);
}
