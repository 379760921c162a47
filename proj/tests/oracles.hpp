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

// Independent reference computations used only by the tests. Nothing here
// calls into the recursion or log-domain helpers it is meant to check.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tddnc::oracle {

// P(Binomial(n, 1 - pe) = k) by direct products in extended precision.
inline long double binomial_pmf(std::int64_t n, std::int64_t k, long double pe) {
  if (k < 0 || k > n) return 0.0L;
  long double choose = 1.0L;
  const std::int64_t kk = std::min(k, n - k);
  for (std::int64_t t = 1; t <= kk; ++t) {
    choose = choose * static_cast<long double>(n - kk + t) /
             static_cast<long double>(t);
  }
  return choose * std::pow(1.0L - pe, static_cast<long double>(k)) *
         std::pow(pe, static_cast<long double>(n - k));
}

// Full (M+1)x(M+1) transition matrix of the deficit chain with burst sizes
// n[i-1] in state i; row 0 is absorbing.
inline std::vector<std::vector<long double>> transition_matrix(
    const std::vector<std::int64_t>& n, long double pe, long double pe_ack) {
  const std::size_t M = n.size();
  std::vector<std::vector<long double>> P(M + 1,
                                          std::vector<long double>(M + 1, 0.0L));
  P[0][0] = 1.0L;
  for (std::size_t i = 1; i <= M; ++i) {
    const std::int64_t burst = n[i - 1];
    P[i][i] += pe_ack;
    for (std::int64_t k = 0; k <= burst; ++k) {
      const long double p = (1.0L - pe_ack) * binomial_pmf(burst, k, pe);
      const std::int64_t j = std::max<std::int64_t>(0, static_cast<std::int64_t>(i) - k);
      P[i][static_cast<std::size_t>(j)] += p;
    }
  }
  return P;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<long double> solve(std::vector<std::vector<long double>> A,
                                      std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
    }
    if (A[piv][c] == 0.0L) throw std::runtime_error("singular system");
    std::swap(A[piv], A[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = A[r][c] / A[c][c];
      if (f == 0.0L) continue;
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t c = n; c-- > 0;) {
    long double s = b[c];
    for (std::size_t k = c + 1; k < n; ++k) s -= A[c][k] * x[k];
    x[c] = s / A[c][c];
  }
  return x;
}

// Expected absorption times T[0..M] from (I - Q) t = tau, where Q is the
// transient block of the transition matrix and tau_i the duration of one
// burst-plus-wait in state i.
inline std::vector<double> absorption_times(const std::vector<std::int64_t>& n,
                                            double pe, double pe_ack, double t_p,
                                            double t_w) {
  const std::size_t M = n.size();
  const auto P = transition_matrix(n, pe, pe_ack);
  std::vector<std::vector<long double>> A(M, std::vector<long double>(M, 0.0L));
  std::vector<long double> tau(M);
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      A[i][j] = (i == j ? 1.0L : 0.0L) - P[i + 1][j + 1];
    }
    tau[i] = static_cast<long double>(n[i]) * t_p + t_w;
  }
  const auto t = solve(std::move(A), std::move(tau));
  std::vector<double> out(M + 1, 0.0);
  for (std::size_t i = 0; i < M; ++i) out[i + 1] = static_cast<double>(t[i]);
  return out;
}

// Exhaustive minimisation of T_M over n in [1, limit]^M.
struct JointOptimum {
  std::vector<std::int64_t> n;
  double T_M = std::numeric_limits<double>::infinity();
};

inline JointOptimum exhaustive_joint(std::size_t M, std::int64_t limit,
                                     double pe, double pe_ack, double t_p,
                                     double t_w) {
  JointOptimum best;
  std::vector<std::int64_t> n(M, 1);
  while (true) {
    const double t = absorption_times(n, pe, pe_ack, t_p, t_w)[M];
    if (t < best.T_M) {
      best.T_M = t;
      best.n = n;
    }
    std::size_t d = 0;
    while (d < M && n[d] == limit) n[d++] = 1;
    if (d == M) break;
    ++n[d];
  }
  return best;
}

// Integer minimiser of T_1(n) = (n t_p + t_w) / ((1 - pe_ack)(1 - pe^n))
// over [1, limit], ties to the smaller n.
inline std::int64_t exhaustive_n1(double pe, double pe_ack, double t_p,
                                  double t_w, std::int64_t limit) {
  std::int64_t best_n = 1;
  long double best = std::numeric_limits<long double>::infinity();
  for (std::int64_t n = 1; n <= limit; ++n) {
    const long double t =
        (static_cast<long double>(n) * t_p + t_w) /
        ((1.0L - pe_ack) * (1.0L - std::pow(static_cast<long double>(pe),
                                            static_cast<long double>(n))));
    if (t < best) {
      best = t;
      best_n = n;
    }
  }
  return best_n;
}

inline double relative_error(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

}  // namespace tddnc::oracle
