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

#include "tddnc/markov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace tddnc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

namespace detail {

double binomial_success_pmf(std::int64_t trials, std::int64_t successes,
                            double pe) {
  if (successes < 0 || successes > trials) return 0.0;
  const std::int64_t failures = trials - successes;
  if (pe == 0.0) return failures == 0 ? 1.0 : 0.0;
  const double nt = static_cast<double>(trials);
  const double ns = static_cast<double>(successes);
  const double nf = static_cast<double>(failures);
  const double log_choose =
      std::lgamma(nt + 1.0) - std::lgamma(ns + 1.0) - std::lgamma(nf + 1.0);
  const double log_p = log_choose + ns * std::log1p(-pe) + nf * std::log(pe);
  return std::exp(log_p);
}

double one_minus_pow(double pe, std::int64_t trials) {
  if (pe == 0.0) return 1.0;
  return -std::expm1(static_cast<double>(trials) * std::log(pe));
}

}  // namespace detail

Policy::Policy(std::vector<std::int64_t> packets_per_state)
    : n_(std::move(packets_per_state)) {
  if (n_.empty()) throw std::invalid_argument("policy must cover M >= 1 states");
  for (std::int64_t v : n_) {
    if (v < 1) throw std::invalid_argument("policy entries must be >= 1");
  }
}

Policy Policy::minimal(std::int64_t M) {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  std::vector<std::int64_t> n(static_cast<std::size_t>(M));
  for (std::int64_t i = 1; i <= M; ++i) n[i - 1] = i;
  return Policy(std::move(n));
}

Policy Policy::fixed_window(std::int64_t M, std::int64_t omega) {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (omega < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<std::int64_t> n(static_cast<std::size_t>(M));
  for (std::int64_t i = 1; i <= M; ++i) n[i - 1] = std::min(i, omega);
  return Policy(std::move(n));
}

std::int64_t Policy::N(std::int64_t i) const {
  if (i < 1 || i > M()) throw std::out_of_range("policy state out of range");
  return n_[static_cast<std::size_t>(i - 1)];
}

double transition_prob(std::int64_t i, std::int64_t j, std::int64_t n_i,
                       double pe, double pe_ack) {
  if (i < 1 || j < 0 || j > i) {
    throw std::invalid_argument("transition requires 0 <= j <= i, i >= 1");
  }
  if (n_i < 1) throw std::invalid_argument("burst size must be >= 1");
  const double ack_ok = 1.0 - pe_ack;
  if (j == i) {
    return ack_ok * detail::binomial_success_pmf(n_i, 0, pe) + pe_ack;
  }
  if (j > 0) {
    return ack_ok * detail::binomial_success_pmf(n_i, i - j, pe);
  }
  // j == 0: any burst delivering at least i packets.
  double tail = 0.0;
  for (std::int64_t k = i; k <= n_i; ++k) {
    tail += detail::binomial_success_pmf(n_i, k, pe);
  }
  return ack_ok * tail;
}

double expected_extra_receptions(std::int64_t M, double q) {
  if (!(q >= 2.0)) throw std::invalid_argument("field size must be >= 2");
  if (M < 0) throw std::invalid_argument("M must be >= 0");
  const double log_inv_q = -std::log(q);
  double sum = 0.0;
  for (std::int64_t k = 1; k <= M; ++k) {
    // 1 / (1 - q^-k)
    sum += -1.0 / std::expm1(static_cast<double>(k) * log_inv_q);
  }
  return sum;
}

double completion_time_from_state(std::int64_t i, std::int64_t n_i,
                                  std::span<const double> lower,
                                  const SystemParams& sys,
                                  const Timing& timing) {
  if (i < 1 || static_cast<std::int64_t>(lower.size()) < i) {
    throw std::invalid_argument("lower profile must hold T_0..T_{i-1}");
  }
  if (n_i < 1) throw std::invalid_argument("burst size must be >= 1");
  const double pe = sys.Pe();
  const double leave = detail::one_minus_pow(pe, n_i);
  if (!(leave > 0.0)) return kInf;

  const double burst = static_cast<double>(n_i) * timing.T_p + timing.T_w;
  double t = burst / ((1.0 - sys.Pe_ack()) * leave);

  // Partial progress to j in [max(1, i - n_i), i - 1].
  double partial = 0.0;
  const std::int64_t k_max = std::min(n_i, i - 1);
  if (pe == 0.0) {
    if (n_i <= k_max) partial = lower[static_cast<std::size_t>(i - n_i)];
  } else if (k_max >= 1) {
    // log pmf(n_i, k), advanced by the ratio pmf(k+1)/pmf(k).
    const double nt = static_cast<double>(n_i);
    const double log_pe = std::log(pe);
    const double log_odds = std::log1p(-pe) - log_pe;
    double log_w = std::log(nt) + std::log1p(-pe) + (nt - 1.0) * log_pe;
    for (std::int64_t k = 1; k <= k_max; ++k) {
      const double w = std::exp(log_w);
      if (w != 0.0) partial += w * lower[static_cast<std::size_t>(i - k)];
      const double kd = static_cast<double>(k);
      log_w += std::log((nt - kd) / (kd + 1.0)) + log_odds;
    }
  }
  t += partial / leave;
  return std::isfinite(t) ? t : kInf;
}

CompletionProfile expected_completion(const Policy& policy,
                                      const SystemParams& sys,
                                      const Timing& timing) {
  const std::int64_t M = policy.M();
  CompletionProfile out;
  out.T.assign(static_cast<std::size_t>(M + 1), 0.0);
  for (std::int64_t i = 1; i <= M; ++i) {
    if (out.first_unreachable) {
      out.T[i] = kInf;
      continue;
    }
    const double t = completion_time_from_state(
        i, policy.N(i), std::span<const double>(out.T.data(), i), sys, timing);
    out.T[i] = t;
    if (!std::isfinite(t)) out.first_unreachable = i;
  }
  return out;
}

CompletionProfile fixed_window_completion(std::int64_t omega,
                                          const SystemParams& sys,
                                          const Timing& timing) {
  if (omega < 1) throw std::invalid_argument("window must be >= 1");
  const std::int64_t M = sys.M();
  const long double pe = sys.Pe();
  const long double ok = 1.0L - pe;

  CompletionProfile out;
  out.T.assign(static_cast<std::size_t>(M + 1), 0.0);
  for (std::int64_t i = 1; i <= M; ++i) {
    const std::int64_t w = std::min(i, omega);
    const long double leave = 1.0L - std::pow(pe, static_cast<long double>(w));
    long double t = (static_cast<long double>(w) * timing.T_p + timing.T_w) /
                    ((1.0L - sys.Pe_ack()) * leave);
    long double choose = 1.0L;  // C(w, j), built incrementally
    long double sum = 0.0L;
    for (std::int64_t j = 1; j <= w; ++j) {
      choose = choose * static_cast<long double>(w - j + 1) /
               static_cast<long double>(j);
      const long double prob =
          choose * std::pow(pe, static_cast<long double>(w - j)) *
          std::pow(ok, static_cast<long double>(j));
      sum += prob * out.T[static_cast<std::size_t>(i - j)];
    }
    t += sum / leave;
    const double td = static_cast<double>(t);
    if (!std::isfinite(td) || out.first_unreachable) {
      if (!out.first_unreachable) out.first_unreachable = i;
      out.T[i] = kInf;
    } else {
      out.T[i] = td;
    }
  }
  return out;
}

double full_duplex_completion(const SystemParams& sys, const Timing& timing) {
  return sys.T_rt() +
         static_cast<double>(sys.M()) * timing.T_p / (1.0 - sys.Pe()) +
         timing.T_ack / (1.0 - sys.Pe_ack());
}

double sw_mean_throughput(std::int64_t n_1, const SystemParams& sys,
                          const Timing& timing) {
  if (sys.M() != 1) {
    throw std::invalid_argument("mean throughput closed form needs M = 1");
  }
  const double p10 = transition_prob(1, 0, n_1, sys.Pe(), sys.Pe_ack());
  const double p11 = transition_prob(1, 1, n_1, sys.Pe(), sys.Pe_ack());
  if (!(p10 > 0.0)) {
    throw std::invalid_argument("P(1->0) must be positive");
  }
  // -P10 ln(P10) / P11, with ln(P10) = log1p(-P11); tends to 1 as P11 -> 0.
  const double factor = p11 == 0.0 ? 1.0 : p10 * -std::log1p(-p11) / p11;
  const double round = static_cast<double>(n_1) * timing.T_p + timing.T_w;
  return static_cast<double>(sys.n()) * factor / round;
}

}  // namespace tddnc
