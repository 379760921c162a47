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

#include "tddnc/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tddnc/lambert_w.hpp"
#include "tddnc/parallel.hpp"

namespace tddnc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t search_cap(std::int64_t i, double pe) {
  const double cap = std::ceil(10.0 * static_cast<double>(i + 10) / (1.0 - pe));
  if (!(cap < 9.0e18)) return std::numeric_limits<std::int64_t>::max();
  return std::max<std::int64_t>(i, static_cast<std::int64_t>(cap));
}

bool better_n(const ThroughputPoint& a, const ThroughputPoint& b) {
  if (a.eta != b.eta) return a.eta > b.eta;
  return a.n < b.n;
}

bool better_m(const ThroughputPoint& a, const ThroughputPoint& b) {
  if (a.eta != b.eta) return a.eta > b.eta;
  return a.M < b.M;
}

bool better_mn(const ThroughputPoint& a, const ThroughputPoint& b) {
  if (a.eta != b.eta) return a.eta > b.eta;
  if (a.M != b.M) return a.M < b.M;
  return a.n < b.n;
}

template <typename Better>
ThroughputPoint reduce_points(const std::vector<ThroughputPoint>& points,
                              Better better) {
  ThroughputPoint best = points.front();
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (better(points[k], best)) best = points[k];
  }
  return best;
}

}  // namespace

OptimalPolicyResult optimal_policy(const SystemParams& sys,
                                   const Timing& timing) {
  const std::int64_t M = sys.M();
  const double ack_ok = 1.0 - sys.Pe_ack();
  std::vector<double> T(static_cast<std::size_t>(M + 1), 0.0);
  std::vector<std::int64_t> chosen(static_cast<std::size_t>(M));
  std::vector<std::int64_t> bounds(static_cast<std::size_t>(M));

  for (std::int64_t i = 1; i <= M; ++i) {
    const std::int64_t cap = search_cap(i, sys.Pe());
    const std::span<const double> lower(T.data(), static_cast<std::size_t>(i));
    double best = kInf;
    std::int64_t best_n = i;
    std::int64_t last = i;
    for (std::int64_t n = i; n <= cap; ++n) {
      // T_i(n) >= (n T_p + T_w) / (1 - Pe_ack), increasing in n.
      const double floor_n =
          (static_cast<double>(n) * timing.T_p + timing.T_w) / ack_ok;
      if (floor_n >= best) break;
      last = n;
      const double t = completion_time_from_state(i, n, lower, sys, timing);
      if (t < best) {
        best = t;
        best_n = n;
      }
    }
    T[static_cast<std::size_t>(i)] = best;
    chosen[static_cast<std::size_t>(i - 1)] = best_n;
    bounds[static_cast<std::size_t>(i - 1)] = last;
  }

  Policy policy(std::move(chosen));
  CompletionProfile profile = expected_completion(policy, sys, timing);
  return {std::move(policy), std::move(profile), std::move(bounds)};
}

double continuous_optimum_n1(const SystemParams& sys, const Timing& timing) {
  if (sys.M() != 1) {
    throw std::invalid_argument("closed-form optimum applies to M = 1");
  }
  const double pe = sys.Pe();
  if (!(pe > 0.0)) {
    throw std::invalid_argument("closed-form optimum undefined at Pe = 0");
  }
  const double ratio = timing.T_w / timing.T_p;
  const double log_pe = std::log(pe);
  // Argument -exp(-1 + ln(Pe) T_w / T_p), passed as its log.
  const double w = lambert_w_minus1_from_log(-1.0 + log_pe * ratio);
  return (1.0 + w) / log_pe - ratio;
}

double eta(const SystemParams& sys, const Timing& timing,
           const Policy& policy) {
  const CompletionProfile profile = expected_completion(policy, sys, timing);
  if (!profile.finite()) return 0.0;
  return static_cast<double>(sys.M()) * static_cast<double>(sys.n()) /
         profile.T_M();
}

ArqParams ArqParams::for_system(const SystemParams& sys, std::int64_t W) {
  if (W < 1) throw std::invalid_argument("ARQ window must be >= 1");
  return {W, sys.h() + sys.n()};
}

Timing derive_arq_timing(const SystemParams& sys, const ArqParams& arq) {
  if (arq.W < 1) throw std::invalid_argument("ARQ window must be >= 1");
  return derive_timing_for_packet(sys, arq.packet_bits);
}

double eta_gbn(const SystemParams& sys, const Timing& timing_arq,
               const ArqParams& arq) {
  if (arq.W < 1) throw std::invalid_argument("ARQ window must be >= 1");
  const double W = static_cast<double>(arq.W);
  const double n = static_cast<double>(sys.n());
  const double pe = sys.Pe();
  const double cycle = W * timing_arq.T_p + timing_arq.T_w;
  if (pe == 0.0) return W * n / cycle;
  // (1 - (1 - Pe)^W) / Pe without cancellation at small Pe.
  const double window_loss = -std::expm1(W * std::log1p(-pe)) / pe;
  return n * (1.0 - pe) * window_loss / cycle;
}

double eta_sr(const SystemParams& sys, const Timing& timing_arq,
              const ArqParams& arq) {
  if (arq.W < 1) throw std::invalid_argument("ARQ window must be >= 1");
  const double W = static_cast<double>(arq.W);
  return W * static_cast<double>(sys.n()) * (1.0 - sys.Pe()) /
         (W * timing_arq.T_p + timing_arq.T_w);
}

ThroughputPoint evaluate_throughput(const SystemParams& tmpl,
                                    const BitChannel& bc, std::int64_t n,
                                    std::int64_t M) {
  const SystemParams shaped = tmpl.with_payload_bits(n).with_block_size(M);
  const ErasurePair e = erasures_from_bit_channel(bc, shaped);
  ThroughputPoint point{n, M, 0.0, Policy::minimal(M)};
  if (!(e.Pe < 1.0) || !(e.Pe_ack < 1.0)) return point;

  const SystemParams sys = shaped.with_erasures(e.Pe, e.Pe_ack);
  const Timing timing = derive_timing(sys);
  OptimalPolicyResult opt = optimal_policy(sys, timing);
  if (opt.profile.finite()) {
    point.eta = static_cast<double>(M) * static_cast<double>(n) /
                opt.profile.T_M();
  }
  point.policy = std::move(opt.policy);
  return point;
}

ThroughputPoint optimize_packet_bits(const SystemParams& tmpl,
                                     const BitChannel& bc,
                                     std::span<const std::int64_t> n_range,
                                     unsigned threads) {
  if (n_range.empty()) throw std::invalid_argument("empty payload-size range");
  std::vector<ThroughputPoint> points(n_range.size());
  parallel_for(n_range.size(), threads, [&](std::size_t k) {
    points[k] = evaluate_throughput(tmpl, bc, n_range[k], tmpl.M());
  });
  return reduce_points(points, better_n);
}

ThroughputPoint optimize_block_size(const SystemParams& tmpl,
                                    const BitChannel& bc,
                                    std::span<const std::int64_t> M_range,
                                    unsigned threads) {
  if (M_range.empty()) throw std::invalid_argument("empty block-size range");
  std::vector<ThroughputPoint> points(M_range.size());
  parallel_for(M_range.size(), threads, [&](std::size_t k) {
    points[k] = evaluate_throughput(tmpl, bc, tmpl.n(), M_range[k]);
  });
  return reduce_points(points, better_m);
}

ThroughputPoint optimize_joint(const SystemParams& tmpl, const BitChannel& bc,
                               std::span<const std::int64_t> n_range,
                               std::span<const std::int64_t> M_range,
                               unsigned threads) {
  if (n_range.empty() || M_range.empty()) {
    throw std::invalid_argument("empty (M, n) grid");
  }
  const std::size_t cols = n_range.size();
  std::vector<ThroughputPoint> points(M_range.size() * cols);
  parallel_for(points.size(), threads, [&](std::size_t k) {
    points[k] = evaluate_throughput(tmpl, bc, n_range[k % cols],
                                    M_range[k / cols]);
  });
  return reduce_points(points, better_mn);
}

}  // namespace tddnc
