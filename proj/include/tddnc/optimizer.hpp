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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tddnc/markov.hpp"
#include "tddnc/params.hpp"

namespace tddnc {

struct OptimalPolicyResult {
  Policy policy;
  CompletionProfile profile;
  // Largest burst size examined for each state i = 1..M.
  std::vector<std::int64_t> search_bounds_used;
};

// Delay-optimal burst sizes, found state by state: N_1 minimises T_1, then
// N_2 minimises T_2 given T_1, and so on. For each state the search runs
// over N = i, i+1, ... and stops once (N T_p + T_w) / (1 - Pe_ack), a lower
// bound on T_i(N) that grows with N, exceeds the best T_i seen so far; a
// hard cap of ceil(10 (i + 10) / (1 - Pe)) bounds pathological inputs. Ties
// go to the smaller N.
OptimalPolicyResult optimal_policy(const SystemParams& sys,
                                   const Timing& timing);

// Real-valued minimiser of T_1 for M = 1 via the W_{-1} closed form.
// Throws std::invalid_argument for Pe == 0 (the discrete optimum is 1).
double continuous_optimum_n1(const SystemParams& sys, const Timing& timing);

// M n / T_M. Returns 0 if the policy never completes.
double eta(const SystemParams& sys, const Timing& timing,
           const Policy& policy);

struct ArqParams {
  std::int64_t W = 1;            // window size
  std::int64_t packet_bits = 1;  // header + payload, no coefficients

  // W-packet window with packets of h + n bits.
  static ArqParams for_system(const SystemParams& sys, std::int64_t W);
};

// Timing for ARQ data packets of arq.packet_bits.
Timing derive_arq_timing(const SystemParams& sys, const ArqParams& arq);

// Go-Back-N and Selective Repeat half-duplex throughputs.
double eta_gbn(const SystemParams& sys, const Timing& timing_arq,
               const ArqParams& arq);
double eta_sr(const SystemParams& sys, const Timing& timing_arq,
              const ArqParams& arq);

struct ThroughputPoint {
  std::int64_t n = 0;
  std::int64_t M = 0;
  double eta = 0.0;
  Policy policy = Policy::minimal(1);
};

// Evaluates one (n, M) cell: Pe and Pe_ack from the bit channel, optimal
// policy, then eta. Cells whose erasure probability rounds to 1 report
// eta = 0.
ThroughputPoint evaluate_throughput(const SystemParams& tmpl,
                                    const BitChannel& bc, std::int64_t n,
                                    std::int64_t M);

// Grid maximisers. Candidates are evaluated independently (on up to
// `threads` workers, 0 = hardware concurrency) and reduced in grid order;
// ties go to the smaller n, the smaller M, and (M, n) lexicographically for
// the joint search. Empty ranges throw std::invalid_argument.
ThroughputPoint optimize_packet_bits(const SystemParams& tmpl,
                                     const BitChannel& bc,
                                     std::span<const std::int64_t> n_range,
                                     unsigned threads = 1);
ThroughputPoint optimize_block_size(const SystemParams& tmpl,
                                    const BitChannel& bc,
                                    std::span<const std::int64_t> M_range,
                                    unsigned threads = 1);
ThroughputPoint optimize_joint(const SystemParams& tmpl, const BitChannel& bc,
                               std::span<const std::int64_t> n_range,
                               std::span<const std::int64_t> M_range,
                               unsigned threads = 1);

}  // namespace tddnc
