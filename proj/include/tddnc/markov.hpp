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
#include <optional>
#include <span>
#include <vector>

#include "tddnc/params.hpp"

namespace tddnc {

// Packets per burst, indexed by the number of dofs the transmitter believes
// are still missing: N(i) for i = 1..M.
class Policy {
 public:
  // Throws std::invalid_argument on an empty vector or any entry < 1.
  explicit Policy(std::vector<std::int64_t> packets_per_state);

  // N_i = i.
  static Policy minimal(std::int64_t M);
  // N_i = min(i, omega).
  static Policy fixed_window(std::int64_t M, std::int64_t omega);

  std::int64_t M() const { return static_cast<std::int64_t>(n_.size()); }
  // 1-based.
  std::int64_t N(std::int64_t i) const;
  const std::vector<std::int64_t>& packets() const { return n_; }

  bool operator==(const Policy&) const = default;

 private:
  std::vector<std::int64_t> n_;
};

// Expected time to absorption T[i] from each state i = 0..M.
struct CompletionProfile {
  std::vector<double> T;
  // Lowest state whose completion time is not finite; every state above it
  // is unreachable-to-absorption as well and carries +inf in T.
  std::optional<std::int64_t> first_unreachable;

  bool finite() const { return !first_unreachable.has_value(); }
  double T_M() const { return T.back(); }
};

// One-step probability of moving from deficit i to deficit j after a burst
// of n_i packets and its ACK. j = 0 collects every outcome with at least i
// successes. Throws std::invalid_argument unless 0 <= j <= i, i >= 1 and
// n_i >= 1.
double transition_prob(std::int64_t i, std::int64_t j, std::int64_t n_i,
                       double pe, double pe_ack);

// Expected successful receptions before M independent combinations arrive
// with coefficients drawn uniformly from a field of size q.
double expected_extra_receptions(std::int64_t M, double q);

// T_i for a single state given T_1..T_{i-1} in `lower` (lower[j] = T_j,
// lower[0] = 0). Returns +inf when absorption is not reachable.
double completion_time_from_state(std::int64_t i, std::int64_t n_i,
                                  std::span<const double> lower,
                                  const SystemParams& sys,
                                  const Timing& timing);

CompletionProfile expected_completion(const Policy& policy,
                                      const SystemParams& sys,
                                      const Timing& timing);

// Scheme with at most omega packets per burst, evaluated by its own
// recursion over T_{i-j}.
CompletionProfile fixed_window_completion(std::int64_t omega,
                                          const SystemParams& sys,
                                          const Timing& timing);

// Sender streams until the ACK arrives.
double full_duplex_completion(const SystemParams& sys, const Timing& timing);

// Mean of M*n/T for M = 1 (not M*n/E[T]); sys.M() must be 1. Throws
// std::invalid_argument if P(1->0) is zero.
double sw_mean_throughput(std::int64_t n_1, const SystemParams& sys,
                          const Timing& timing);

namespace detail {

// P(Binomial(trials, 1 - pe) = successes), computed in the log domain.
double binomial_success_pmf(std::int64_t trials, std::int64_t successes,
                            double pe);

// 1 - pe^trials without cancellation.
double one_minus_pow(double pe, std::int64_t trials);

}  // namespace detail
}  // namespace tddnc
