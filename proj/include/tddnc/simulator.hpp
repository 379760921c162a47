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

#include "tddnc/gf.hpp"
#include "tddnc/markov.hpp"
#include "tddnc/params.hpp"

namespace tddnc {

// chain:    a lost ACK discards the round's progress (the analytic chain).
// physical: the receiver keeps its progress; the sender acts on its last
//           ACKed deficit until a new ACK gets through.
// rlnc:     physical, with a real GF(2^g) decoder deciding which packets
//           are innovative.
enum class SimMode { chain, physical, rlnc };

struct SimConfig {
  SimMode mode = SimMode::chain;
  std::int64_t runs = 1;
  std::uint64_t master_seed = 0;
  std::optional<FieldSpec> field;  // required for rlnc
  // rlnc payload length cap in symbols; 0 keeps all ceil(n / g).
  std::size_t payload_symbol_cap = 0;
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Random streams drawn per run.
enum class SimStream : std::uint64_t {
  packet_erasure = 1,
  ack_erasure = 2,
  coefficients = 3,
  payload = 4,
};

struct RunRecord {
  double completion = 0.0;          // seconds until the final ACK arrives
  std::int64_t packets_sent = 0;
  std::int64_t stops = 0;           // listen phases
  std::int64_t receptions_to_full_rank = 0;  // delivered packets until decodable
  bool decoded_ok = true;           // rlnc: decode reproduced the source block
};

struct HistogramBin {
  double lower = 0.0;  // bucket covers [lower, lower + width)
  std::int64_t count = 0;
};

struct SimResult {
  double mean_completion = 0.0;
  double std_error = 0.0;  // sample std / sqrt(runs); 0 for a single run
  bool single_run = false;
  double bucket_width = 0.0;
  std::vector<HistogramBin> histogram;  // ascending, empty buckets omitted
  double mean_packets_sent = 0.0;
  double mean_stops = 0.0;
  double mean_receptions = 0.0;
  double receptions_std_error = 0.0;
  std::int64_t decode_failures = 0;
  std::int64_t runs = 0;
};

// One run; randomness comes only from (master_seed, run_index).
RunRecord simulate_run(const Policy& policy, const SystemParams& sys,
                       const Timing& timing, const SimConfig& cfg,
                       std::uint64_t run_index,
                       const GaloisField* field = nullptr);

// Throws std::invalid_argument for runs < 1, a policy whose size differs
// from M, or rlnc mode without a field. The result is bit-identical for
// any thread count.
SimResult simulate(const Policy& policy, const SystemParams& sys,
                   const Timing& timing, const SimConfig& cfg);

// Statistics over runs in order; bucket_width <= 0 puts every run in one
// bucket. Throws std::invalid_argument on an empty input.
SimResult summarize(std::span<const RunRecord> records, double bucket_width);

}  // namespace tddnc
