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

namespace tddnc {

// Raw link and packet constants, unchecked. Turned into a SystemParams by
// validation.
struct LinkConfig {
  std::int64_t M = 1;       // data packets per block
  std::int64_t n = 1;       // payload bits per data packet
  std::int64_t g = 1;       // bits per encoding coefficient, q = 2^g
  std::int64_t h = 0;       // header bits per coded packet
  std::int64_t n_ack = 1;   // ACK size in bits
  double R = 1.0;           // link rate, bits/s
  double T_rt = 0.0;        // round-trip time, s
  double Pe = 0.0;          // coded-packet erasure probability
  double Pe_ack = 0.0;      // ACK erasure probability
};

// Validated link/packet parameters. Immutable once constructed; the with_*
// helpers return revalidated copies.
class SystemParams {
 public:
  // Throws std::invalid_argument if any invariant is violated, including
  // Pe >= 1 or Pe_ack >= 1.
  explicit SystemParams(const LinkConfig& config);

  std::int64_t M() const { return config_.M; }
  std::int64_t n() const { return config_.n; }
  std::int64_t g() const { return config_.g; }
  std::int64_t h() const { return config_.h; }
  std::int64_t n_ack() const { return config_.n_ack; }
  double R() const { return config_.R; }
  double T_rt() const { return config_.T_rt; }
  double Pe() const { return config_.Pe; }
  double Pe_ack() const { return config_.Pe_ack; }

  // h + n + g*M.
  std::int64_t coded_packet_bits() const;
  // Field size as a real; 2^g overflows integers for the large-field cases.
  double field_size() const;

  const LinkConfig& config() const { return config_; }

  SystemParams with_erasures(double pe, double pe_ack) const;
  SystemParams with_payload_bits(std::int64_t n) const;
  SystemParams with_block_size(std::int64_t M) const;

 private:
  LinkConfig config_;
};

struct Timing {
  double T_p = 0.0;    // coded-packet transmission time
  double T_ack = 0.0;  // ACK transmission time
  double T_w = 0.0;    // idle time after a burst: T_rt + T_ack
};

Timing derive_timing(const SystemParams& sys);

// Timing for a burst of packets of an arbitrary size (the ARQ baselines
// carry no coefficient vector). T_ack and T_w are as for sys.
Timing derive_timing_for_packet(const SystemParams& sys,
                                std::int64_t packet_bits);

// i.i.d. bit errors on both directions of the link.
class BitChannel {
 public:
  explicit BitChannel(double pe_bit);
  double Pe_bit() const { return pe_bit_; }

 private:
  double pe_bit_;
};

struct ErasurePair {
  double Pe = 0.0;
  double Pe_ack = 0.0;
};

// 1 - (1 - Pe_bit)^bits, evaluated in the log domain.
double packet_erasure_probability(const BitChannel& bc, std::int64_t bits);

ErasurePair erasures_from_bit_channel(const BitChannel& bc,
                                      const SystemParams& sys);

// Copy of sys with Pe, Pe_ack replaced by the bit-channel mapping.
SystemParams apply_bit_channel(const BitChannel& bc, const SystemParams& sys);

}  // namespace tddnc
