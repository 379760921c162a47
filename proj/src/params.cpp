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

#include "tddnc/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tddnc {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid system parameters: " + what);
}

bool is_probability_below_one(double p) {
  return std::isfinite(p) && p >= 0.0 && p < 1.0;
}

}  // namespace

SystemParams::SystemParams(const LinkConfig& config) : config_(config) {
  require(config_.M >= 1, "M must be >= 1");
  require(config_.n >= 1, "n must be >= 1");
  require(config_.g >= 1, "g must be >= 1");
  require(config_.h >= 0, "h must be >= 0");
  require(config_.n_ack >= 1, "n_ack must be >= 1");
  require(std::isfinite(config_.R) && config_.R > 0.0, "R must be > 0");
  require(std::isfinite(config_.T_rt) && config_.T_rt >= 0.0,
          "T_rt must be >= 0");
  require(is_probability_below_one(config_.Pe), "Pe must lie in [0, 1)");
  require(is_probability_below_one(config_.Pe_ack),
          "Pe_ack must lie in [0, 1)");
}

std::int64_t SystemParams::coded_packet_bits() const {
  return config_.h + config_.n + config_.g * config_.M;
}

double SystemParams::field_size() const {
  return std::exp2(static_cast<double>(config_.g));
}

SystemParams SystemParams::with_erasures(double pe, double pe_ack) const {
  LinkConfig c = config_;
  c.Pe = pe;
  c.Pe_ack = pe_ack;
  return SystemParams(c);
}

SystemParams SystemParams::with_payload_bits(std::int64_t n) const {
  LinkConfig c = config_;
  c.n = n;
  return SystemParams(c);
}

SystemParams SystemParams::with_block_size(std::int64_t M) const {
  LinkConfig c = config_;
  c.M = M;
  return SystemParams(c);
}

Timing derive_timing(const SystemParams& sys) {
  return derive_timing_for_packet(sys, sys.coded_packet_bits());
}

Timing derive_timing_for_packet(const SystemParams& sys,
                                std::int64_t packet_bits) {
  if (packet_bits < 1) {
    throw std::invalid_argument("packet_bits must be >= 1");
  }
  Timing t;
  t.T_p = static_cast<double>(packet_bits) / sys.R();
  t.T_ack = static_cast<double>(sys.n_ack()) / sys.R();
  t.T_w = sys.T_rt() + t.T_ack;
  return t;
}

BitChannel::BitChannel(double pe_bit) : pe_bit_(pe_bit) {
  if (!is_probability_below_one(pe_bit)) {
    throw std::invalid_argument("Pe_bit must lie in [0, 1)");
  }
}

double packet_erasure_probability(const BitChannel& bc, std::int64_t bits) {
  if (bc.Pe_bit() == 0.0 || bits == 0) return 0.0;
  // -expm1 keeps precision for tiny erasure probabilities.
  return -std::expm1(static_cast<double>(bits) * std::log1p(-bc.Pe_bit()));
}

ErasurePair erasures_from_bit_channel(const BitChannel& bc,
                                      const SystemParams& sys) {
  return {packet_erasure_probability(bc, sys.coded_packet_bits()),
          packet_erasure_probability(bc, sys.n_ack())};
}

SystemParams apply_bit_channel(const BitChannel& bc, const SystemParams& sys) {
  const ErasurePair e = erasures_from_bit_channel(bc, sys);
  return sys.with_erasures(e.Pe, e.Pe_ack);
}

}  // namespace tddnc
