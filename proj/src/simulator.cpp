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

#include "tddnc/simulator.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "tddnc/parallel.hpp"
#include "tddnc/rlnc.hpp"
#include "tddnc/rng.hpp"

namespace tddnc {
namespace {

StreamRng stream(const SimConfig& cfg, std::uint64_t run, SimStream s) {
  return StreamRng(cfg.master_seed, run, static_cast<std::uint64_t>(s));
}

double round_time(std::int64_t packets, const Timing& timing) {
  return static_cast<double>(packets) * timing.T_p + timing.T_w;
}

RunRecord run_chain(const Policy& policy, const SystemParams& sys,
                    const Timing& timing, StreamRng& pkt, StreamRng& ack) {
  RunRecord rec;
  std::int64_t state = sys.M();
  while (true) {
    const std::int64_t burst = policy.N(state);
    std::int64_t delivered = 0;
    for (std::int64_t k = 0; k < burst; ++k) {
      if (!pkt.bernoulli(sys.Pe())) ++delivered;
    }
    rec.completion += round_time(burst, timing);
    rec.packets_sent += burst;
    ++rec.stops;
    if (ack.bernoulli(sys.Pe_ack())) continue;
    state = std::max<std::int64_t>(0, state - delivered);
    if (state == 0) break;
  }
  // The chain tracks credited dofs only; exactly M are credited.
  rec.receptions_to_full_rank = sys.M();
  return rec;
}

RunRecord run_physical(const Policy& policy, const SystemParams& sys,
                       const Timing& timing, StreamRng& pkt, StreamRng& ack) {
  RunRecord rec;
  std::int64_t deficit = sys.M();
  std::int64_t belief = sys.M();
  while (true) {
    const std::int64_t burst = policy.N(belief);
    for (std::int64_t k = 0; k < burst; ++k) {
      // Packets beyond the M-th dof are discarded by the receiver.
      if (!pkt.bernoulli(sys.Pe()) && deficit > 0) {
        --deficit;
        ++rec.receptions_to_full_rank;
      }
    }
    rec.completion += round_time(burst, timing);
    rec.packets_sent += burst;
    ++rec.stops;
    if (ack.bernoulli(sys.Pe_ack())) continue;
    belief = deficit;
    if (belief == 0) break;
  }
  return rec;
}

RunRecord run_rlnc(const Policy& policy, const SystemParams& sys,
                   const Timing& timing, const SimConfig& cfg,
                   std::uint64_t run_index, const GaloisField& field,
                   StreamRng& pkt, StreamRng& ack) {
  const std::size_t M = static_cast<std::size_t>(sys.M());
  const std::size_t width = static_cast<std::size_t>(field.bits());
  std::size_t symbols = (static_cast<std::size_t>(sys.n()) + width - 1) / width;
  if (cfg.payload_symbol_cap > 0) {
    symbols = std::min(symbols, cfg.payload_symbol_cap);
  }

  StreamRng payload_rng = stream(cfg, run_index, SimStream::payload);
  SourceBlock block(M, std::vector<Symbol>(symbols));
  for (auto& packet : block) {
    for (Symbol& s : packet) s = static_cast<Symbol>(payload_rng() & field.mask());
  }

  StreamRng coeff_rng = stream(cfg, run_index, SimStream::coefficients);
  Decoder decoder(field, M, symbols);
  RunRecord rec;
  std::int64_t belief = sys.M();
  while (true) {
    const std::int64_t burst = policy.N(belief);
    for (std::int64_t k = 0; k < burst; ++k) {
      if (pkt.bernoulli(sys.Pe()) || decoder.decodable()) continue;
      ++rec.receptions_to_full_rank;
      decoder.absorb(encode(block, field, coeff_rng));
    }
    rec.completion += round_time(burst, timing);
    rec.packets_sent += burst;
    ++rec.stops;
    if (ack.bernoulli(sys.Pe_ack())) continue;
    belief = static_cast<std::int64_t>(M - decoder.rank());
    if (belief == 0) break;
  }
  rec.decoded_ok = decoder.decode() == block;
  return rec;
}

void validate(const Policy& policy, const SystemParams& sys,
              const SimConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("simulation needs runs >= 1");
  if (policy.M() != sys.M()) {
    throw std::invalid_argument("policy size must equal M");
  }
  if (cfg.mode == SimMode::rlnc && !cfg.field) {
    throw std::invalid_argument("rlnc mode requires a field");
  }
}

}  // namespace

RunRecord simulate_run(const Policy& policy, const SystemParams& sys,
                       const Timing& timing, const SimConfig& cfg,
                       std::uint64_t run_index, const GaloisField* field) {
  validate(policy, sys, cfg);
  StreamRng pkt = stream(cfg, run_index, SimStream::packet_erasure);
  StreamRng ack = stream(cfg, run_index, SimStream::ack_erasure);
  switch (cfg.mode) {
    case SimMode::chain:
      return run_chain(policy, sys, timing, pkt, ack);
    case SimMode::physical:
      return run_physical(policy, sys, timing, pkt, ack);
    case SimMode::rlnc: {
      if (field != nullptr) {
        return run_rlnc(policy, sys, timing, cfg, run_index, *field, pkt, ack);
      }
      const GaloisField own(*cfg.field);
      return run_rlnc(policy, sys, timing, cfg, run_index, own, pkt, ack);
    }
  }
  throw std::invalid_argument("unknown simulation mode");
}

SimResult simulate(const Policy& policy, const SystemParams& sys,
                   const Timing& timing, const SimConfig& cfg) {
  validate(policy, sys, cfg);
  std::optional<GaloisField> field;
  if (cfg.mode == SimMode::rlnc) field.emplace(*cfg.field);
  const GaloisField* fp = field ? &*field : nullptr;

  std::vector<RunRecord> records(static_cast<std::size_t>(cfg.runs));
  parallel_for(records.size(), cfg.threads, [&](std::size_t r) {
    records[r] = simulate_run(policy, sys, timing, cfg, r, fp);
  });
  return summarize(records, timing.T_p);
}

SimResult summarize(std::span<const RunRecord> records, double bucket_width) {
  if (records.empty()) throw std::invalid_argument("no runs to summarize");
  const double count = static_cast<double>(records.size());

  // Shifted sums: identical runs give an exact mean and zero spread.
  const double shift = records.front().completion;
  const double shift_rx =
      static_cast<double>(records.front().receptions_to_full_rank);
  double sum = 0.0, sum_sq = 0.0, sum_rx = 0.0, sum_rx_sq = 0.0;
  double packets = 0.0, stops = 0.0;
  SimResult out;
  std::map<std::int64_t, std::int64_t> buckets;
  for (const RunRecord& r : records) {
    const double d = r.completion - shift;
    sum += d;
    sum_sq += d * d;
    const double drx = static_cast<double>(r.receptions_to_full_rank) - shift_rx;
    sum_rx += drx;
    sum_rx_sq += drx * drx;
    packets += static_cast<double>(r.packets_sent);
    stops += static_cast<double>(r.stops);
    if (!r.decoded_ok) ++out.decode_failures;
    const std::int64_t b =
        bucket_width > 0.0
            ? static_cast<std::int64_t>(std::floor(r.completion / bucket_width))
            : 0;
    ++buckets[b];
  }

  auto std_error = [count](double s, double s2) {
    if (count < 2.0) return 0.0;
    const double var = std::max(0.0, (s2 - s * s / count) / (count - 1.0));
    return std::sqrt(var / count);
  };

  out.runs = static_cast<std::int64_t>(records.size());
  out.single_run = records.size() == 1;
  out.mean_completion = shift + sum / count;
  out.std_error = std_error(sum, sum_sq);
  out.mean_receptions = shift_rx + sum_rx / count;
  out.receptions_std_error = std_error(sum_rx, sum_rx_sq);
  out.mean_packets_sent = packets / count;
  out.mean_stops = stops / count;
  out.bucket_width = bucket_width;
  out.histogram.reserve(buckets.size());
  for (const auto& [b, c] : buckets) {
    out.histogram.push_back(
        {bucket_width > 0.0 ? static_cast<double>(b) * bucket_width : 0.0, c});
  }
  return out;
}

}  // namespace tddnc
