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
#include <stdexcept>
#include <string>
#include <vector>

#include "tddnc/params.hpp"
#include "tddnc/simulator.hpp"

namespace tddnc::cli {

inline constexpr int kSchemaVersion = 1;

// Malformed or inconsistent run specification (exit code 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed quantity came out infinite or NaN (exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { policy, sweep_pe, sweep_n, sweep_m, sweep_joint, compare,
                     simulate };

enum class OutputFormat { csv, json };

struct Scheme {
  enum class Kind { nc_optimal, fixed_window, full_duplex, gbn, sr,
                    stop_and_wait };
  Kind kind = Kind::nc_optimal;
  std::int64_t window = 0;  // omega or W; 0 where the scheme has none

  // "nc-optimal", "fixed-window:5", "gbn:10", ...
  std::string id() const;
  static Scheme parse(const std::string& id);
  bool operator==(const Scheme&) const = default;
};

struct SimulationSettings {
  SimMode mode = SimMode::chain;
  std::int64_t runs = 1000;
  int field_bits = 8;
  std::optional<std::uint32_t> polynomial;
  std::size_t payload_symbol_cap = 0;
};

struct RunSpec {
  int schema_version = kSchemaVersion;
  Command command = Command::policy;
  LinkConfig link;
  std::optional<double> pe_bit;  // when set, Pe and Pe_ack are derived
  std::vector<double> pe_grid;
  std::vector<std::int64_t> n_grid;
  std::vector<std::int64_t> m_grid;
  std::vector<Scheme> schemes;
  std::vector<std::string> metrics;
  std::optional<Scheme> reference;
  SimulationSettings simulation;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty: standard output
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

std::string command_name(Command c);
Command parse_command(const std::string& name);
std::string mode_name(SimMode m);

// Parses and validates a JSON config document. Throws ValidationError.
RunSpec parse_run_spec(const std::string& json_text);
RunSpec load_run_spec(const std::string& path);

// Checks cross-field constraints; parse_run_spec calls this.
void validate_run_spec(const RunSpec& spec);

}  // namespace tddnc::cli
