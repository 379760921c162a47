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
#include <string>
#include <vector>

#include "tddnc/cli/config.hpp"
#include "tddnc/params.hpp"

namespace tddnc::cli {

struct SimulationEcho {
  SimMode mode = SimMode::chain;
  std::int64_t runs = 0;
  std::uint64_t seed = 0;
  int field_bits = 0;           // rlnc only
  std::uint32_t polynomial = 0; // rlnc only
  std::size_t payload_symbol_cap = 0;
};

// One result value with enough context to recompute it on its own.
struct SweepRow {
  std::string scheme;
  std::string metric;
  double value = 0.0;
  std::optional<double> ratio;  // value / reference scheme at the same point
  std::string swept;            // "Pe", "n", "M", "M;n" or empty
  LinkConfig link;              // effective values, Pe and Pe_ack included
  std::optional<double> pe_bit;
  std::optional<SimulationEcho> simulation;
};

struct PolicyRow {
  std::int64_t state = 0;
  std::int64_t N = 0;
  double T_seconds = 0.0;
  std::int64_t search_bound = 0;
};

struct Report {
  Command command = Command::policy;
  std::vector<SweepRow> rows;
  std::vector<PolicyRow> policy;  // policy command only
  LinkConfig link;                // policy command parameter echo
  std::optional<double> pe_bit;
};

// Scientific notation, 9 significant digits.
std::string format_scientific(double v);
// Shortest text that parses back to exactly v.
std::string format_exact(double v);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

// The CSV column order for sweep rows.
const std::vector<std::string>& sweep_csv_columns();

// Single-scheme spec that recomputes a row's value from its echo.
RunSpec row_to_spec(const SweepRow& row);

}  // namespace tddnc::cli
