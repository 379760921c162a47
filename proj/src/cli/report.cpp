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

#include "tddnc/cli/report.hpp"

#include <cstdlib>

#include <fmt/format.h>

#include "json.hpp"
#include "tddnc/gf.hpp"

namespace tddnc::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

// Values are emitted in JSON exactly as rounded for CSV.
double rounded(double v) {
  return std::strtod(format_scientific(v).c_str(), nullptr);
}

std::string csv_row(const SweepRow& r) {
  const LinkConfig& L = r.link;
  std::string s = fmt::format(
      "{},{},{},{},{},{},{},{},{},{},{},{},{},{},", r.scheme, r.metric,
      format_scientific(r.value), r.ratio ? format_scientific(*r.ratio) : "",
      r.swept, L.M, L.n, L.g, L.h, L.n_ack, format_scientific(L.R),
      format_scientific(L.T_rt), format_exact(L.Pe), format_exact(L.Pe_ack));
  s += r.pe_bit ? format_exact(*r.pe_bit) : "";
  if (r.simulation) {
    const SimulationEcho& e = *r.simulation;
    const bool rlnc = e.mode == SimMode::rlnc;
    s += fmt::format(",{},{},{},{},{},{}\n", mode_name(e.mode), e.runs, e.seed,
                     rlnc ? std::to_string(e.field_bits) : "",
                     rlnc ? std::to_string(e.polynomial) : "",
                     rlnc ? std::to_string(e.payload_symbol_cap) : "");
  } else {
    s += ",,,,,,\n";
  }
  return s;
}

ordered_json link_json(const LinkConfig& L, const std::optional<double>& pe_bit) {
  ordered_json j;
  j["M"] = L.M;
  j["n"] = L.n;
  j["g"] = L.g;
  j["h"] = L.h;
  j["n_ack"] = L.n_ack;
  j["R"] = rounded(L.R);
  j["T_rt"] = rounded(L.T_rt);
  j["Pe"] = L.Pe;
  j["Pe_ack"] = L.Pe_ack;
  if (pe_bit) j["Pe_bit"] = *pe_bit;
  return j;
}

}  // namespace

std::string format_scientific(double v) { return fmt::format("{:.8e}", v); }

std::string format_exact(double v) { return fmt::format("{}", v); }

const std::vector<std::string>& sweep_csv_columns() {
  static const std::vector<std::string> columns = {
      "scheme", "metric", "value",  "ratio",  "swept",   "M",
      "n",      "g",      "h",      "n_ack",  "R",       "T_rt",
      "Pe",     "Pe_ack", "Pe_bit", "sim_mode", "runs",  "seed",
      "field_bits", "polynomial", "payload_symbol_cap"};
  return columns;
}

std::string to_csv(const Report& report) {
  std::string out;
  if (report.command == Command::policy) {
    out = "state,N,T_seconds,search_bound\n";
    for (const PolicyRow& p : report.policy) {
      out += fmt::format("{},{},{},{}\n", p.state, p.N,
                         format_scientific(p.T_seconds), p.search_bound);
    }
    return out;
  }
  const auto& cols = sweep_csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out += cols[k];
    out += k + 1 < cols.size() ? ',' : '\n';
  }
  for (const SweepRow& r : report.rows) out += csv_row(r);
  return out;
}

std::string to_json(const Report& report) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command_name(report.command);
  if (report.command == Command::policy) {
    doc["params"] = link_json(report.link, report.pe_bit);
    ordered_json states = ordered_json::array();
    for (const PolicyRow& p : report.policy) {
      ordered_json s;
      s["state"] = p.state;
      s["N"] = p.N;
      s["T_seconds"] = rounded(p.T_seconds);
      s["search_bound"] = p.search_bound;
      states.push_back(std::move(s));
    }
    doc["states"] = std::move(states);
    return doc.dump(2) + "\n";
  }
  ordered_json rows = ordered_json::array();
  for (const SweepRow& r : report.rows) {
    ordered_json j;
    j["scheme"] = r.scheme;
    j["metric"] = r.metric;
    j["value"] = rounded(r.value);
    j["ratio"] = r.ratio ? ordered_json(rounded(*r.ratio)) : ordered_json();
    j["swept"] = r.swept;
    j["params"] = link_json(r.link, r.pe_bit);
    if (r.simulation) {
      ordered_json s;
      s["mode"] = mode_name(r.simulation->mode);
      s["runs"] = r.simulation->runs;
      s["seed"] = r.simulation->seed;
      if (r.simulation->mode == SimMode::rlnc) {
        s["field_bits"] = r.simulation->field_bits;
        s["polynomial"] = r.simulation->polynomial;
        s["payload_symbol_cap"] = r.simulation->payload_symbol_cap;
      }
      j["simulation"] = std::move(s);
    }
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

RunSpec row_to_spec(const SweepRow& row) {
  RunSpec spec;
  spec.link = row.link;
  spec.pe_bit = row.pe_bit;
  spec.schemes = {Scheme::parse(row.scheme)};
  spec.metrics = {row.metric == "eta_max_bps" ? "eta_bps" : row.metric};
  if (row.simulation) {
    spec.command = Command::simulate;
    spec.seed = row.simulation->seed;
    spec.simulation.mode = row.simulation->mode;
    spec.simulation.runs = row.simulation->runs;
    if (row.simulation->mode == SimMode::rlnc) {
      spec.simulation.field_bits = row.simulation->field_bits;
      spec.simulation.polynomial = row.simulation->polynomial;
      spec.simulation.payload_symbol_cap = row.simulation->payload_symbol_cap;
    }
  } else {
    spec.command = Command::compare;
  }
  validate_run_spec(spec);
  return spec;
}

}  // namespace tddnc::cli
