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

#include "tddnc/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tddnc/gf.hpp"

namespace tddnc::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

const json& require_key(const json& obj, const std::string& key,
                        const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing '" + key + "' in " + where);
  return *it;
}

std::int64_t as_int(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  fail(what + " must be an integer");
}

double as_real(const json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(what + " must be finite");
  return d;
}

std::vector<double> parse_real_grid(const json& v, const std::string& what) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(as_real(e, what));
  } else if (v.is_object()) {
    reject_unknown_keys(v, {"linspace"}, what);
    const json& ls = require_key(v, "linspace", what);
    if (!ls.is_array() || ls.size() != 3) {
      fail(what + ".linspace must be [start, stop, count]");
    }
    const double a = as_real(ls[0], what), b = as_real(ls[1], what);
    const std::int64_t count = as_int(ls[2], what);
    if (count < 1) fail(what + ".linspace count must be >= 1");
    for (std::int64_t k = 0; k < count; ++k) {
      out.push_back(count == 1 ? a
                               : a + (b - a) * static_cast<double>(k) /
                                         static_cast<double>(count - 1));
    }
  } else {
    fail(what + " must be an array or a linspace object");
  }
  if (out.empty()) fail(what + " must not be empty");
  return out;
}

std::vector<std::int64_t> parse_int_grid(const json& v,
                                         const std::string& what) {
  std::vector<std::int64_t> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(as_int(e, what));
  } else if (v.is_object()) {
    reject_unknown_keys(v, {"range", "logspace"}, what);
    if (v.size() != 1) fail(what + " must hold exactly one of range/logspace");
    if (v.contains("range")) {
      const json& r = v["range"];
      if (!r.is_array() || r.size() != 3) {
        fail(what + ".range must be [start, stop, step]");
      }
      const std::int64_t a = as_int(r[0], what), b = as_int(r[1], what),
                         step = as_int(r[2], what);
      if (step < 1) fail(what + ".range step must be >= 1");
      if (b < a) fail(what + ".range stop must be >= start");
      if ((b - a) / step > 1000000) fail(what + ".range is too large");
      for (std::int64_t x = a; x <= b; x += step) out.push_back(x);
    } else {
      const json& r = v["logspace"];
      if (!r.is_array() || r.size() != 3) {
        fail(what + ".logspace must be [start, stop, count]");
      }
      const double a = as_real(r[0], what), b = as_real(r[1], what);
      const std::int64_t count = as_int(r[2], what);
      if (!(a >= 1.0) || !(b >= a)) fail(what + ".logspace needs 1 <= start <= stop");
      if (count < 1 || count > 1000000) fail(what + ".logspace count out of range");
      for (std::int64_t k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0
                                    : static_cast<double>(k) /
                                          static_cast<double>(count - 1);
        const auto x = static_cast<std::int64_t>(std::llround(a * std::pow(b / a, t)));
        if (out.empty() || out.back() != x) out.push_back(x);
      }
    }
  } else {
    fail(what + " must be an array or a range/logspace object");
  }
  if (out.empty()) fail(what + " must not be empty");
  for (std::int64_t x : out) {
    if (x < 1) fail(what + " entries must be >= 1");
  }
  return out;
}

SimMode parse_mode(const std::string& s) {
  if (s == "chain") return SimMode::chain;
  if (s == "physical") return SimMode::physical;
  if (s == "rlnc") return SimMode::rlnc;
  fail("unknown simulation mode '" + s + "'");
}

bool is_sweep_metric(const std::string& m) {
  return m == "T_M_seconds" || m == "eta_bps";
}

}  // namespace

std::string Scheme::id() const {
  switch (kind) {
    case Kind::nc_optimal: return "nc-optimal";
    case Kind::fixed_window: return "fixed-window:" + std::to_string(window);
    case Kind::full_duplex: return "full-duplex";
    case Kind::gbn: return "gbn:" + std::to_string(window);
    case Kind::sr: return "sr:" + std::to_string(window);
    case Kind::stop_and_wait: return "stop-and-wait";
  }
  return "?";
}

Scheme Scheme::parse(const std::string& id) {
  auto windowed = [&](const std::string& prefix, Kind kind) -> std::optional<Scheme> {
    if (id.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string digits = id.substr(prefix.size());
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      fail("scheme '" + id + "' needs a positive integer window");
    }
    const std::int64_t w = std::stoll(digits);
    if (w < 1) fail("scheme '" + id + "' needs a window >= 1");
    return Scheme{kind, w};
  };
  if (id == "nc-optimal") return {Kind::nc_optimal, 0};
  if (id == "full-duplex") return {Kind::full_duplex, 0};
  if (id == "stop-and-wait") return {Kind::stop_and_wait, 0};
  if (auto s = windowed("fixed-window:", Kind::fixed_window)) return *s;
  if (auto s = windowed("gbn:", Kind::gbn)) return *s;
  if (auto s = windowed("sr:", Kind::sr)) return *s;
  fail("unknown scheme '" + id + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::policy: return "policy";
    case Command::sweep_pe: return "sweep-pe";
    case Command::sweep_n: return "sweep-n";
    case Command::sweep_m: return "sweep-m";
    case Command::sweep_joint: return "sweep-joint";
    case Command::compare: return "compare";
    case Command::simulate: return "simulate";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::policy, Command::sweep_pe, Command::sweep_n,
                    Command::sweep_m, Command::sweep_joint, Command::compare,
                    Command::simulate}) {
    if (command_name(c) == name) return c;
  }
  fail("unknown command '" + name + "'");
}

std::string mode_name(SimMode m) {
  switch (m) {
    case SimMode::chain: return "chain";
    case SimMode::physical: return "physical";
    case SimMode::rlnc: return "rlnc";
  }
  return "?";
}

RunSpec parse_run_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config must be a JSON object");
  reject_unknown_keys(doc,
                      {"schema_version", "command", "params", "grid", "schemes",
                       "metric", "metrics", "reference_scheme", "simulation",
                       "format", "out", "seed", "threads"},
                      "config");

  RunSpec spec;
  spec.schema_version =
      static_cast<int>(as_int(require_key(doc, "schema_version", "config"),
                              "schema_version"));
  if (spec.schema_version != kSchemaVersion) {
    fail("unsupported schema_version " + std::to_string(spec.schema_version));
  }
  const json& cmd = require_key(doc, "command", "config");
  if (!cmd.is_string()) fail("command must be a string");
  spec.command = parse_command(cmd.get<std::string>());

  const json& p = require_key(doc, "params", "config");
  if (!p.is_object()) fail("params must be an object");
  reject_unknown_keys(p, {"M", "n", "g", "h", "n_ack", "R", "T_rt", "Pe",
                          "Pe_ack", "Pe_bit"},
                      "params");
  LinkConfig& L = spec.link;
  L.M = as_int(require_key(p, "M", "params"), "params.M");
  L.n = as_int(require_key(p, "n", "params"), "params.n");
  L.g = as_int(require_key(p, "g", "params"), "params.g");
  L.h = as_int(require_key(p, "h", "params"), "params.h");
  L.n_ack = as_int(require_key(p, "n_ack", "params"), "params.n_ack");
  L.R = as_real(require_key(p, "R", "params"), "params.R");
  L.T_rt = as_real(require_key(p, "T_rt", "params"), "params.T_rt");
  if (p.contains("Pe")) L.Pe = as_real(p["Pe"], "params.Pe");
  if (p.contains("Pe_ack")) L.Pe_ack = as_real(p["Pe_ack"], "params.Pe_ack");
  if (p.contains("Pe_bit")) {
    if (p.contains("Pe") || p.contains("Pe_ack")) {
      fail("params.Pe_bit cannot be combined with Pe or Pe_ack");
    }
    spec.pe_bit = as_real(p["Pe_bit"], "params.Pe_bit");
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) fail("grid must be an object");
    reject_unknown_keys(g, {"Pe", "n", "M"}, "grid");
    if (g.contains("Pe")) spec.pe_grid = parse_real_grid(g["Pe"], "grid.Pe");
    if (g.contains("n")) spec.n_grid = parse_int_grid(g["n"], "grid.n");
    if (g.contains("M")) spec.m_grid = parse_int_grid(g["M"], "grid.M");
  }

  if (doc.contains("schemes")) {
    const json& s = doc["schemes"];
    if (!s.is_array()) fail("schemes must be an array of strings");
    for (const auto& e : s) {
      if (!e.is_string()) fail("schemes must be an array of strings");
      spec.schemes.push_back(Scheme::parse(e.get<std::string>()));
    }
  } else {
    spec.schemes.push_back({Scheme::Kind::nc_optimal, 0});
  }

  if (doc.contains("metric") && doc.contains("metrics")) {
    fail("use either metric or metrics, not both");
  }
  if (doc.contains("metric")) {
    if (!doc["metric"].is_string()) fail("metric must be a string");
    spec.metrics.push_back(doc["metric"].get<std::string>());
  } else if (doc.contains("metrics")) {
    if (!doc["metrics"].is_array()) fail("metrics must be an array");
    for (const auto& e : doc["metrics"]) {
      if (!e.is_string()) fail("metrics must be strings");
      spec.metrics.push_back(e.get<std::string>());
    }
  }
  if (spec.metrics.empty()) {
    spec.metrics.push_back(spec.command == Command::sweep_pe ? "T_M_seconds"
                                                             : "eta_bps");
  }

  if (doc.contains("reference_scheme")) {
    if (!doc["reference_scheme"].is_string()) {
      fail("reference_scheme must be a string");
    }
    spec.reference = Scheme::parse(doc["reference_scheme"].get<std::string>());
  } else if (spec.command == Command::sweep_pe) {
    const Scheme fd{Scheme::Kind::full_duplex, 0};
    if (std::find(spec.schemes.begin(), spec.schemes.end(), fd) !=
        spec.schemes.end()) {
      spec.reference = fd;
    }
  }

  if (doc.contains("simulation")) {
    const json& s = doc["simulation"];
    if (!s.is_object()) fail("simulation must be an object");
    reject_unknown_keys(s, {"mode", "runs", "field_bits", "polynomial",
                            "payload_symbol_cap"},
                        "simulation");
    if (s.contains("mode")) {
      if (!s["mode"].is_string()) fail("simulation.mode must be a string");
      spec.simulation.mode = parse_mode(s["mode"].get<std::string>());
    }
    if (s.contains("runs")) spec.simulation.runs = as_int(s["runs"], "simulation.runs");
    if (s.contains("field_bits")) {
      spec.simulation.field_bits =
          static_cast<int>(as_int(s["field_bits"], "simulation.field_bits"));
    }
    if (s.contains("polynomial")) {
      const std::int64_t poly = as_int(s["polynomial"], "simulation.polynomial");
      if (poly < 0 || poly > 0x1FFFF) fail("simulation.polynomial out of range");
      spec.simulation.polynomial = static_cast<std::uint32_t>(poly);
    }
    if (s.contains("payload_symbol_cap")) {
      const std::int64_t cap =
          as_int(s["payload_symbol_cap"], "simulation.payload_symbol_cap");
      if (cap < 0) fail("simulation.payload_symbol_cap must be >= 0");
      spec.simulation.payload_symbol_cap = static_cast<std::size_t>(cap);
    }
  }

  if (doc.contains("format")) {
    if (!doc["format"].is_string()) fail("format must be a string");
    const std::string f = doc["format"].get<std::string>();
    if (f == "csv") spec.format = OutputFormat::csv;
    else if (f == "json") spec.format = OutputFormat::json;
    else fail("format must be csv or json");
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) fail("out must be a string");
    spec.out_path = doc["out"].get<std::string>();
  }
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (s.is_number_unsigned()) spec.seed = s.get<std::uint64_t>();
    else if (s.is_number_integer() && s.get<std::int64_t>() >= 0)
      spec.seed = static_cast<std::uint64_t>(s.get<std::int64_t>());
    else fail("seed must be a non-negative integer");
  }
  if (doc.contains("threads")) {
    const std::int64_t t = as_int(doc["threads"], "threads");
    if (t < 0 || t > 1024) fail("threads must lie in [0, 1024]");
    spec.threads = static_cast<unsigned>(t);
  }

  validate_run_spec(spec);
  return spec;
}

RunSpec load_run_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_spec(ss.str());
}

void validate_run_spec(const RunSpec& spec) {
  try {
    const SystemParams sys(spec.link);
    if (spec.pe_bit) {
      const BitChannel bc(*spec.pe_bit);
      (void)apply_bit_channel(bc, sys);
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (spec.schemes.empty()) fail("schemes must not be empty");

  switch (spec.command) {
    case Command::policy:
      break;
    case Command::sweep_pe:
      if (spec.pe_grid.empty()) fail("sweep-pe requires grid.Pe");
      if (spec.pe_bit) fail("sweep-pe sweeps Pe directly; drop params.Pe_bit");
      for (double pe : spec.pe_grid) {
        if (!(pe >= 0.0 && pe < 1.0)) fail("grid.Pe entries must lie in [0, 1)");
      }
      break;
    case Command::sweep_n:
      if (spec.n_grid.empty()) fail("sweep-n requires grid.n");
      break;
    case Command::sweep_m:
      if (spec.m_grid.empty()) fail("sweep-m requires grid.M");
      break;
    case Command::sweep_joint:
      if (spec.n_grid.empty() || spec.m_grid.empty()) {
        fail("sweep-joint requires grid.n and grid.M");
      }
      break;
    case Command::compare:
      break;
    case Command::simulate: {
      for (const Scheme& s : spec.schemes) {
        if (s.kind != Scheme::Kind::nc_optimal &&
            s.kind != Scheme::Kind::fixed_window) {
          fail("simulate supports nc-optimal and fixed-window schemes only");
        }
      }
      if (spec.simulation.runs < 1) fail("simulation.runs must be >= 1");
      if (spec.simulation.mode == SimMode::rlnc) {
        const int b = spec.simulation.field_bits;
        if (b < 1 || b > 16) fail("simulation.field_bits must lie in [1, 16]");
        const std::uint32_t poly = spec.simulation.polynomial.value_or(
            FieldSpec::standard(b).polynomial);
        if (!is_irreducible(poly, b)) {
          fail("simulation.polynomial is not irreducible of degree field_bits");
        }
      }
      break;
    }
  }

  if (spec.command != Command::simulate && spec.command != Command::policy) {
    for (const std::string& m : spec.metrics) {
      if (!is_sweep_metric(m)) {
        fail("metric '" + m + "' must be T_M_seconds or eta_bps");
      }
    }
  }
}

}  // namespace tddnc::cli
