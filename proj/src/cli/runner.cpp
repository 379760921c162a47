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

#include "tddnc/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tddnc/markov.hpp"
#include "tddnc/optimizer.hpp"
#include "tddnc/parallel.hpp"
#include "tddnc/simulator.hpp"

namespace tddnc::cli {
namespace {

struct SchemeValue {
  double T_M = 0.0;
  double eta = 0.0;
};

// Parameters of one grid point: the template with n and M substituted and,
// when a bit channel is configured, Pe and Pe_ack re-derived.
SystemParams system_at(const RunSpec& spec, std::int64_t n, std::int64_t M) {
  LinkConfig c = spec.link;
  c.n = n;
  c.M = M;
  if (!spec.pe_bit) return SystemParams(c);
  c.Pe = 0.0;
  c.Pe_ack = 0.0;
  const SystemParams shaped(c);
  const ErasurePair e = erasures_from_bit_channel(BitChannel(*spec.pe_bit), shaped);
  if (!(e.Pe < 1.0) || !(e.Pe_ack < 1.0)) {
    throw NumericError("erasure probability rounds to 1 at n = " +
                       std::to_string(n) + ", M = " + std::to_string(M));
  }
  return shaped.with_erasures(e.Pe, e.Pe_ack);
}

SchemeValue evaluate_scheme(const Scheme& scheme, const SystemParams& sys) {
  const Timing timing = derive_timing(sys);
  const double bits = static_cast<double>(sys.M()) * static_cast<double>(sys.n());
  SchemeValue v;
  switch (scheme.kind) {
    case Scheme::Kind::nc_optimal:
      v.T_M = optimal_policy(sys, timing).profile.T_M();
      break;
    case Scheme::Kind::fixed_window:
      v.T_M = fixed_window_completion(scheme.window, sys, timing).T_M();
      break;
    case Scheme::Kind::full_duplex:
      v.T_M = full_duplex_completion(sys, timing);
      break;
    case Scheme::Kind::stop_and_wait: {
      // Uncoded, one packet of h + n bits per ACK.
      const Timing arq = derive_arq_timing(sys, ArqParams::for_system(sys, 1));
      v.T_M = static_cast<double>(sys.M()) * (arq.T_p + arq.T_w) /
              ((1.0 - sys.Pe()) * (1.0 - sys.Pe_ack()));
      break;
    }
    case Scheme::Kind::gbn:
    case Scheme::Kind::sr: {
      const ArqParams arq = ArqParams::for_system(sys, scheme.window);
      const Timing t_arq = derive_arq_timing(sys, arq);
      v.eta = scheme.kind == Scheme::Kind::gbn ? eta_gbn(sys, t_arq, arq)
                                               : eta_sr(sys, t_arq, arq);
      // Time to deliver M n bits at that rate.
      v.T_M = bits / v.eta;
      return v;
    }
  }
  v.eta = bits / v.T_M;
  return v;
}

double metric_value(const SchemeValue& v, const std::string& metric) {
  return metric == "T_M_seconds" ? v.T_M : v.eta;
}

SweepRow base_row(const RunSpec& spec, const SystemParams& sys,
                  const std::string& swept) {
  SweepRow r;
  r.swept = swept;
  r.link = sys.config();
  r.pe_bit = spec.pe_bit;
  return r;
}

// Rows for every scheme x metric at one grid point.
std::vector<SweepRow> evaluate_point(const RunSpec& spec,
                                     const SystemParams& sys,
                                     const std::string& swept) {
  std::optional<SchemeValue> ref;
  if (spec.reference) ref = evaluate_scheme(*spec.reference, sys);
  std::vector<SweepRow> rows;
  for (const Scheme& scheme : spec.schemes) {
    const SchemeValue v = evaluate_scheme(scheme, sys);
    for (const std::string& metric : spec.metrics) {
      SweepRow r = base_row(spec, sys, swept);
      r.scheme = scheme.id();
      r.metric = metric;
      r.value = metric_value(v, metric);
      if (ref) r.ratio = r.value / metric_value(*ref, metric);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

template <typename CellFn>
std::vector<SweepRow> sweep(std::size_t cells, unsigned threads, CellFn cell) {
  std::vector<std::vector<SweepRow>> per_cell(cells);
  parallel_for(cells, threads, [&](std::size_t k) { per_cell[k] = cell(k); });
  std::vector<SweepRow> rows;
  for (auto& c : per_cell) {
    for (auto& r : c) rows.push_back(std::move(r));
  }
  return rows;
}

SweepRow best_row(const RunSpec& spec, const ThroughputPoint& best,
                  const std::string& swept) {
  SweepRow r = base_row(spec, system_at(spec, best.n, best.M), swept);
  r.scheme = "nc-optimal";
  r.metric = "eta_max_bps";
  r.value = best.eta;
  return r;
}

// Argmax over the emitted nc-optimal eta cells, for fixed-Pe sweeps where
// the bit-channel optimisers do not apply. Ties go to the smaller (M, n).
std::optional<SweepRow> best_of_rows(const std::vector<SweepRow>& rows) {
  const SweepRow* best = nullptr;
  for (const SweepRow& r : rows) {
    if (r.scheme != "nc-optimal" || r.metric != "eta_bps") continue;
    if (best == nullptr || r.value > best->value ||
        (r.value == best->value &&
         std::pair(r.link.M, r.link.n) < std::pair(best->link.M, best->link.n))) {
      best = &r;
    }
  }
  if (best == nullptr) return std::nullopt;
  SweepRow out = *best;
  out.metric = "eta_max_bps";
  out.ratio.reset();
  return out;
}

void append_best(const RunSpec& spec, std::vector<SweepRow>& rows,
                 const std::string& swept) {
  const bool has_nc_eta =
      std::find(spec.schemes.begin(), spec.schemes.end(),
                Scheme{Scheme::Kind::nc_optimal, 0}) != spec.schemes.end() &&
      std::find(spec.metrics.begin(), spec.metrics.end(), "eta_bps") !=
          spec.metrics.end();
  if (!has_nc_eta) return;
  if (!spec.pe_bit) {
    if (auto b = best_of_rows(rows)) {
      b->swept = swept;
      rows.push_back(std::move(*b));
    }
    return;
  }
  const SystemParams tmpl(spec.link);
  const BitChannel bc(*spec.pe_bit);
  ThroughputPoint best;
  switch (spec.command) {
    case Command::sweep_n:
      best = optimize_packet_bits(tmpl, bc, spec.n_grid, spec.threads);
      break;
    case Command::sweep_m:
      best = optimize_block_size(tmpl, bc, spec.m_grid, spec.threads);
      break;
    default:
      best = optimize_joint(tmpl, bc, spec.n_grid, spec.m_grid, spec.threads);
      break;
  }
  rows.push_back(best_row(spec, best, swept));
}

std::vector<SweepRow> run_simulate(const RunSpec& spec) {
  const SystemParams sys = system_at(spec, spec.link.n, spec.link.M);
  const Timing timing = derive_timing(sys);
  SimConfig cfg;
  cfg.mode = spec.simulation.mode;
  cfg.runs = spec.simulation.runs;
  cfg.master_seed = spec.seed;
  cfg.threads = spec.threads;
  SimulationEcho echo{cfg.mode, cfg.runs, cfg.master_seed, 0, 0, 0};
  if (cfg.mode == SimMode::rlnc) {
    FieldSpec f = FieldSpec::standard(spec.simulation.field_bits);
    if (spec.simulation.polynomial) f.polynomial = *spec.simulation.polynomial;
    cfg.field = f;
    cfg.payload_symbol_cap = spec.simulation.payload_symbol_cap;
    echo.field_bits = f.bits;
    echo.polynomial = f.polynomial;
    echo.payload_symbol_cap = cfg.payload_symbol_cap;
  }

  std::vector<SweepRow> rows;
  for (const Scheme& scheme : spec.schemes) {
    const Policy policy = scheme.kind == Scheme::Kind::nc_optimal
                              ? optimal_policy(sys, timing).policy
                              : Policy::fixed_window(sys.M(), scheme.window);
    const double analytic = expected_completion(policy, sys, timing).T_M();
    const SimResult sim = simulate(policy, sys, timing, cfg);
    std::vector<std::pair<std::string, double>> metrics = {
        {"T_M_seconds", analytic},
        {"sim_mean_seconds", sim.mean_completion},
        {"sim_stderr_seconds", sim.std_error},
        {"sim_mean_packets", sim.mean_packets_sent},
        {"sim_mean_stops", sim.mean_stops},
    };
    if (cfg.mode == SimMode::rlnc) {
      metrics.emplace_back("sim_mean_receptions", sim.mean_receptions);
      metrics.emplace_back("sim_decode_failures",
                           static_cast<double>(sim.decode_failures));
    }
    for (const auto& [name, value] : metrics) {
      SweepRow r = base_row(spec, sys, "");
      r.scheme = scheme.id();
      r.metric = name;
      r.value = value;
      r.simulation = echo;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

Report run_unchecked(const RunSpec& spec) {
  Report report;
  report.command = spec.command;
  switch (spec.command) {
    case Command::policy: {
      const SystemParams sys = system_at(spec, spec.link.n, spec.link.M);
      const OptimalPolicyResult opt = optimal_policy(sys, derive_timing(sys));
      report.link = sys.config();
      report.pe_bit = spec.pe_bit;
      for (std::int64_t i = 1; i <= sys.M(); ++i) {
        report.policy.push_back({i, opt.policy.N(i),
                                 opt.profile.T[static_cast<std::size_t>(i)],
                                 opt.search_bounds_used[static_cast<std::size_t>(i - 1)]});
      }
      break;
    }
    case Command::sweep_pe: {
      const SystemParams base = system_at(spec, spec.link.n, spec.link.M);
      report.rows = sweep(spec.pe_grid.size(), spec.threads, [&](std::size_t k) {
        return evaluate_point(
            spec, base.with_erasures(spec.pe_grid[k], base.Pe_ack()), "Pe");
      });
      break;
    }
    case Command::sweep_n:
      report.rows = sweep(spec.n_grid.size(), spec.threads, [&](std::size_t k) {
        return evaluate_point(spec, system_at(spec, spec.n_grid[k], spec.link.M),
                              "n");
      });
      append_best(spec, report.rows, "n");
      break;
    case Command::sweep_m:
      report.rows = sweep(spec.m_grid.size(), spec.threads, [&](std::size_t k) {
        return evaluate_point(spec, system_at(spec, spec.link.n, spec.m_grid[k]),
                              "M");
      });
      append_best(spec, report.rows, "M");
      break;
    case Command::sweep_joint: {
      const std::size_t cols = spec.n_grid.size();
      report.rows = sweep(spec.m_grid.size() * cols, spec.threads,
                          [&](std::size_t k) {
                            return evaluate_point(
                                spec,
                                system_at(spec, spec.n_grid[k % cols],
                                          spec.m_grid[k / cols]),
                                "M;n");
                          });
      append_best(spec, report.rows, "M;n");
      break;
    }
    case Command::compare:
      report.rows = evaluate_point(
          spec, system_at(spec, spec.link.n, spec.link.M), "");
      break;
    case Command::simulate:
      report.rows = run_simulate(spec);
      break;
  }

  for (const SweepRow& r : report.rows) {
    if (!std::isfinite(r.value) || (r.ratio && !std::isfinite(*r.ratio))) {
      throw NumericError("non-finite " + r.metric + " for scheme " + r.scheme);
    }
  }
  for (const PolicyRow& p : report.policy) {
    if (!std::isfinite(p.T_seconds)) {
      throw NumericError("non-finite completion time at state " +
                         std::to_string(p.state));
    }
  }
  return report;
}

void write_error(std::ostream& err, const std::string& kind, int code,
                 const std::string& message) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = kind;
  j["error"]["exit_code"] = code;
  j["error"]["message"] = message;
  err << j.dump() << "\n";
}

}  // namespace

Report run(const RunSpec& spec) {
  validate_run_spec(spec);
  try {
    return run_unchecked(spec);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open output file '" + path + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw ValidationError("failed writing '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ValidationError("cannot move output into place at '" + path + "'");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Delay-optimal network coding over TDD erasure links"};
  std::string config_path, out_path, format;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  app.add_option("--config", config_path, "JSON run specification")->required();
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Master seed for simulations");
  app.add_option("--threads", threads, "Worker threads, 0 = auto");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "validation", 2, e.what());
    return 2;
  }

  try {
    RunSpec spec = load_run_spec(config_path);
    if (!out_path.empty()) spec.out_path = out_path;
    if (format == "csv") spec.format = OutputFormat::csv;
    if (format == "json") spec.format = OutputFormat::json;
    if (seed) spec.seed = *seed;
    if (threads) spec.threads = *threads;

    const Report report = run(spec);
    const std::string text =
        spec.format == OutputFormat::csv ? to_csv(report) : to_json(report);
    if (spec.out_path.empty()) {
      out << text;
    } else {
      write_atomically(spec.out_path, text);
    }
    return 0;
  } catch (const ValidationError& e) {
    write_error(err, "validation", 2, e.what());
    return 2;
  } catch (const NumericError& e) {
    write_error(err, "numeric", 3, e.what());
    return 3;
  } catch (const std::exception& e) {
    write_error(err, "internal", 1, e.what());
    return 1;
  }
}

}  // namespace tddnc::cli
