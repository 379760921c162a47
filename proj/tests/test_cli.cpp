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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tddnc/cli/config.hpp"
#include "tddnc/cli/report.hpp"
#include "tddnc/cli/runner.hpp"
#include "tddnc/params.hpp"

using namespace tddnc;
using namespace tddnc::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kSatelliteParams =
    R"("params":{"M":10,"n":10000,"g":100,"h":80,"n_ack":100,"R":1.5e6,"T_rt":0.25)";

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "tddnc_test_cli";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sweep_pe_spec() {
  return std::string(R"({"schema_version":1,"command":"sweep-pe",)") + kSatelliteParams +
         R"(,"Pe_ack":0.001},"grid":{"Pe":{"linspace":[0.1,0.8,8]}},
            "schemes":["nc-optimal","full-duplex","fixed-window:1","fixed-window:5",
                       "fixed-window:9","fixed-window:10"]})";
}

const SweepRow& find_row(const Report& r, const std::string& scheme,
                         const std::string& metric) {
  for (const SweepRow& row : r.rows) {
    if (row.scheme == scheme && row.metric == metric) return row;
  }
  FAIL("row not found: " << scheme << " " << metric);
  return r.rows.front();
}

}  // namespace

TEST_CASE("policy on a perfect channel") {
  const RunSpec spec = parse_run_spec(
      std::string(R"({"schema_version":1,"command":"policy",)") + kSatelliteParams +
      R"(,"Pe":0,"Pe_ack":0}})");
  const Report r = run(spec);
  REQUIRE(r.policy.size() == 10);
  const Timing t = derive_timing(SystemParams(spec.link));
  for (std::int64_t i = 1; i <= 10; ++i) {
    CHECK(r.policy[i - 1].state == i);
    CHECK(r.policy[i - 1].N == i);
  }
  CHECK(r.policy.back().T_seconds == 10.0 * t.T_p + t.T_w);
  const std::string csv = to_csv(r);
  CHECK(csv.rfind("state,N,T_seconds,search_bound\n", 0) == 0);
  CHECK(csv.find("10,10,3.23933333e-01,10\n") != std::string::npos);
}

TEST_CASE("sweep-pe ratio column") {
  const Report r = run(parse_run_spec(sweep_pe_spec()));
  CHECK(r.rows.size() == 8 * 6);
  const SweepRow& last = r.rows[7 * 6];
  CHECK(last.scheme == "nc-optimal");
  CHECK(last.link.Pe == doctest::Approx(0.8).epsilon(1e-15));
  REQUIRE(last.ratio.has_value());
  CHECK(*last.ratio == doctest::Approx(1.29).epsilon(0.05 / 1.29));
  CHECK(*r.rows[7 * 6 + 1].ratio == 1.0);
  for (std::size_t k = 2; k < 6; ++k) CHECK(*r.rows[7 * 6 + k].ratio >= 5.0);
  // Rows follow the declared grid order.
  for (std::size_t k = 1; k < 8; ++k) {
    CHECK(r.rows[k * 6].link.Pe > r.rows[(k - 1) * 6].link.Pe);
  }
}

TEST_CASE("output is byte-deterministic") {
  const fs::path cfg = write_file("det.json", sweep_pe_spec());
  const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv", c = scratch() / "c.csv";
  CHECK(invoke({"--config", cfg.string(), "--out", a.string()}).code == 0);
  CHECK(invoke({"--config", cfg.string(), "--out", b.string()}).code == 0);
  CHECK(invoke({"--config", cfg.string(), "--out", c.string(), "--threads", "8"}).code == 0);
  const std::string text = read_file(a);
  CHECK(!text.empty());
  CHECK(text.back() == '\n');
  CHECK(text == read_file(b));
  CHECK(text == read_file(c));
  const CliResult to_stdout = invoke({"--config", cfg.string()});
  CHECK(to_stdout.out == text);
}

TEST_CASE("simulate with one run on a perfect channel is exact") {
  const RunSpec spec = parse_run_spec(
      std::string(R"({"schema_version":1,"command":"simulate",)") + kSatelliteParams +
      R"(,"Pe":0,"Pe_ack":0},"simulation":{"mode":"physical","runs":1},"seed":123456789})");
  const Report r = run(spec);
  CHECK(find_row(r, "nc-optimal", "sim_mean_seconds").value ==
        find_row(r, "nc-optimal", "T_M_seconds").value);
  CHECK(find_row(r, "nc-optimal", "sim_stderr_seconds").value == 0.0);
}

TEST_CASE("rows reproduce themselves from their parameter echo") {
  std::vector<std::string> specs{
      sweep_pe_spec(),
      R"({"schema_version":1,"command":"sweep-n",
          "params":{"M":10,"n":10000,"g":100,"h":80,"n_ack":100,"R":1e8,"T_rt":0.25,"Pe_bit":1e-4},
          "grid":{"n":{"range":[2000,12000,2000]}},"schemes":["nc-optimal","sr:10","gbn:10"]})",
      R"({"schema_version":1,"command":"sweep-m",
          "params":{"M":10,"n":10000,"g":100,"h":80,"n_ack":100,"R":1e8,"T_rt":0.25,"Pe_bit":1e-5},
          "grid":{"M":[1,4,16]}})",
      R"({"schema_version":1,"command":"compare",
          "params":{"M":10,"n":10000,"g":20,"h":80,"n_ack":100,"R":1e7,"T_rt":0.25,"Pe":0.8,"Pe_ack":0},
          "schemes":["nc-optimal","sr:10","gbn:10","stop-and-wait","full-duplex","fixed-window:3"],
          "metrics":["eta_bps","T_M_seconds"]})",
      std::string(R"({"schema_version":1,"command":"simulate",)") + kSatelliteParams +
          R"(,"Pe":0.5,"Pe_ack":0.01},"simulation":{"mode":"rlnc","runs":50,"field_bits":4,
             "payload_symbol_cap":8},"seed":42})",
  };
  for (const std::string& text : specs) {
    const Report r = run(parse_run_spec(text));
    REQUIRE(!r.rows.empty());
    for (const SweepRow& row : r.rows) {
      const Report again = run(row_to_spec(row));
      const std::string metric = row.metric == "eta_max_bps" ? "eta_bps" : row.metric;
      CAPTURE(row.scheme);
      CAPTURE(row.metric);
      CHECK(format_scientific(find_row(again, row.scheme, metric).value) ==
            format_scientific(row.value));
    }
  }
}

TEST_CASE("JSON rows are self-describing") {
  const fs::path cfg = write_file(
      "echo.json",
      R"({"schema_version":1,"command":"sweep-n",
          "params":{"M":10,"n":10000,"g":100,"h":80,"n_ack":100,"R":1e8,"T_rt":0.25,"Pe_bit":1e-4},
          "grid":{"n":[1000,5000,9000]},"schemes":["nc-optimal","sr:10"],"format":"json"})");
  const CliResult res = invoke({"--config", cfg.string()});
  REQUIRE(res.code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["schema_version"] == 1);
  for (const json& row : doc["rows"]) {
    json params = row["params"];
    if (params.contains("Pe_bit")) {
      params.erase("Pe");
      params.erase("Pe_ack");
    }
    const std::string metric =
        row["metric"] == "eta_max_bps" ? "eta_bps" : row["metric"].get<std::string>();
    const json spec{{"schema_version", 1}, {"command", "compare"}, {"params", params},
                    {"schemes", {row["scheme"]}}, {"metric", metric}};
    const Report again = run(parse_run_spec(spec.dump()));
    REQUIRE(again.rows.size() == 1);
    CHECK(format_scientific(again.rows[0].value) ==
          format_scientific(row["value"].get<double>()));
  }
}

TEST_CASE("validation errors exit 2 without output") {
  const fs::path out = scratch() / "never.csv";
  const std::vector<std::string> bad{
      R"({"schema_version":2,"command":"policy"})",
      R"({"schema_version":1,"command":"nope",)" + std::string(kSatelliteParams) + "}}",
      std::string(R"({"schema_version":1,"command":"policy",)") + kSatelliteParams + R"(,"Pe":1.0}})",
      std::string(R"({"schema_version":1,"command":"policy",)") + kSatelliteParams + R"(},"bogus":1})",
      std::string(R"({"schema_version":1,"command":"sweep-pe",)") + kSatelliteParams + R"(}})",
      std::string(R"({"schema_version":1,"command":"compare",)") + kSatelliteParams +
          R"(},"schemes":["fixed-window:0"]})",
      std::string(R"({"schema_version":1,"command":"compare",)") + kSatelliteParams +
          R"(,"Pe":0.1,"Pe_bit":1e-4}})",
      "{not json",
  };
  int k = 0;
  for (const std::string& text : bad) {
    const fs::path cfg = write_file("bad" + std::to_string(k++) + ".json", text);
    const CliResult res = invoke({"--config", cfg.string(), "--out", out.string()});
    CAPTURE(text);
    CHECK(res.code == 2);
    CHECK(res.out.empty());
    CHECK_FALSE(fs::exists(out));
    const json err = json::parse(res.err);
    CHECK(err["error"]["kind"] == "validation");
    CHECK(err["error"]["exit_code"] == 2);
  }
  CHECK(invoke({"--config", (scratch() / "missing.json").string()}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--config", "x", "--format", "xml"}).code == 2);
}

TEST_CASE("non-finite results exit 3 without output") {
  const fs::path cfg = write_file(
      "numeric.json",
      R"({"schema_version":1,"command":"sweep-n",
          "params":{"M":10,"n":100,"g":8,"h":80,"n_ack":100,"R":1e6,"T_rt":0.25,"Pe_bit":0.01},
          "grid":{"n":[100,100000]}})");
  const fs::path out = scratch() / "numeric.csv";
  const CliResult res = invoke({"--config", cfg.string(), "--out", out.string()});
  CHECK(res.code == 3);
  CHECK_FALSE(fs::exists(out));
  CHECK(json::parse(res.err)["error"]["kind"] == "numeric");
}

TEST_CASE("installed tool matches the library entry point") {
  const fs::path cfg = write_file("tool.json", sweep_pe_spec());
  const fs::path out = scratch() / "tool.csv";
  const std::string cmd = std::string("\"") + TDDNC_TOOL_PATH + "\" --config \"" +
                          cfg.string() + "\" --out \"" + out.string() + "\"";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(read_file(out) == invoke({"--config", cfg.string()}).out);
  const fs::path bad = write_file("tool_bad.json", R"({"schema_version":9})");
  const std::string bad_cmd = std::string("\"") + TDDNC_TOOL_PATH + "\" --config \"" +
                              bad.string() + "\" 2>/dev/null";
  const int status = std::system(bad_cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
