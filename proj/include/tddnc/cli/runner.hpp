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

#include <iosfwd>
#include <string>
#include <vector>

#include "tddnc/cli/config.hpp"
#include "tddnc/cli/report.hpp"

namespace tddnc::cli {

// Executes a validated spec. Throws ValidationError or NumericError.
Report run(const RunSpec& spec);

// Writes `content` to `path` through a temporary file and a rename, so a
// failed run leaves no partial output behind.
void write_atomically(const std::string& path, const std::string& content);

// Full command-line entry point. Returns the process exit code: 0 on
// success, 2 for validation errors, 3 for non-finite results. Errors are
// written to `err` as a JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tddnc::cli
