// Copyright 2026 The hsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace hsched::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kSolverFailed = 3,
  kCapacityExceeded = 4,
};

inline constexpr const char* kCsvHeader =
    "instance_id,n,m,k,b,lp_bound,makespan_hlpb,makespan_half,ratio_hlpb,ratio_half,"
    "theoretical_ratio,wall_ms,status";

// Runs the command line `args` (args[0] is the program name). Regular output
// goes to `out`; failures print a single "error: <kind>: <reason>" line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsched::cli
