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

// JSON wire formats.
//
//   Instance: {"m":int, "k":int,
//              "tasks":[{"id":int, "cpu":number|"inc", "gpu":number|"inc"}, ...],
//              "edges":[[int,int], ...]}
//   Schedule: {"makespan":number,
//              "assignments":[{"id":int, "pool":"cpu"|"gpu", "machine":int,
//                              "start":number}, ...]}
//
// Parse failures and invariant violations throw InvalidInput.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hsched/core.hpp"

namespace hsched {

Instance parse_instance(std::string_view json_text);
Instance load_instance(const std::filesystem::path& path);
std::string instance_to_json(const Instance& instance);

Schedule parse_schedule(std::string_view json_text, std::size_t task_count);
Schedule load_schedule(const std::filesystem::path& path, std::size_t task_count);
std::string schedule_to_json(const Schedule& schedule);

std::string report_to_json(const ValidationReport& report);

// Per-machine rows "machine,task,start,end" sorted by machine then start.
std::string gantt_csv(const Instance& instance, const Schedule& schedule);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace hsched
