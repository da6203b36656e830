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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "hsched/core.hpp"

namespace hsched {

struct LoadProfile {
  double cpu_work = 0.0;      // sum of cpu times of CPU-allocated tasks
  double gpu_work = 0.0;      // sum of gpu times of GPU-allocated tasks
  double critical_path = 0.0; // heaviest path under allocated durations
};

LoadProfile load_and_cp(const Instance& instance, const Allocation& allocation);

// cpu_work/m + gpu_work/k + critical_path: the bound every list schedule meets.
double list_schedule_bound(const Instance& instance, const LoadProfile& profile);

// 3 + 4 sqrt((1 - k/m) / (2 - k/m)).
double theoretical_ratio(std::uint32_t m, std::uint32_t k);

struct OracleLimits {
  std::size_t max_tasks = 10;
  std::size_t max_machines = 4;  // m + k
};

// Exact optimal makespan by branch and bound. Throws CapacityExceeded
// ("instance too large for oracle") outside the limits.
double exact_makespan(const Instance& instance, const OracleLimits& limits = {});

struct BoundsReport {
  std::optional<double> lp_bound;  // absent when times are not all finite
  double load_cpu = 0.0;           // CPU-only work / m
  double load_gpu = 0.0;           // GPU-only work / k
  double load_mixed = 0.0;         // sum of min times / (m + k)
  double min_critical_path = 0.0;  // heaviest path with per-task min times
  std::optional<double> exact_opt;
};

// Computes every lower bound; runs the oracle when `limits` is given.
BoundsReport compute_bounds(const Instance& instance, const std::optional<OracleLimits>& limits);

std::string bounds_to_json(const BoundsReport& report);

}  // namespace hsched
