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

#include <optional>
#include <span>
#include <string>

#include "hsched/allocate.hpp"
#include "hsched/bounds.hpp"
#include "hsched/core.hpp"
#include "hsched/lp.hpp"

namespace hsched {

// Event-driven list scheduling. Whenever a machine of some pool is idle and a
// task allocated to that pool is ready, the ready task with the smallest
// position in `priority` starts on the idle machine with the smallest free
// time (then lowest index). Completions sharing a time are all processed
// before the next dispatch.
//
// Throws InvalidInput when `priority` is not a topological order or the
// allocation puts a task on an incompatible pool.
Schedule list_schedule(const Instance& instance, const Allocation& allocation,
                       std::span<const TaskId> priority);

// Same, with topological_order(instance) as the priority list.
Schedule list_schedule(const Instance& instance, const Allocation& allocation);

enum class RoundingRule { Hlpb, Half };

struct PipelineOptions {
  RoundingRule rule = RoundingRule::Hlpb;
  std::optional<double> b;  // hlpb only; optimal_b(m, k) when absent
  RelaxationOptions relaxation;
};

struct Diagnostics {
  RoundingRule rule = RoundingRule::Hlpb;
  std::optional<RoundingParams> b;  // set for hlpb
  double lp_bound = 0.0;
  LoadProfile load;
  double makespan = 0.0;
  double ratio = 1.0;  // makespan / lp_bound, 1 for the empty instance
};

struct PipelineResult {
  FractionalSolution fractional;
  Allocation allocation;
  Schedule schedule;
  Diagnostics diagnostics;
};

// Rounds an already solved relaxation and list-schedules the result.
PipelineResult schedule_relaxation(const Instance& instance, FractionalSolution fractional,
                                   const PipelineOptions& options);

// LP relaxation -> rounding -> list scheduling.
PipelineResult run_pipeline(const Instance& instance, const PipelineOptions& options = {});

// HLP-b with an automatic (b absent) or user-chosen threshold.
PipelineResult hlp_b(const Instance& instance, std::optional<double> b = std::nullopt);

std::string diagnostics_to_json(const Diagnostics& diagnostics);

}  // namespace hsched
