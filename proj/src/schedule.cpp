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

#include "hsched/schedule.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "hsched/error.hpp"

namespace hsched {

namespace {

std::vector<std::uint32_t> positions_of(const Instance& instance, std::span<const TaskId> priority) {
  const std::size_t n = instance.size();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> position(n, kUnset);
  if (priority.size() != n) throw InvalidInput("priority is not a topological order");
  for (std::uint32_t i = 0; i < n; ++i) {
    const TaskId t = priority[i];
    if (t >= n || position[t] != kUnset) throw InvalidInput("priority is not a topological order");
    position[t] = i;
  }
  for (const Edge& e : instance.edges()) {
    if (position[e.from] > position[e.to]) throw InvalidInput("priority is not a topological order");
  }
  return position;
}

}  // namespace

Schedule list_schedule(const Instance& instance, const Allocation& allocation,
                       std::span<const TaskId> priority) {
  check_allocation(instance, allocation);
  const std::vector<std::uint32_t> position = positions_of(instance, priority);
  const std::size_t n = instance.size();

  Schedule schedule;
  schedule.start.assign(n, 0.0);
  schedule.machine.assign(n, Placement{});
  if (n == 0) return schedule;

  // Per pool: ready tasks keyed by priority position, idle machines keyed by
  // (free time, index).
  std::set<std::uint32_t> ready[2];
  std::set<std::pair<double, std::uint32_t>> idle[2];
  for (Pool pool : {Pool::Cpu, Pool::Gpu}) {
    for (std::uint32_t i = 0; i < instance.machines(pool); ++i) {
      idle[static_cast<int>(pool)].insert({0.0, i});
    }
  }
  std::vector<std::uint32_t> preds_left = instance.in_degrees();
  for (TaskId j = 0; j < n; ++j) {
    if (preds_left[j] == 0) ready[static_cast<int>(allocation.side[j])].insert(position[j]);
  }

  using Event = std::tuple<double, std::uint32_t, TaskId>;  // finish, position, task
  std::priority_queue<Event, std::vector<Event>, std::greater<>> running;

  auto dispatch = [&](double now) {
    for (Pool pool : {Pool::Cpu, Pool::Gpu}) {
      auto& queue = ready[static_cast<int>(pool)];
      auto& machines = idle[static_cast<int>(pool)];
      while (!queue.empty() && !machines.empty()) {
        const TaskId task = priority[*queue.begin()];
        queue.erase(queue.begin());
        const auto [free_at, index] = *machines.begin();
        machines.erase(machines.begin());
        schedule.start[task] = std::max(now, free_at);
        schedule.machine[task] = Placement{pool, index};
        running.emplace(schedule.start[task] + duration_on(instance, task, pool), position[task], task);
      }
    }
  };

  dispatch(0.0);
  while (!running.empty()) {
    const double now = std::get<0>(running.top());
    while (!running.empty() && std::get<0>(running.top()) == now) {
      const TaskId task = std::get<2>(running.top());
      running.pop();
      const Placement p = schedule.machine[task];
      idle[static_cast<int>(p.pool)].insert({now, p.index});
      schedule.makespan = std::max(schedule.makespan, now);
      for (const Edge& e : instance.successors(task)) {
        if (--preds_left[e.to] == 0) {
          ready[static_cast<int>(allocation.side[e.to])].insert(position[e.to]);
        }
      }
    }
    dispatch(now);
  }
  return schedule;
}

Schedule list_schedule(const Instance& instance, const Allocation& allocation) {
  const std::vector<TaskId> order = topological_order(instance);
  return list_schedule(instance, allocation, order);
}

PipelineResult schedule_relaxation(const Instance& instance, FractionalSolution fractional,
                                   const PipelineOptions& options) {
  PipelineResult result;
  result.fractional = std::move(fractional);
  result.diagnostics.rule = options.rule;
  if (options.rule == RoundingRule::Hlpb) {
    const RoundingParams params = options.b ? RoundingParams::finite(*options.b)
                                            : optimal_b(instance.cpus(), instance.gpus());
    result.diagnostics.b = params;
    result.allocation = round_hlpb(result.fractional, instance, params);
  } else {
    result.allocation = round_half(result.fractional);
  }
  result.schedule = list_schedule(instance, result.allocation);

  Diagnostics& d = result.diagnostics;
  d.lp_bound = result.fractional.objective;
  d.load = load_and_cp(instance, result.allocation);
  d.makespan = result.schedule.makespan;
  d.ratio = d.lp_bound > 0.0 ? d.makespan / d.lp_bound : 1.0;
  return result;
}

PipelineResult run_pipeline(const Instance& instance, const PipelineOptions& options) {
  // Reject a bad b before paying for the LP.
  if (options.rule == RoundingRule::Hlpb && options.b) RoundingParams::finite(*options.b);
  return schedule_relaxation(instance, solve_relaxation(instance, options.relaxation), options);
}

PipelineResult hlp_b(const Instance& instance, std::optional<double> b) {
  PipelineOptions options;
  options.b = b;
  return run_pipeline(instance, options);
}

std::string diagnostics_to_json(const Diagnostics& d) {
  nlohmann::json doc;
  doc["rounding"] = d.rule == RoundingRule::Hlpb ? "hlpb" : "half";
  if (d.b) {
    doc["b"] = d.b->is_infinite() ? nlohmann::json("inf") : nlohmann::json(d.b->b());
  } else {
    doc["b"] = nullptr;
  }
  doc["lp_bound"] = d.lp_bound;
  doc["w_cpu"] = d.load.cpu_work;
  doc["w_gpu"] = d.load.gpu_work;
  doc["critical_path"] = d.load.critical_path;
  doc["makespan"] = d.makespan;
  doc["ratio"] = d.ratio;
  return doc.dump();
}

}  // namespace hsched
