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

#include "hsched/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "hsched/error.hpp"

namespace hsched {

const char* to_string(Pool pool) { return pool == Pool::Cpu ? "cpu" : "gpu"; }

ProcTime ProcTime::finite(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidInput("non-positive time");
  }
  return ProcTime(value);
}

double ProcTime::value() const {
  if (!compatible()) throw std::logic_error("value() of an incompatible time");
  return value_;
}

namespace {

// Kahn layering over a sorted edge list with id tie-break. Returns fewer than
// n ids when the graph has a cycle.
std::vector<TaskId> kahn_order(std::size_t n, std::span<const Edge> edges,
                               std::span<const std::uint32_t> offsets) {
  std::vector<std::uint32_t> indeg(n, 0);
  for (const Edge& e : edges) ++indeg[e.to];
  std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
  for (TaskId t = 0; t < n; ++t) {
    if (indeg[t] == 0) ready.push(t);
  }
  std::vector<TaskId> order;
  order.reserve(n);
  while (!ready.empty()) {
    TaskId t = ready.top();
    ready.pop();
    order.push_back(t);
    for (std::uint32_t i = offsets[t]; i < offsets[t + 1]; ++i) {
      if (--indeg[edges[i].to] == 0) ready.push(edges[i].to);
    }
  }
  return order;
}

}  // namespace

Instance::Instance(std::vector<ProcTime> cpu_times, std::vector<ProcTime> gpu_times,
                   std::vector<Edge> edges, std::uint32_t cpus, std::uint32_t gpus)
    : cpu_(std::move(cpu_times)), gpu_(std::move(gpu_times)), edges_(std::move(edges)),
      m_(cpus), k_(gpus) {
  if (cpu_.size() != gpu_.size()) {
    throw InvalidInput("cpu and gpu time arrays differ in length");
  }
  if (cpu_.size() >= std::numeric_limits<TaskId>::max()) {
    throw InvalidInput("too many tasks");
  }
  if (k_ < 1) throw InvalidInput("k must be at least 1");
  if (m_ < k_) throw InvalidInput("m < k");
  const std::size_t n = cpu_.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!cpu_[j].compatible() && !gpu_[j].compatible()) {
      throw InvalidInput("task " + std::to_string(j) + " is incompatible with both pools");
    }
  }
  for (const Edge& e : edges_) {
    if (e.from >= n || e.to >= n) {
      throw InvalidInput("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                         " references an unknown task");
    }
    if (e.from == e.to) throw InvalidInput("self-loop on task " + std::to_string(e.from));
  }
  if (!std::is_sorted(edges_.begin(), edges_.end())) std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  edges_.shrink_to_fit();
  if (edges_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidInput("too many edges");
  }

  succ_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) ++succ_offsets_[e.from + 1];
  std::partial_sum(succ_offsets_.begin(), succ_offsets_.end(), succ_offsets_.begin());

  if (kahn_order(n, edges_, succ_offsets_).size() != n) throw InvalidInput("cyclic graph");
}

double Instance::min_time(TaskId task) const {
  const ProcTime c = cpu_[task];
  const ProcTime g = gpu_[task];
  if (!c.compatible()) return g.value();
  if (!g.compatible()) return c.value();
  return std::min(c.value(), g.value());
}

std::span<const Edge> Instance::successors(TaskId task) const {
  return std::span<const Edge>(edges_).subspan(succ_offsets_[task],
                                               succ_offsets_[task + 1] - succ_offsets_[task]);
}

std::vector<std::uint32_t> Instance::in_degrees() const {
  std::vector<std::uint32_t> indeg(size(), 0);
  for (const Edge& e : edges_) ++indeg[e.to];
  return indeg;
}

bool Instance::all_finite() const {
  auto ok = [](ProcTime t) { return t.compatible(); };
  return std::all_of(cpu_.begin(), cpu_.end(), ok) && std::all_of(gpu_.begin(), gpu_.end(), ok);
}

std::vector<TaskId> topological_order(const Instance& instance) {
  if (instance.size() == 0) return {};
  std::vector<std::uint32_t> offsets(instance.size() + 1, 0);
  for (const Edge& e : instance.edges()) ++offsets[e.from + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return kahn_order(instance.size(), instance.edges(), offsets);
}

void check_allocation(const Instance& instance, const Allocation& allocation) {
  if (allocation.side.size() != instance.size()) {
    throw InvalidInput("allocation size does not match task count");
  }
  for (TaskId j = 0; j < instance.size(); ++j) {
    if (!instance.time_on(j, allocation.side[j]).compatible()) {
      throw InvalidInput("task " + std::to_string(j) + " allocated to " +
                         to_string(allocation.side[j]) + " where it is incompatible");
    }
  }
}

double duration_on(const Instance& instance, TaskId task, Pool pool) {
  return instance.time_on(task, pool).value();
}

double compute_makespan(const Instance& instance, const Schedule& schedule) {
  double makespan = 0.0;
  for (TaskId j = 0; j < instance.size(); ++j) {
    makespan = std::max(makespan, schedule.start[j] +
                                      duration_on(instance, j, schedule.machine[j].pool));
  }
  return makespan;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Size: return "size";
    case ViolationKind::Allocation: return "allocation";
    case ViolationKind::Incompatible: return "incompatible";
    case ViolationKind::MachineIndex: return "machine_index";
    case ViolationKind::NegativeStart: return "negative_start";
    case ViolationKind::Precedence: return "precedence";
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::Makespan: return "makespan";
  }
  return "unknown";
}

Allocation allocation_of(const Schedule& schedule) {
  Allocation allocation;
  allocation.side.reserve(schedule.machine.size());
  for (const Placement& p : schedule.machine) allocation.side.push_back(p.pool);
  return allocation;
}

ValidationReport validate_schedule(const Instance& instance, const Allocation& allocation,
                                   const Schedule& schedule) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string subject, std::string detail) {
    report.violations.push_back({kind, std::move(subject), std::move(detail)});
  };
  const std::size_t n = instance.size();
  if (allocation.side.size() != n || schedule.start.size() != n ||
      schedule.machine.size() != n) {
    add(ViolationKind::Size, "schedule", "arrays are not sized to the task count");
    return report;
  }
  auto task_name = [](TaskId j) { return "task " + std::to_string(j); };

  // Tasks whose duration is defined; later checks skip the rest.
  std::vector<char> usable(n, 1);
  std::vector<double> finish(n, 0.0);
  for (TaskId j = 0; j < n; ++j) {
    const Placement& p = schedule.machine[j];
    if (p.pool != allocation.side[j]) {
      add(ViolationKind::Allocation, task_name(j),
          std::string("placed on ") + to_string(p.pool) + " but allocated to " +
              to_string(allocation.side[j]));
    }
    if (p.index >= instance.machines(p.pool)) {
      add(ViolationKind::MachineIndex, task_name(j),
          std::string(to_string(p.pool)) + " index " + std::to_string(p.index) +
              " out of range");
      usable[j] = 0;
    }
    if (!instance.time_on(j, p.pool).compatible()) {
      add(ViolationKind::Incompatible, task_name(j),
          std::string("incompatible with ") + to_string(p.pool));
      usable[j] = 0;
      continue;
    }
    if (!(schedule.start[j] >= 0.0) || !std::isfinite(schedule.start[j])) {
      add(ViolationKind::NegativeStart, task_name(j),
          "start " + std::to_string(schedule.start[j]));
    }
    finish[j] = schedule.start[j] + duration_on(instance, j, p.pool);
  }

  for (const Edge& e : instance.edges()) {
    if (!instance.time_on(e.from, schedule.machine[e.from].pool).compatible()) continue;
    if (schedule.start[e.to] < finish[e.from] - kTimeTolerance) {
      add(ViolationKind::Precedence,
          "edge " + std::to_string(e.from) + "->" + std::to_string(e.to),
          "successor starts at " + std::to_string(schedule.start[e.to]) +
              " before predecessor finishes at " + std::to_string(finish[e.from]));
    }
  }

  // Bucket tasks per (pool, machine), then sort each bucket by start.
  const std::size_t m = instance.cpus();
  const std::size_t slots = m + instance.gpus();
  std::vector<std::uint32_t> offsets(slots + 1, 0);
  auto slot_of = [&](TaskId j) {
    const Placement& p = schedule.machine[j];
    return p.pool == Pool::Cpu ? std::size_t{p.index} : m + p.index;
  };
  for (TaskId j = 0; j < n; ++j) {
    if (usable[j]) ++offsets[slot_of(j) + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<TaskId> bucketed(offsets.back());
  {
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (TaskId j = 0; j < n; ++j) {
      if (usable[j]) bucketed[cursor[slot_of(j)]++] = j;
    }
  }
  for (std::size_t s = 0; s < slots; ++s) {
    auto first = bucketed.begin() + offsets[s];
    auto last = bucketed.begin() + offsets[s + 1];
    if (last - first < 2) continue;
    std::sort(first, last, [&](TaskId a, TaskId b) {
      return schedule.start[a] != schedule.start[b] ? schedule.start[a] < schedule.start[b]
                                                    : a < b;
    });
    for (auto it = first + 1; it != last; ++it) {
      const TaskId prev = *(it - 1);
      const TaskId cur = *it;
      if (schedule.start[cur] < finish[prev] - kTimeTolerance) {
        const std::string machine = s < m ? "cpu " + std::to_string(s)
                                          : "gpu " + std::to_string(s - m);
        add(ViolationKind::Overlap, machine,
            task_name(prev) + " [" + std::to_string(schedule.start[prev]) + ", " +
                std::to_string(finish[prev]) + ") overlaps " + task_name(cur) +
                " starting at " + std::to_string(schedule.start[cur]));
      }
    }
  }

  double makespan = 0.0;
  for (TaskId j = 0; j < n; ++j) {
    if (usable[j]) makespan = std::max(makespan, finish[j]);
  }
  if (std::abs(makespan - schedule.makespan) > kTimeTolerance) {
    add(ViolationKind::Makespan, "schedule",
        "declared " + std::to_string(schedule.makespan) + ", actual " +
            std::to_string(makespan));
  }
  return report;
}

}  // namespace hsched
