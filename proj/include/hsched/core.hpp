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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hsched {

using TaskId = std::uint32_t;

// Absolute tolerance used when comparing start/completion times.
inline constexpr double kTimeTolerance = 1e-9;

enum class Pool : std::uint8_t { Cpu, Gpu };

const char* to_string(Pool pool);

// Processing time of a task on one processor type: a finite positive
// duration, or incompatible (the task cannot run on that type at all).
// Deliberately has no arithmetic; call value() to get a duration.
class ProcTime {
 public:
  static ProcTime finite(double value);  // throws InvalidInput unless 0 < value < inf
  static constexpr ProcTime incompatible() { return ProcTime(-1.0); }

  constexpr bool compatible() const { return value_ > 0.0; }
  double value() const;  // throws std::logic_error when incompatible

  friend constexpr bool operator==(ProcTime, ProcTime) = default;

 private:
  constexpr explicit ProcTime(double v) : value_(v) {}
  double value_;
};

struct Edge {
  TaskId from;
  TaskId to;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// A validated scheduling instance: n tasks, two processor pools of sizes
// m (CPU) and k (GPU), and an acyclic precedence relation.
//
// Construction checks every invariant and throws InvalidInput on failure.
// Edges are stored deduplicated and sorted by (from, to), which doubles as
// the successor adjacency.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<ProcTime> cpu_times, std::vector<ProcTime> gpu_times,
           std::vector<Edge> edges, std::uint32_t cpus, std::uint32_t gpus);

  std::size_t size() const { return cpu_.size(); }
  std::uint32_t cpus() const { return m_; }
  std::uint32_t gpus() const { return k_; }
  std::uint32_t machines(Pool pool) const { return pool == Pool::Cpu ? m_ : k_; }

  ProcTime cpu_time(TaskId task) const { return cpu_[task]; }
  ProcTime gpu_time(TaskId task) const { return gpu_[task]; }
  ProcTime time_on(TaskId task, Pool pool) const {
    return pool == Pool::Cpu ? cpu_[task] : gpu_[task];
  }
  // Smallest compatible processing time.
  double min_time(TaskId task) const;

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Edge> successors(TaskId task) const;
  std::vector<std::uint32_t> in_degrees() const;

  // True when no processing time is incompatible.
  bool all_finite() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<ProcTime> cpu_;
  std::vector<ProcTime> gpu_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> succ_offsets_;
  std::uint32_t m_ = 1;
  std::uint32_t k_ = 1;
};

// Kahn's algorithm; among ready tasks the smallest id goes first.
std::vector<TaskId> topological_order(const Instance& instance);

struct Allocation {
  std::vector<Pool> side;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Throws InvalidInput when the allocation has the wrong size or places a task
// on a pool where it is incompatible.
void check_allocation(const Instance& instance, const Allocation& allocation);

struct Placement {
  Pool pool = Pool::Cpu;
  std::uint32_t index = 0;

  friend constexpr bool operator==(const Placement&, const Placement&) = default;
};

struct Schedule {
  std::vector<double> start;
  std::vector<Placement> machine;
  double makespan = 0.0;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Duration of a task on the pool it was placed on (must be compatible).
double duration_on(const Instance& instance, TaskId task, Pool pool);

// max_j (start + duration) under the schedule's placements; 0 when empty.
double compute_makespan(const Instance& instance, const Schedule& schedule);

enum class ViolationKind {
  Size,
  Allocation,
  Incompatible,
  MachineIndex,
  NegativeStart,
  Precedence,
  Overlap,
  Makespan,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // "task 3", "edge 0->1", "cpu 2"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks every schedule invariant and reports all violations found.
ValidationReport validate_schedule(const Instance& instance,
                                   const Allocation& allocation,
                                   const Schedule& schedule);

// Allocation implied by the pools recorded in a schedule.
Allocation allocation_of(const Schedule& schedule);

}  // namespace hsched
