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

// Exact makespan oracle for tiny instances.
//
// Search space. Makespan is a regular objective, so some optimal schedule is
// semi-active: every task starts at time 0 or at the completion time of a
// predecessor or of the previous task on its machine. Take such a schedule
// and list its tasks by (start, id). Placing them in that order, each on its
// machine at max(machine free time, latest predecessor completion),
// reproduces the schedule exactly, since the tasks already on a machine are
// exactly those that precede it there. The search therefore branches on
// (next task, pool, machine) and only keeps placements whose (start, id)
// is lexicographically after the previous placement. Allocations are
// decided during the same branching, so all 2^n pool choices (minus
// incompatible ones) are covered.
//
// Symmetry. Machines of one pool with equal free times are interchangeable,
// so only the lowest-indexed of them is tried.
//
// Pruning. With s the start of the last placement, every remaining task
// starts at or after s, so the optimum below a node is at least
//   - the current makespan,
//   - max over ready tasks j of max(s, ready time of j) + tail(j), where
//     tail(j) is the heaviest path from j using per-task minimum times,
//   - (sum over machines of max(free time, s) + remaining minimum work)
//     divided by m + k.
// The incumbent starts at the serial schedule (all tasks back to back on
// their fastest pool), which is feasible.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hsched/bounds.hpp"
#include "hsched/error.hpp"

namespace hsched {

namespace {

class Oracle {
 public:
  explicit Oracle(const Instance& instance)
      : inst_(instance), n_(instance.size()), preds_left_(instance.in_degrees()),
        ready_at_(n_, 0.0), placed_(n_, 0), tail_(n_, 0.0),
        free_{std::vector<double>(instance.cpus(), 0.0), std::vector<double>(instance.gpus(), 0.0)} {
    const std::vector<TaskId> order = topological_order(instance);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      double longest = 0.0;
      for (const Edge& e : instance.successors(*it)) longest = std::max(longest, tail_[e.to]);
      tail_[*it] = instance.min_time(*it) + longest;
    }
    for (TaskId j = 0; j < n_; ++j) {
      remaining_work_ += instance.min_time(j);
    }
    incumbent_ = remaining_work_;
  }

  double solve() {
    search(0);
    return incumbent_;
  }

 private:
  double lower_bound() const {
    double bound = makespan_;
    double capacity = 0.0;
    for (const auto& pool : free_) {
      for (double f : pool) capacity += std::max(f, last_start_);
    }
    bound = std::max(bound, (capacity + remaining_work_) / static_cast<double>(inst_.cpus() + inst_.gpus()));
    for (TaskId j = 0; j < n_; ++j) {
      if (placed_[j] || preds_left_[j] != 0) continue;
      bound = std::max(bound, std::max(last_start_, ready_at_[j]) + tail_[j]);
    }
    return bound;
  }

  void search(std::size_t depth) {
    if (depth == n_) {
      incumbent_ = std::min(incumbent_, makespan_);
      return;
    }
    if (lower_bound() >= incumbent_ - 1e-12) return;

    for (TaskId j = 0; j < n_; ++j) {
      if (placed_[j] || preds_left_[j] != 0) continue;
      for (Pool pool : {Pool::Cpu, Pool::Gpu}) {
        const ProcTime time = inst_.time_on(j, pool);
        if (!time.compatible()) continue;
        std::vector<double>& machines = free_[pool == Pool::Cpu ? 0 : 1];
        for (std::size_t i = 0; i < machines.size(); ++i) {
          if (std::find(machines.begin(), machines.begin() + static_cast<std::ptrdiff_t>(i),
                        machines[i]) != machines.begin() + static_cast<std::ptrdiff_t>(i)) {
            continue;
          }
          const double start = std::max(machines[i], ready_at_[j]);
          if (start < last_start_ || (start == last_start_ && depth > 0 && j < last_task_)) continue;
          place(j, machines[i], start, time.value());
          search(depth + 1);
          unplace(j, machines[i]);
        }
      }
    }
  }

  struct Saved {
    double free;
    double last_start;
    TaskId last_task;
    double makespan;
    std::vector<double> ready_at;
  };

  void place(TaskId j, double& machine_free, double start, double duration) {
    Saved saved{machine_free, last_start_, last_task_, makespan_, {}};
    const double finish = start + duration;
    for (const Edge& e : inst_.successors(j)) {
      saved.ready_at.push_back(ready_at_[e.to]);
      ready_at_[e.to] = std::max(ready_at_[e.to], finish);
      --preds_left_[e.to];
    }
    stack_.push_back(std::move(saved));
    machine_free = finish;
    last_start_ = start;
    last_task_ = j;
    makespan_ = std::max(makespan_, finish);
    placed_[j] = 1;
    remaining_work_ -= inst_.min_time(j);
  }

  void unplace(TaskId j, double& machine_free) {
    Saved saved = std::move(stack_.back());
    stack_.pop_back();
    std::size_t i = 0;
    for (const Edge& e : inst_.successors(j)) {
      ready_at_[e.to] = saved.ready_at[i++];
      ++preds_left_[e.to];
    }
    machine_free = saved.free;
    last_start_ = saved.last_start;
    last_task_ = saved.last_task;
    makespan_ = saved.makespan;
    placed_[j] = 0;
    remaining_work_ += inst_.min_time(j);
  }

  const Instance& inst_;
  std::size_t n_;
  std::vector<std::uint32_t> preds_left_;
  std::vector<double> ready_at_;
  std::vector<char> placed_;
  std::vector<double> tail_;
  std::vector<double> free_[2];
  std::vector<Saved> stack_;
  double remaining_work_ = 0.0;
  double last_start_ = 0.0;
  TaskId last_task_ = 0;
  double makespan_ = 0.0;
  double incumbent_ = std::numeric_limits<double>::infinity();
};

}  // namespace

double exact_makespan(const Instance& instance, const OracleLimits& limits) {
  if (instance.size() > limits.max_tasks ||
      std::size_t{instance.cpus()} + instance.gpus() > limits.max_machines) {
    throw CapacityExceeded("instance too large for oracle");
  }
  if (instance.size() == 0) return 0.0;
  return Oracle(instance).solve();
}

}  // namespace hsched
