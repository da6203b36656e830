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

#include "hsched/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hsched/error.hpp"
#include "hsched/lp.hpp"

namespace hsched {

LoadProfile load_and_cp(const Instance& instance, const Allocation& allocation) {
  check_allocation(instance, allocation);
  LoadProfile profile;
  std::vector<double> finish(instance.size(), 0.0);
  for (TaskId j : topological_order(instance)) {
    const Pool pool = allocation.side[j];
    const double d = duration_on(instance, j, pool);
    (pool == Pool::Cpu ? profile.cpu_work : profile.gpu_work) += d;
    finish[j] += d;
    profile.critical_path = std::max(profile.critical_path, finish[j]);
    for (const Edge& e : instance.successors(j)) finish[e.to] = std::max(finish[e.to], finish[j]);
  }
  return profile;
}

double list_schedule_bound(const Instance& instance, const LoadProfile& profile) {
  return profile.cpu_work / instance.cpus() + profile.gpu_work / instance.gpus() +
         profile.critical_path;
}

double theoretical_ratio(std::uint32_t m, std::uint32_t k) {
  const double ratio = static_cast<double>(k) / static_cast<double>(m);
  return 3.0 + 4.0 * std::sqrt((1.0 - ratio) / (2.0 - ratio));
}

BoundsReport compute_bounds(const Instance& instance, const std::optional<OracleLimits>& limits) {
  BoundsReport report;
  if (instance.all_finite()) report.lp_bound = solve_relaxation(instance).objective;
  double cpu_only = 0.0;
  double gpu_only = 0.0;
  double min_total = 0.0;
  std::vector<double> finish(instance.size(), 0.0);
  for (TaskId j : topological_order(instance)) {
    if (!instance.gpu_time(j).compatible()) cpu_only += instance.cpu_time(j).value();
    if (!instance.cpu_time(j).compatible()) gpu_only += instance.gpu_time(j).value();
    const double d = instance.min_time(j);
    min_total += d;
    finish[j] += d;
    report.min_critical_path = std::max(report.min_critical_path, finish[j]);
    for (const Edge& e : instance.successors(j)) finish[e.to] = std::max(finish[e.to], finish[j]);
  }
  report.load_cpu = cpu_only / instance.cpus();
  report.load_gpu = gpu_only / instance.gpus();
  report.load_mixed = min_total / (instance.cpus() + instance.gpus());
  if (limits) report.exact_opt = exact_makespan(instance, *limits);
  return report;
}

std::string bounds_to_json(const BoundsReport& report) {
  nlohmann::json doc;
  doc["lp_bound"] = report.lp_bound ? nlohmann::json(*report.lp_bound) : nlohmann::json(nullptr);
  doc["load_cpu"] = report.load_cpu;
  doc["load_gpu"] = report.load_gpu;
  doc["load_mixed"] = report.load_mixed;
  doc["min_critical_path"] = report.min_critical_path;
  doc["exact_opt"] = report.exact_opt ? nlohmann::json(*report.exact_opt) : nlohmann::json(nullptr);
  return doc.dump();
}

}  // namespace hsched
