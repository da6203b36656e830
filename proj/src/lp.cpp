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

#include <algorithm>
#include <limits>

#include "hsched/error.hpp"
#include "hsched/lp.hpp"

namespace hsched {

LpProblem build_allocation_lp(const Instance& instance) {
  if (!instance.all_finite()) throw InvalidInput("LP requires finite times");
  const std::size_t n = instance.size();
  const AllocationLpLayout at{n};
  const std::size_t width = 2 * n + 1;
  const double inf = std::numeric_limits<double>::infinity();

  LpProblem lp;
  lp.objective.assign(width, 0.0);
  lp.objective[at.cmax()] = 1.0;
  lp.lower.assign(width, 0.0);
  lp.upper.assign(width, inf);
  lp.names.resize(width);
  for (std::size_t j = 0; j < n; ++j) {
    lp.upper[at.x(j)] = 1.0;
    lp.names[at.x(j)] = "x" + std::to_string(j);
    lp.names[at.completion(j)] = "C" + std::to_string(j);
  }
  lp.names[at.cmax()] = "Cmax";

  auto row = [&](Relation rel, double rhs) -> std::vector<double>& {
    lp.rows.push_back({std::vector<double>(width, 0.0), rel, rhs});
    return lp.rows.back().coefficients;
  };

  const double m = instance.cpus();
  const double k = instance.gpus();
  {
    auto& cpu_load = row(Relation::LessEqual, 0.0);
    for (TaskId j = 0; j < n; ++j) cpu_load[at.x(j)] = instance.cpu_time(j).value() / m;
    cpu_load[at.cmax()] = -1.0;
  }
  {
    double gpu_total = 0.0;
    for (TaskId j = 0; j < n; ++j) gpu_total += instance.gpu_time(j).value();
    auto& gpu_load = row(Relation::LessEqual, -gpu_total / k);
    for (TaskId j = 0; j < n; ++j) gpu_load[at.x(j)] = -instance.gpu_time(j).value() / k;
    gpu_load[at.cmax()] = -1.0;
  }

  // C_i + cpu_j x_j + gpu_j (1 - x_j) <= C_j, with C_i = 0 for the implicit root.
  auto path_row = [&](std::size_t pred, TaskId j, bool has_pred) {
    const double cpu = instance.cpu_time(j).value();
    const double gpu = instance.gpu_time(j).value();
    auto& r = row(Relation::LessEqual, -gpu);
    if (has_pred) r[at.completion(pred)] = 1.0;
    r[at.completion(j)] = -1.0;
    r[at.x(j)] = cpu - gpu;
  };
  const std::vector<std::uint32_t> indeg = instance.in_degrees();
  for (TaskId j = 0; j < n; ++j) {
    if (indeg[j] == 0) path_row(0, j, false);
  }
  for (const Edge& e : instance.edges()) path_row(e.from, e.to, true);

  for (TaskId j = 0; j < n; ++j) {
    auto& r = row(Relation::LessEqual, 0.0);
    r[at.completion(j)] = 1.0;
    r[at.cmax()] = -1.0;
  }
  return lp;
}

FractionalSolution solve_relaxation(const Instance& instance, const RelaxationOptions& options) {
  if (instance.size() > options.max_tasks) {
    throw CapacityExceeded("LP relaxation refuses " + std::to_string(instance.size()) +
                           " tasks (cap " + std::to_string(options.max_tasks) + ")");
  }
  const LpProblem lp = build_allocation_lp(instance);
  const LpResult result = simplex_solve(lp);
  if (result.status != LpStatus::Optimal) {
    throw SolverFailure(std::string("allocation LP is ") + to_string(result.status));
  }
  const std::size_t n = instance.size();
  const AllocationLpLayout at{n};
  FractionalSolution solution;
  solution.x.resize(n);
  solution.completion.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    solution.x[j] = std::clamp(result.values[at.x(j)], 0.0, 1.0);
    solution.completion[j] = result.values[at.completion(j)];
  }
  solution.objective = result.values[at.cmax()];
  return solution;
}

}  // namespace hsched
