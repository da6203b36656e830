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
#include <limits>
#include <string>
#include <vector>

#include "hsched/core.hpp"

namespace hsched {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LpRow {
  std::vector<double> coefficients;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

// min objective . x  subject to rows and lower <= x <= upper (lower >= 0).
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;  // +infinity when unbounded above
  std::vector<std::string> names;  // optional, used by to_lp_text

  std::size_t variables() const { return objective.size(); }
  // Throws InvalidInput when row widths or bounds are inconsistent.
  void check() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
};

inline constexpr double kPivotTolerance = 1e-9;
inline constexpr double kFeasibilityTolerance = 1e-7;

// Two-phase dense tableau simplex, Bland's rule for both entering and
// leaving variables. Deterministic for identical input.
LpResult simplex_solve(const LpProblem& problem);

// CPLEX-LP-style text: Minimize / Subject To / Bounds / End.
std::string to_lp_text(const LpProblem& problem);

// Relaxed allocation LP over (x_0..x_{n-1}, C_0..C_{n-1}, C_max):
//   row 0:        (1/m) sum cpu_j x_j - C_max <= 0
//   row 1:        -(1/k) sum gpu_j x_j - C_max <= -(1/k) sum gpu_j
//   per edge i->j:          C_i - C_j + (cpu_j - gpu_j) x_j <= -gpu_j
//   per source j (indeg 0):       - C_j + (cpu_j - gpu_j) x_j <= -gpu_j
//   per task j:             C_j - C_max <= 0
// Sources get their own row in place of an edge from an implicit zero-time
// root task. Throws InvalidInput on incompatible times.
LpProblem build_allocation_lp(const Instance& instance);

struct AllocationLpLayout {
  std::size_t tasks;
  std::size_t x(std::size_t j) const { return j; }
  std::size_t completion(std::size_t j) const { return tasks + j; }
  std::size_t cmax() const { return 2 * tasks; }
};

struct FractionalSolution {
  std::vector<double> x;           // relaxed CPU share per task, in [0, 1]
  std::vector<double> completion;  // C_j
  double objective = 0.0;          // C_max of the relaxation
};

struct RelaxationOptions {
  std::size_t max_tasks = 5000;
};

// Solves the relaxed LP. Throws InvalidInput for incompatible times,
// CapacityExceeded above max_tasks, SolverFailure if the solve is not optimal.
FractionalSolution solve_relaxation(const Instance& instance, const RelaxationOptions& options = {});

}  // namespace hsched
