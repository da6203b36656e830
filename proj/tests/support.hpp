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


// Helpers shared by the test binaries. The checks here are written against
// the raw instance data and never call into the code they are checking.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hsched/bounds.hpp"
#include "hsched/core.hpp"
#include "hsched/genlab.hpp"
#include "hsched/lp.hpp"

namespace hsched::testing {

inline Instance make_instance(const std::vector<double>& cpu, const std::vector<double>& gpu,
                              std::vector<Edge> edges, std::uint32_t m, std::uint32_t k) {
  std::vector<ProcTime> c;
  std::vector<ProcTime> g;
  for (double v : cpu) c.push_back(v < 0 ? ProcTime::incompatible() : ProcTime::finite(v));
  for (double v : gpu) g.push_back(v < 0 ? ProcTime::incompatible() : ProcTime::finite(v));
  return Instance(std::move(c), std::move(g), std::move(edges), m, k);
}

inline double duration(const Instance& inst, TaskId j, Pool pool) {
  return (pool == Pool::Cpu ? inst.cpu_time(j) : inst.gpu_time(j)).value();
}

// Independent feasibility scan: sorts every machine's intervals by start time
// and compares neighbours, then checks every arc directly.
inline bool independently_feasible(const Instance& inst, const Schedule& s, double tol = 1e-9) {
  const std::size_t n = inst.size();
  if (s.start.size() != n || s.machine.size() != n) return false;
  struct Interval {
    int pool;
    std::uint32_t index;
    double begin;
    double end;
  };
  std::vector<Interval> all;
  double last = 0.0;
  for (TaskId j = 0; j < n; ++j) {
    const Placement p = s.machine[j];
    if (!inst.time_on(j, p.pool).compatible()) return false;
    if (p.index >= inst.machines(p.pool)) return false;
    if (s.start[j] < -tol) return false;
    const double end = s.start[j] + duration(inst, j, p.pool);
    all.push_back({p.pool == Pool::Cpu ? 0 : 1, p.index, s.start[j], end});
    last = std::max(last, end);
  }
  std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) {
    if (a.pool != b.pool) return a.pool < b.pool;
    if (a.index != b.index) return a.index < b.index;
    return a.begin < b.begin;
  });
  for (std::size_t i = 1; i < all.size(); ++i) {
    const Interval& a = all[i - 1];
    const Interval& b = all[i];
    if (a.pool == b.pool && a.index == b.index && b.begin < a.end - tol) return false;
  }
  for (const Edge& e : inst.edges()) {
    const double end = s.start[e.from] + duration(inst, e.from, s.machine[e.from].pool);
    if (s.start[e.to] < end - tol) return false;
  }
  return std::abs(last - s.makespan) <= 1e-9 * std::max(1.0, last);
}

// W_cpu/m + W_gpu/k + CP under the allocation the schedule uses, from scratch.
inline double graham_bound(const Instance& inst, const Schedule& s) {
  const std::size_t n = inst.size();
  double w_cpu = 0.0;
  double w_gpu = 0.0;
  std::vector<double> d(n);
  for (TaskId j = 0; j < n; ++j) {
    d[j] = duration(inst, j, s.machine[j].pool);
    (s.machine[j].pool == Pool::Cpu ? w_cpu : w_gpu) += d[j];
  }
  // Longest path by repeated relaxation (Bellman-Ford style, n rounds).
  std::vector<double> finish = d;
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (const Edge& e : inst.edges()) {
      if (finish[e.from] + d[e.to] > finish[e.to]) {
        finish[e.to] = finish[e.from] + d[e.to];
        changed = true;
      }
    }
    if (!changed) break;
  }
  double cp = 0.0;
  for (double f : finish) cp = std::max(cp, f);
  return w_cpu / inst.cpus() + w_gpu / inst.gpus() + cp;
}

inline bool within_graham(const Instance& inst, const Schedule& s) {
  return s.makespan <= graham_bound(inst, s) + 1e-6;
}

// Evaluates the relaxed allocation constraints at (x, C, Cmax) directly from
// the instance, returning the largest violation.
inline double relaxation_residual(const Instance& inst, const FractionalSolution& f) {
  const std::size_t n = inst.size();
  double worst = 0.0;
  auto bump = [&](double v) { worst = std::max(worst, v); };
  double cpu_load = 0.0;
  double gpu_load = 0.0;
  std::vector<double> dur(n);
  for (TaskId j = 0; j < n; ++j) {
    const double pc = inst.cpu_time(j).value();
    const double pg = inst.gpu_time(j).value();
    bump(-f.x[j]);
    bump(f.x[j] - 1.0);
    bump(-f.completion[j]);
    cpu_load += pc * f.x[j];
    gpu_load += pg * (1.0 - f.x[j]);
    dur[j] = pc * f.x[j] + pg * (1.0 - f.x[j]);
    bump(dur[j] - f.completion[j]);
    bump(f.completion[j] - f.objective);
  }
  bump(cpu_load / inst.cpus() - f.objective);
  bump(gpu_load / inst.gpus() - f.objective);
  for (const Edge& e : inst.edges()) bump(f.completion[e.from] + dur[e.to] - f.completion[e.to]);
  return worst;
}

inline Instance random_instance(std::uint64_t seed, std::size_t n, std::uint32_t m, std::uint32_t k,
                                double edge_prob = 0.3) {
  RandomDagParams p;
  p.tasks = n;
  p.layers = std::max<std::size_t>(1, n / 3);
  p.edge_prob = edge_prob;
  p.m = m;
  p.k = k;
  p.seed = seed;
  return random_layered_dag(p);
}

}  // namespace hsched::testing
