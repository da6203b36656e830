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
#include <cmath>
#include <limits>

#include "hsched/error.hpp"
#include "hsched/genlab.hpp"

namespace hsched {

namespace {

enum class SetKind { A, B, C };

SetKind kind_of_layer(std::uint32_t layer) {
  switch (layer % 3) {
    case 0: return SetKind::A;
    case 1: return SetKind::B;
    default: return SetKind::C;
  }
}

// ceil((1 + Q eps) n^power), tolerant to rounding noise in the product.
std::uint64_t inflated_ceil(const ReductionParams& p, int power) {
  const long double x = (1.0L + static_cast<long double>(p.Q) * p.epsilon) *
                        std::pow(static_cast<long double>(p.n), power);
  return static_cast<std::uint64_t>(std::ceil(x - x * 1e-12L));
}

void check_pair(const QPartiteGraph& graph, const ReductionParams& params) {
  params.check();
  graph.check();
  if (graph.layer_count != params.q || graph.layer_size != params.n) {
    throw InvalidInput("graph has " + std::to_string(graph.layer_count) + " layers of " +
                       std::to_string(graph.layer_size) + " vertices, parameters say q=" +
                       std::to_string(params.q) + ", n=" + std::to_string(params.n));
  }
}

ReductionShape make_shape(const QPartiteGraph& graph, const ReductionParams& params,
                          std::uint64_t cpus, std::uint64_t type_b) {
  ReductionShape shape;
  const std::uint64_t n = params.n;
  const std::uint64_t Q = params.Q;
  shape.cpus = cpus;
  shape.gpus = inflated_ceil(params, 2);
  shape.type_a = Q * n - Q;
  shape.type_b = type_b;
  shape.type_c = Q - 2;
  shape.tasks = (params.q / 3) * n * (shape.type_a + shape.type_b + shape.type_c);
  auto block = [&](std::uint32_t layer) {
    switch (kind_of_layer(layer)) {
      case SetKind::A: return shape.type_a;
      case SetKind::B: return shape.type_b;
      case SetKind::C: return shape.type_c;
    }
    return std::uint64_t{0};
  };
  if (shape.type_c > 1) shape.arcs = (params.q / 3) * n * (shape.type_c - 1);
  for (const auto& [u, v] : graph.edges) {
    shape.arcs += block(graph.layer_of(u)) * block(graph.layer_of(v));
  }
  return shape;
}

// First task id of each layer, numbering tasks layer by layer, vertex by vertex.
std::vector<std::uint64_t> layer_offsets(const ReductionShape& shape, const ReductionParams& params) {
  std::vector<std::uint64_t> offsets(params.q + 1, 0);
  for (std::uint32_t l = 0; l < params.q; ++l) {
    const std::uint64_t block = kind_of_layer(l) == SetKind::A   ? shape.type_a
                                : kind_of_layer(l) == SetKind::B ? shape.type_b
                                                                 : shape.type_c;
    offsets[l + 1] = offsets[l] + block * params.n;
  }
  return offsets;
}

std::uint64_t block_size(const ReductionShape& shape, std::uint32_t layer) {
  switch (kind_of_layer(layer)) {
    case SetKind::A: return shape.type_a;
    case SetKind::B: return shape.type_b;
    case SetKind::C: return shape.type_c;
  }
  return 0;
}

Instance build(const QPartiteGraph& graph, const ReductionParams& params, const ReductionShape& shape,
               bool incompatible, const ReductionOptions& options) {
  if (shape.tasks > options.max_tasks) {
    throw CapacityExceeded("reduction needs " + std::to_string(shape.tasks) +
                           " tasks; raise the task cap to at least " + std::to_string(shape.tasks));
  }
  if (shape.arcs > options.max_arcs) {
    throw CapacityExceeded("reduction needs " + std::to_string(shape.arcs) +
                           " arcs; raise the arc cap to at least " + std::to_string(shape.arcs));
  }
  if (shape.cpus > std::numeric_limits<std::uint32_t>::max() ||
      shape.tasks >= std::numeric_limits<TaskId>::max()) {
    throw CapacityExceeded("reduction exceeds 32-bit task or machine indices");
  }

  const double n = params.n;
  const ProcTime one = ProcTime::finite(1.0);
  // GPU-type tasks: cpu = n * gpu = n. CPU-type tasks: cpu = n * gpu = 1.
  const ProcTime gpu_task_cpu = incompatible ? ProcTime::incompatible() : ProcTime::finite(n);
  const ProcTime cpu_task_gpu = incompatible ? ProcTime::incompatible() : ProcTime::finite(1.0 / n);

  std::vector<ProcTime> cpu;
  std::vector<ProcTime> gpu;
  cpu.reserve(shape.tasks);
  gpu.reserve(shape.tasks);
  for (std::uint32_t l = 0; l < params.q; ++l) {
    const std::uint64_t count = block_size(shape, l) * params.n;
    const bool cpu_set = kind_of_layer(l) == SetKind::B;
    cpu.insert(cpu.end(), count, cpu_set ? one : gpu_task_cpu);
    gpu.insert(gpu.end(), count, cpu_set ? cpu_task_gpu : one);
  }

  const std::vector<std::uint64_t> offsets = layer_offsets(shape, params);
  auto first_task = [&](std::uint32_t vertex) {
    const std::uint32_t l = graph.layer_of(vertex);
    return offsets[l] + graph.index_in_layer(vertex) * block_size(shape, l);
  };

  std::vector<Edge> arcs;
  arcs.reserve(shape.arcs);
  for (std::uint32_t l = 2; l < params.q; l += 3) {
    for (std::uint32_t v = 0; v < params.n; ++v) {
      const std::uint64_t first = first_task(l * params.n + v);
      for (std::uint64_t i = 1; i < shape.type_c; ++i) {
        arcs.push_back({static_cast<TaskId>(first + i - 1), static_cast<TaskId>(first + i)});
      }
    }
  }
  for (const auto& [u, v] : graph.edges) {
    const std::uint64_t from = first_task(u);
    const std::uint64_t to = first_task(v);
    const std::uint64_t from_size = block_size(shape, graph.layer_of(u));
    const std::uint64_t to_size = block_size(shape, graph.layer_of(v));
    for (std::uint64_t a = 0; a < from_size; ++a) {
      for (std::uint64_t b = 0; b < to_size; ++b) {
        arcs.push_back({static_cast<TaskId>(from + a), static_cast<TaskId>(to + b)});
      }
    }
  }
  return Instance(std::move(cpu), std::move(gpu), std::move(arcs),
                  static_cast<std::uint32_t>(shape.cpus), static_cast<std::uint32_t>(shape.gpus));
}

}  // namespace

ReductionShape reduction_shape(const QPartiteGraph& graph, const ReductionParams& params) {
  check_pair(graph, params);
  const std::uint64_t n = params.n;
  return make_shape(graph, params, inflated_ceil(params, 4), std::uint64_t{params.Q} * n * n * n);
}

ReductionShape corollary_shape(const QPartiteGraph& graph, const ReductionParams& params,
                               std::uint64_t m_target) {
  check_pair(graph, params);
  const std::uint64_t k = inflated_ceil(params, 2);
  if (m_target < k) {
    throw InvalidInput("m_target " + std::to_string(m_target) + " is below k = " + std::to_string(k));
  }
  return make_shape(graph, params, m_target, std::uint64_t{params.Q} * m_target * params.n / k);
}

Instance reduction_instance(const QPartiteGraph& graph, const ReductionParams& params,
                            const ReductionOptions& options) {
  return build(graph, params, reduction_shape(graph, params), false, options);
}

Instance corollary_instance(const QPartiteGraph& graph, const ReductionParams& params,
                            std::uint64_t m_target, const ReductionOptions& options) {
  return build(graph, params, corollary_shape(graph, params, m_target), true, options);
}

Schedule yes_case_schedule(const Instance& instance, const QPartiteGraph& graph,
                           const ReductionParams& params) {
  check_pair(graph, params);
  if (!graph.has_planted()) throw InvalidInput("graph has no planted labels");
  for (std::uint32_t label : graph.planted) {
    if (label >= params.Q) throw InvalidInput("planted label out of range 0..Q-1");
  }
  if (planted_order_violations(graph) != 0) {
    throw InvalidInput("graph edges contradict the planted partition");
  }

  // Recover the CPU set size from the task count; everything else is fixed.
  ReductionShape shape = make_shape(graph, params, instance.cpus(), 0);
  const std::uint64_t per_triplet_vertex = std::uint64_t{params.q / 3} * params.n;
  const std::uint64_t rest = instance.size() - std::min<std::uint64_t>(instance.size(), shape.tasks);
  if (instance.size() < shape.tasks || rest % per_triplet_vertex != 0 ||
      instance.gpus() != shape.gpus) {
    throw InvalidInput("instance does not match the reduction of this graph");
  }
  shape.type_b = rest / per_triplet_vertex;
  shape.tasks = instance.size();

  const std::uint32_t Q = params.Q;
  const std::uint64_t last_slot = std::uint64_t{Q} * params.q / 3 + Q - 1;
  std::vector<std::uint64_t> used_cpu(last_slot + 1, 0);
  std::vector<std::uint64_t> used_gpu(last_slot + 1, 0);

  Schedule schedule;
  schedule.start.resize(instance.size());
  schedule.machine.resize(instance.size());
  const std::vector<std::uint64_t> offsets = layer_offsets(shape, params);

  for (std::uint32_t l = 0; l < params.q; ++l) {
    const std::uint64_t z = l / 3;
    const SetKind kind = kind_of_layer(l);
    const Pool pool = kind == SetKind::B ? Pool::Cpu : Pool::Gpu;
    const std::uint64_t block = block_size(shape, l);
    for (std::uint32_t v = 0; v < params.n; ++v) {
      const std::uint64_t label = graph.planted[std::size_t{l} * params.n + v];
      const std::uint64_t first = offsets[l] + v * block;
      for (std::uint64_t i = 0; i < block; ++i) {
        const TaskId task = static_cast<TaskId>(first + i);
        const ProcTime time = instance.time_on(task, pool);
        if (!time.compatible() || time.value() != 1.0) {
          throw InvalidInput("instance does not match the reduction of this graph");
        }
        // Set index within the triplet: A -> zQ+1, B -> zQ+2, C chain link i -> zQ+3+i.
        const std::uint64_t set = z * Q + (kind == SetKind::A ? 1 : kind == SetKind::B ? 2 : 3 + i);
        const std::uint64_t slot = set + label;
        std::uint64_t& used = pool == Pool::Cpu ? used_cpu[slot] : used_gpu[slot];
        if (used >= instance.machines(pool)) {
          throw InvalidInput("slot [" + std::to_string(slot - 1) + ", " + std::to_string(slot) +
                             ") needs more than " + std::to_string(instance.machines(pool)) + " " +
                             to_string(pool) + "s");
        }
        schedule.start[task] = static_cast<double>(slot - 1);
        schedule.machine[task] = Placement{pool, static_cast<std::uint32_t>(used++)};
        schedule.makespan = std::max(schedule.makespan, static_cast<double>(slot));
      }
    }
  }
  return schedule;
}

}  // namespace hsched
