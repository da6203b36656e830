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
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsched/core.hpp"

namespace hsched {

// Portable draws on top of mt19937_64, whose output sequence is fixed by the
// standard (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }
  // Inclusive range.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform_int(0, i - 1)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct TimeRange {
  double lo = 1.0;
  double hi = 10.0;
};

struct RandomDagParams {
  std::size_t tasks = 0;
  std::size_t layers = 1;
  double edge_prob = 0.0;
  TimeRange cpu;
  TimeRange gpu;
  std::uint32_t m = 1;
  std::uint32_t k = 1;
  std::uint64_t seed = 0;
};

// Task j goes to layer j mod layers; each pair (u in layer l, v in layer l+1)
// becomes an edge with probability edge_prob; times are uniform in range.
Instance random_layered_dag(const RandomDagParams& params);

// Parameters of the index-th instance of a seeded benchmark corpus:
// n in [5, 200], m in [1, 16], k in [1, m], about one to three successors
// per task, times in [1, 10] on both pools.
RandomDagParams benchmark_params(std::uint64_t seed, std::size_t index);

// ---------------------------------------------------------------------------
// Layered-graph reduction.

struct ReductionParams {
  std::uint32_t q = 3;    // layer count, multiple of 3
  std::uint32_t Q = 2;    // classes per layer, > 1
  std::uint32_t n = 3;    // vertices per layer, > Q
  double epsilon = 0.25;  // (0, 1/Q^2]
  double delta = 0.25;    // (0, 1/(2Q)]

  void check() const;  // throws InvalidInput
};

// q layers of n vertices; vertex v of layer l has global id l*n + v.
struct QPartiteGraph {
  std::uint32_t layer_count = 0;
  std::uint32_t layer_size = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (layer l, layer l+1)
  std::vector<std::uint32_t> planted;  // class label per vertex, or empty

  std::uint32_t layer_of(std::uint32_t vertex) const { return vertex / layer_size; }
  std::uint32_t index_in_layer(std::uint32_t vertex) const { return vertex % layer_size; }
  bool has_planted() const { return !planted.empty(); }

  // Throws InvalidInput on edges outside adjacent layers or bad label arrays.
  void check() const;
};

// Balanced planted partition (labels v mod Q, shuffled per layer by the
// seed); every edge from class j1 to class j2 >= j1 across adjacent layers is
// kept with probability edge_prob. Throws InvalidInput when the balanced
// classes fall below the (1 - epsilon) n / Q floor.
QPartiteGraph qpartite_yes_graph(const ReductionParams& params, double edge_prob, std::uint64_t seed);

// Edges from class j1 to class j2 < j1, recomputed from the labels alone.
std::size_t planted_order_violations(const QPartiteGraph& graph);

std::string graph_to_json(const QPartiteGraph& graph);
QPartiteGraph parse_graph(std::string_view json_text);

struct ReductionOptions {
  std::uint64_t max_tasks = 100'000'000;
  std::uint64_t max_arcs = 100'000'000;
};

// Sizes of the reduction, computed without materializing it.
struct ReductionShape {
  std::uint64_t cpus = 0;
  std::uint64_t gpus = 0;
  std::uint64_t type_a = 0;  // GPU tasks per vertex of layers 3z+1
  std::uint64_t type_b = 0;  // CPU tasks per vertex of layers 3z+2
  std::uint64_t type_c = 0;  // chain length per vertex of layers 3z+3
  std::uint64_t tasks = 0;
  std::uint64_t arcs = 0;
};

// m = ceil((1 + Q eps) n^4), k = ceil((1 + Q eps) n^2).
ReductionShape reduction_shape(const QPartiteGraph& graph, const ReductionParams& params);
ReductionShape corollary_shape(const QPartiteGraph& graph, const ReductionParams& params,
                               std::uint64_t m_target);

// Related-machines reduction: GPU tasks have (cpu, gpu) = (n, 1), CPU tasks
// (1, 1/n). Tasks are numbered layer by layer, vertex by vertex. Throws
// CapacityExceeded (with the required cap) past the configured limits.
Instance reduction_instance(const QPartiteGraph& graph, const ReductionParams& params,
                            const ReductionOptions& options = {});

// Incompatible variant on m_target >= k CPUs: GPU tasks cannot run on CPUs
// and vice versa, and each CPU set holds floor(Q m_target n / k) tasks.
Instance corollary_instance(const QPartiteGraph& graph, const ReductionParams& params,
                            std::uint64_t m_target, const ReductionOptions& options = {});

// Pipelined unit-slot schedule for a planted graph: the tasks of class j in
// the i-th set of a triplet run in slot [i + j - 1, i + j). Works for both
// reduction and corollary instances built from `graph`. Throws InvalidInput
// when labels are missing, violate the YES ordering, or a slot overflows a
// pool (the message names the slot).
Schedule yes_case_schedule(const Instance& instance, const QPartiteGraph& graph,
                           const ReductionParams& params);

struct GapReport {
  double yes_upper = 0.0;  // (q + 3) Q / 3
  double no_lower = 0.0;   // (q / 3)(ma + mb + mc)
  double ma = 0.0;         // (Q - 2) / (Q + 2) Q
  double mb = 0.0;         // (Q - 2) / (Q + 3) Q
  double mc = 0.0;         // Q - 2
};

GapReport gap_report(const ReductionParams& params);

}  // namespace hsched
