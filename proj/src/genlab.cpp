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

#include "hsched/genlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "hsched/error.hpp"

namespace hsched {

namespace {

void check_range(const TimeRange& range, const char* what) {
  if (!(range.lo > 0.0) || !(range.lo <= range.hi) || !std::isfinite(range.hi)) {
    throw InvalidInput(std::string(what) + " time range must satisfy 0 < lo <= hi");
  }
}

}  // namespace

Instance random_layered_dag(const RandomDagParams& params) {
  if (params.layers < 1) throw InvalidInput("layers must be at least 1");
  if (!(params.edge_prob >= 0.0 && params.edge_prob <= 1.0)) {
    throw InvalidInput("edge_prob must be in [0, 1]");
  }
  check_range(params.cpu, "cpu");
  check_range(params.gpu, "gpu");
  if (params.k < 1 || params.m < params.k) throw InvalidInput("m < k");

  Rng rng(params.seed);
  const std::size_t n = params.tasks;
  std::vector<ProcTime> cpu;
  std::vector<ProcTime> gpu;
  cpu.reserve(n);
  gpu.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    cpu.push_back(ProcTime::finite(rng.uniform(params.cpu.lo, params.cpu.hi)));
    gpu.push_back(ProcTime::finite(rng.uniform(params.gpu.lo, params.gpu.hi)));
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t layer = u % params.layers;
    if (layer + 1 >= params.layers) continue;
    for (std::size_t v = layer + 1; v < n; v += params.layers) {
      if (rng.bernoulli(params.edge_prob)) {
        edges.push_back({static_cast<TaskId>(u), static_cast<TaskId>(v)});
      }
    }
  }
  return Instance(std::move(cpu), std::move(gpu), std::move(edges), params.m, params.k);
}

RandomDagParams benchmark_params(std::uint64_t seed, std::size_t index) {
  // splitmix64 of (seed, index) so that corpus members are independent streams.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  Rng rng(z);
  RandomDagParams params;
  params.tasks = rng.uniform_int(5, 200);
  params.layers = rng.uniform_int(1, std::max<std::uint64_t>(1, params.tasks / 4));
  const double layer_width = static_cast<double>(params.tasks) / params.layers;
  params.edge_prob = std::min(1.0, rng.uniform(1.0, 3.0) / layer_width);
  params.m = static_cast<std::uint32_t>(rng.uniform_int(1, 16));
  params.k = static_cast<std::uint32_t>(rng.uniform_int(1, params.m));
  params.seed = rng.uniform_int(0, std::numeric_limits<std::uint64_t>::max() - 1);
  return params;
}

void ReductionParams::check() const {
  if (q == 0 || q % 3 != 0) throw InvalidInput("q must be a positive multiple of 3");
  if (Q < 2) throw InvalidInput("Q must be greater than 1");
  if (n <= Q) throw InvalidInput("n must be greater than Q");
  // Slack so that decimal inputs such as 0.0625 for 1/16 are accepted.
  const double eps_cap = 1.0 / (static_cast<double>(Q) * Q);
  if (!(epsilon > 0.0) || epsilon > eps_cap * (1.0 + 1e-12)) {
    throw InvalidInput("epsilon must be in (0, 1/Q^2]");
  }
  const double delta_cap = 1.0 / (2.0 * Q);
  if (!(delta > 0.0) || delta > delta_cap * (1.0 + 1e-12)) {
    throw InvalidInput("delta must be in (0, 1/(2Q)]");
  }
}

void QPartiteGraph::check() const {
  if (layer_count == 0 || layer_size == 0) throw InvalidInput("graph must have layers");
  const std::uint64_t vertices = std::uint64_t{layer_count} * layer_size;
  for (const auto& [u, v] : edges) {
    if (u >= vertices || v >= vertices || layer_of(v) != layer_of(u) + 1) {
      throw InvalidInput("graph edge " + std::to_string(u) + "->" + std::to_string(v) +
                         " does not join adjacent layers");
    }
  }
  if (!planted.empty() && planted.size() != vertices) {
    throw InvalidInput("planted labels must cover every vertex");
  }
}

QPartiteGraph qpartite_yes_graph(const ReductionParams& params, double edge_prob, std::uint64_t seed) {
  params.check();
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw InvalidInput("edge_prob must be in [0, 1]");
  const std::uint32_t n = params.n;
  const std::uint32_t Q = params.Q;
  const double floor_size = (1.0 - params.epsilon) * n / Q;
  if (static_cast<double>(n / Q) < floor_size) {
    throw InvalidInput("balanced classes of size " + std::to_string(n / Q) +
                       " violate the (1-epsilon)n/Q floor " + std::to_string(floor_size));
  }

  Rng rng(seed);
  QPartiteGraph graph;
  graph.layer_count = params.q;
  graph.layer_size = n;
  graph.planted.resize(std::size_t{params.q} * n);
  std::vector<std::uint32_t> labels(n);
  for (std::uint32_t layer = 0; layer < params.q; ++layer) {
    for (std::uint32_t v = 0; v < n; ++v) labels[v] = v % Q;
    rng.shuffle(labels);
    std::copy(labels.begin(), labels.end(), graph.planted.begin() + std::size_t{layer} * n);
  }
  for (std::uint32_t layer = 0; layer + 1 < params.q; ++layer) {
    for (std::uint32_t v = 0; v < n; ++v) {
      const std::uint32_t from = layer * n + v;
      for (std::uint32_t w = 0; w < n; ++w) {
        const std::uint32_t to = (layer + 1) * n + w;
        if (graph.planted[from] > graph.planted[to]) continue;
        if (rng.bernoulli(edge_prob)) graph.edges.emplace_back(from, to);
      }
    }
  }
  return graph;
}

std::size_t planted_order_violations(const QPartiteGraph& graph) {
  std::size_t violations = 0;
  for (const auto& [u, v] : graph.edges) {
    if (graph.planted.at(u) > graph.planted.at(v)) ++violations;
  }
  return violations;
}

std::string graph_to_json(const QPartiteGraph& graph) {
  nlohmann::json layers = nlohmann::json::array();
  for (std::uint32_t l = 0; l < graph.layer_count; ++l) {
    nlohmann::json ids = nlohmann::json::array();
    for (std::uint32_t v = 0; v < graph.layer_size; ++v) ids.push_back(l * graph.layer_size + v);
    layers.push_back(std::move(ids));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : graph.edges) edges.push_back({u, v});
  nlohmann::json doc = {{"layers", layers}, {"edges", edges}, {"planted", graph.planted}};
  return doc.dump();
}

QPartiteGraph parse_graph(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("parse error: ") + e.what());
  }
  try {
    QPartiteGraph graph;
    const auto& layers = doc.at("layers");
    graph.layer_count = static_cast<std::uint32_t>(layers.size());
    graph.layer_size = layers.empty() ? 0 : static_cast<std::uint32_t>(layers.at(0).size());
    for (std::uint32_t l = 0; l < graph.layer_count; ++l) {
      const auto& ids = layers.at(l);
      if (ids.size() != graph.layer_size) throw InvalidInput("layers must have equal sizes");
      for (std::uint32_t v = 0; v < graph.layer_size; ++v) {
        if (ids.at(v).get<std::uint32_t>() != l * graph.layer_size + v) {
          throw InvalidInput("layer ids must be numbered layer by layer");
        }
      }
    }
    for (const auto& e : doc.at("edges")) {
      graph.edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
    }
    if (doc.contains("planted")) graph.planted = doc.at("planted").get<std::vector<std::uint32_t>>();
    graph.check();
    return graph;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("parse error: ") + e.what());
  }
}

GapReport gap_report(const ReductionParams& params) {
  params.check();
  const double q = params.q;
  const double Q = params.Q;
  GapReport report;
  report.yes_upper = (q + 3.0) * Q / 3.0;
  report.ma = (Q - 2.0) / (Q + 2.0) * Q;
  report.mb = (Q - 2.0) / (Q + 3.0) * Q;
  report.mc = Q - 2.0;
  report.no_lower = q / 3.0 * (report.ma + report.mb + report.mc);
  return report;
}

}  // namespace hsched
