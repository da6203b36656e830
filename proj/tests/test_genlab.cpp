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


#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "hsched/error.hpp"
#include "hsched/io.hpp"
#include "support.hpp"

using namespace hsched;

namespace {

QPartiteGraph empty_graph(std::uint32_t q, std::uint32_t n) {
  QPartiteGraph g;
  g.layer_count = q;
  g.layer_size = n;
  return g;
}

// Task ranges per vertex recomputed from the counts alone: layer-major, vertex-minor.
std::vector<std::pair<std::uint64_t, std::uint64_t>> vertex_ranges(const ReductionParams& p,
                                                                   std::uint64_t type_b) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  std::uint64_t next = 0;
  for (std::uint32_t l = 0; l < p.q; ++l) {
    const std::uint64_t size = l % 3 == 0 ? std::uint64_t{p.Q} * p.n - p.Q : l % 3 == 1 ? type_b : p.Q - 2;
    for (std::uint32_t v = 0; v < p.n; ++v) {
      ranges.emplace_back(next, next + size);
      next += size;
    }
  }
  return ranges;
}

}  // namespace

TEST_CASE("rng is portable") {
  // First output of mt19937_64 with the default seed is fixed by the standard.
  std::mt19937_64 reference(5489u);
  CHECK(reference() == 14514284786278117030ULL);
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform01() == b.uniform01());
  Rng c(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto v = c.uniform_int(2, 5);
    CHECK(v >= 2);
    CHECK(v <= 5);
  }
}

TEST_CASE("random layered dag examples") {
  RandomDagParams p;
  p.tasks = 12;
  p.layers = 1;
  p.edge_prob = 1.0;
  p.seed = 1;
  CHECK(random_layered_dag(p).edges().empty());

  p.tasks = 4;
  p.layers = 2;
  const Instance full = random_layered_dag(p);
  const std::vector<Edge> expected{{0, 1}, {0, 3}, {2, 1}, {2, 3}};
  CHECK(std::vector<Edge>(full.edges().begin(), full.edges().end()) == expected);

  p.tasks = 100;
  p.layers = 7;
  p.edge_prob = 0.3;
  p.m = 5;
  p.k = 2;
  p.cpu = {2.0, 3.0};
  p.gpu = {0.5, 0.75};
  const Instance a = random_layered_dag(p);
  CHECK(instance_to_json(a) == instance_to_json(random_layered_dag(p)));
  for (TaskId j = 0; j < a.size(); ++j) {
    CHECK(a.cpu_time(j).value() >= 2.0);
    CHECK(a.cpu_time(j).value() <= 3.0);
    CHECK(a.gpu_time(j).value() >= 0.5);
    CHECK(a.gpu_time(j).value() <= 0.75);
  }
  for (const Edge& e : a.edges()) CHECK(e.to % 7 == e.from % 7 + 1);
  p.seed = 2;
  CHECK_FALSE(instance_to_json(a) == instance_to_json(random_layered_dag(p)));

  p.edge_prob = 1.5;
  CHECK_THROWS_AS(random_layered_dag(p), InvalidInput);
  p.edge_prob = 0.5;
  p.m = 1;
  CHECK_THROWS_AS(random_layered_dag(p), InvalidInput);
}

TEST_CASE("benchmark params stay in range") {
  for (std::size_t i = 0; i < 2000; ++i) {
    const RandomDagParams p = benchmark_params(5, i);
    CHECK(p.tasks >= 5);
    CHECK(p.tasks <= 200);
    CHECK(p.m >= 1);
    CHECK(p.m <= 16);
    CHECK(p.k >= 1);
    CHECK(p.k <= p.m);
    CHECK(p.layers >= 1);
  }
}

TEST_CASE("reduction params") {
  ReductionParams p{3, 4, 25, 1.0 / 16, 1.0 / 8};
  CHECK_NOTHROW(p.check());
  p.q = 4;
  CHECK_THROWS_AS(p.check(), InvalidInput);
  p = {3, 1, 25, 0.1, 0.1};
  CHECK_THROWS_AS(p.check(), InvalidInput);
  p = {3, 4, 4, 1.0 / 16, 1.0 / 8};
  CHECK_THROWS_AS(p.check(), InvalidInput);
  p = {3, 4, 25, 0.07, 1.0 / 8};
  CHECK_THROWS_AS(p.check(), InvalidInput);
  p = {3, 4, 25, 1.0 / 16, 0.2};
  CHECK_THROWS_AS(p.check(), InvalidInput);
}

TEST_CASE("planted graph examples") {
  ReductionParams p{3, 2, 4, 0.25, 0.25};
  const QPartiteGraph g = qpartite_yes_graph(p, 1.0, 9);
  CHECK(g.layer_count == 3);
  CHECK(g.layer_size == 4);
  for (std::uint32_t l = 0; l < 3; ++l) {
    std::map<std::uint32_t, int> sizes;
    for (std::uint32_t v = 0; v < 4; ++v) sizes[g.planted[l * 4 + v]]++;
    CHECK(sizes[0] == 2);
    CHECK(sizes[1] == 2);
  }
  CHECK(planted_order_violations(g) == 0);
  for (const auto& [u, v] : g.edges) CHECK(g.layer_of(v) == g.layer_of(u) + 1);
  // With probability 1, exactly the allowed pairs: per layer pair 2*2 + 2*4 = 12.
  CHECK(g.edges.size() == 24);

  CHECK(qpartite_yes_graph(p, 0.0, 1).edges.empty());

  const ReductionParams tight{3, 4, 5, 1.0 / 16, 1.0 / 8};
  CHECK_THROWS_AS(qpartite_yes_graph(tight, 0.5, 1), InvalidInput);

  const QPartiteGraph back = parse_graph(graph_to_json(g));
  CHECK(back.edges == g.edges);
  CHECK(back.planted == g.planted);

  QPartiteGraph broken = g;
  broken.edges.emplace_back(0, 9);
  CHECK_THROWS_AS(parse_graph(graph_to_json(broken)), InvalidInput);
}

TEST_CASE("planted graphs respect the partition across seeds") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const QPartiteGraph g = qpartite_yes_graph({6, 3, 9, 1.0 / 9, 1.0 / 6}, 0.5, seed);
    std::size_t bad = 0;
    for (const auto& [u, v] : g.edges) bad += g.planted[u] > g.planted[v];
    CHECK(bad == 0);
  }
}

TEST_CASE("reduction counts") {
  const ReductionParams p{3, 4, 5, 1.0 / 16, 1.0 / 8};
  const QPartiteGraph g = empty_graph(3, 5);
  const ReductionShape shape = reduction_shape(g, p);
  CHECK(shape.cpus == 782);
  CHECK(shape.gpus == 32);
  CHECK(shape.type_a == 16);
  CHECK(shape.type_b == 500);
  CHECK(shape.type_c == 2);
  CHECK(shape.tasks == 80 + 2500 + 10);

  const Instance inst = reduction_instance(g, p);
  CHECK(inst.size() == 2590);
  CHECK(inst.cpus() == 782);
  CHECK(inst.gpus() == 32);
  CHECK(inst.cpu_time(0).value() == 5.0);
  CHECK(inst.gpu_time(0).value() == 1.0);
  CHECK(inst.cpu_time(80).value() == 1.0);
  CHECK(inst.gpu_time(80).value() == doctest::Approx(0.2));
  // Only the type-c chains contribute arcs when the graph has no edges.
  CHECK(inst.edges().size() == 5);

  ReductionOptions small;
  small.max_tasks = 100;
  CHECK_THROWS_AS(reduction_instance(g, p, small), CapacityExceeded);
}

TEST_CASE("corollary counts") {
  const ReductionParams p{3, 4, 5, 1.0 / 16, 1.0 / 8};
  const QPartiteGraph g = empty_graph(3, 5);
  CHECK(corollary_shape(g, p, 64).type_b == 40);
  const Instance inst = corollary_instance(g, p, 64);
  CHECK(inst.cpus() == 64);
  CHECK(inst.gpus() == 32);
  CHECK_FALSE(inst.cpu_time(0).compatible());
  CHECK(inst.gpu_time(0).value() == 1.0);
  CHECK(inst.cpu_time(80).value() == 1.0);
  CHECK_FALSE(inst.gpu_time(80).compatible());
  const Instance same = corollary_instance(g, p, 32);
  CHECK(same.cpus() == same.gpus());
  CHECK_THROWS_AS(corollary_instance(g, p, 31), InvalidInput);
}

TEST_CASE("reduction arcs follow the graph") {
  const ReductionParams p{6, 3, 9, 1.0 / 9, 1.0 / 6};
  const QPartiteGraph g = qpartite_yes_graph(p, 0.3, 4);
  const Instance inst = reduction_instance(g, p);
  const ReductionShape shape = reduction_shape(g, p);
  CHECK(inst.size() == shape.tasks);
  CHECK(inst.edges().size() == shape.arcs);
  const auto ranges = vertex_ranges(p, shape.type_b);
  auto owner = [&](TaskId t) {
    for (std::size_t v = 0; v < ranges.size(); ++v) {
      if (t >= ranges[v].first && t < ranges[v].second) return v;
    }
    return ranges.size();
  };
  std::set<std::pair<std::size_t, std::size_t>> graph_edges(g.edges.begin(), g.edges.end());
  for (const Edge& e : inst.edges()) {
    const std::size_t u = owner(e.from);
    const std::size_t v = owner(e.to);
    if (u == v) {
      CHECK(e.to == e.from + 1);  // chain inside a type-c set
    } else {
      CHECK(graph_edges.count({u, v}) == 1);
      CHECK(g.planted[u] <= g.planted[v]);
    }
  }
}

TEST_CASE("yes-case schedules") {
  for (const ReductionParams& p : {ReductionParams{3, 2, 4, 0.25, 0.25}, ReductionParams{6, 3, 9, 1.0 / 9, 1.0 / 6}}) {
    const QPartiteGraph g = qpartite_yes_graph(p, 0.4, 21);
    for (bool corollary : {false, true}) {
      const std::uint64_t k = reduction_shape(g, p).gpus;
      const Instance inst = corollary ? corollary_instance(g, p, 3 * k) : reduction_instance(g, p);
      const Schedule s = yes_case_schedule(inst, g, p);
      CHECK(validate_schedule(inst, allocation_of(s), s).ok());
      CHECK(hsched::testing::independently_feasible(inst, s));
      CHECK(hsched::testing::within_graham(inst, s));
      CHECK(s.makespan == double(p.Q * p.q / 3 + p.Q - 1));
      CHECK(s.makespan <= double((p.q + 3) * p.Q / 3));
    }
  }
}

TEST_CASE("yes-case schedule rejects bad input") {
  const ReductionParams p{3, 2, 4, 0.25, 0.25};
  QPartiteGraph g = qpartite_yes_graph(p, 0.5, 2);
  const Instance inst = reduction_instance(g, p);
  QPartiteGraph unlabeled = g;
  unlabeled.planted.clear();
  CHECK_THROWS_AS(yes_case_schedule(inst, unlabeled, p), InvalidInput);

  QPartiteGraph contradicted = g;
  for (std::uint32_t v = 0; v < 4; ++v) {
    for (std::uint32_t w = 0; w < 4; ++w) {
      if (g.planted[v] > g.planted[4 + w]) contradicted.edges.emplace_back(v, 4 + w);
    }
  }
  CHECK_THROWS_AS(yes_case_schedule(inst, contradicted, p), InvalidInput);
  CHECK_THROWS_AS(yes_case_schedule(hsched::testing::random_instance(1, 10, 2, 1), g, p), InvalidInput);
}

TEST_CASE("gap report") {
  const GapReport r = gap_report({3, 4, 5, 1.0 / 16, 1.0 / 8});
  CHECK(r.ma == doctest::Approx(4.0 / 3.0));
  CHECK(r.mb == doctest::Approx(8.0 / 7.0));
  CHECK(r.mc == 2.0);
  CHECK(r.no_lower == doctest::Approx(4.0 / 3.0 + 8.0 / 7.0 + 2.0));
  CHECK(r.no_lower == doctest::Approx(4.476).epsilon(1e-3));
  CHECK(r.yes_upper == 8.0);

  const GapReport two = gap_report({3, 2, 3, 0.25, 0.25});
  CHECK(two.mc == 0.0);
  CHECK(two.ma == 0.0);
}
