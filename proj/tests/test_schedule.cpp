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

#include <json.hpp>

#include "hsched/allocate.hpp"
#include "hsched/error.hpp"
#include "hsched/schedule.hpp"
#include "support.hpp"

using namespace hsched;
using hsched::testing::make_instance;

namespace {

void check_produced(const Instance& inst, const Schedule& s) {
  CHECK(validate_schedule(inst, allocation_of(s), s).ok());
  CHECK(hsched::testing::independently_feasible(inst, s));
  CHECK(hsched::testing::within_graham(inst, s));
}

Allocation all(std::size_t n, Pool p) { return {std::vector<Pool>(n, p)}; }

}  // namespace

TEST_CASE("list schedule examples") {
  const Instance chain = make_instance({1, 1}, {1, 1}, {{0, 1}}, 1, 1);
  Schedule s = list_schedule(chain, all(2, Pool::Gpu));
  CHECK(s.start == std::vector<double>{0.0, 1.0});
  CHECK(s.makespan == 2.0);
  check_produced(chain, s);

  const Instance pair = make_instance({3, 3}, {1, 1}, {}, 2, 1);
  s = list_schedule(pair, all(2, Pool::Cpu));
  CHECK(s.start == std::vector<double>{0.0, 0.0});
  CHECK(s.makespan == 3.0);
  CHECK(s.machine[0].index != s.machine[1].index);
  check_produced(pair, s);

  const std::vector<Edge> diamond{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  const Instance k1 = make_instance({1, 1, 1, 1}, {1, 1, 1, 1}, diamond, 1, 1);
  s = list_schedule(k1, all(4, Pool::Gpu));
  CHECK(s.makespan == 4.0);
  check_produced(k1, s);
  const Instance k2 = make_instance({1, 1, 1, 1}, {1, 1, 1, 1}, diamond, 2, 2);
  s = list_schedule(k2, all(4, Pool::Gpu));
  CHECK(s.makespan == 3.0);
  check_produced(k2, s);
}

TEST_CASE("list schedule lowest index machine wins ties") {
  const Instance inst = make_instance({1, 1, 1}, {1, 1, 1}, {}, 3, 1);
  const Schedule s = list_schedule(inst, all(3, Pool::Cpu));
  CHECK(s.machine[0] == Placement{Pool::Cpu, 0});
  CHECK(s.machine[1] == Placement{Pool::Cpu, 1});
  CHECK(s.machine[2] == Placement{Pool::Cpu, 2});
}

TEST_CASE("list schedule follows priority") {
  const Instance inst = make_instance({1, 2, 3}, {1, 1, 1}, {}, 1, 1);
  const std::vector<TaskId> priority{2, 0, 1};
  const Schedule s = list_schedule(inst, all(3, Pool::Cpu), priority);
  CHECK(s.start == std::vector<double>{3.0, 4.0, 0.0});
  check_produced(inst, s);

  const Instance chain = make_instance({1, 1}, {1, 1}, {{0, 1}}, 1, 1);
  const std::vector<TaskId> backwards{1, 0};
  CHECK_THROWS_AS(list_schedule(chain, all(2, Pool::Cpu), backwards), InvalidInput);
}

TEST_CASE("list schedule rejects incompatible allocations") {
  const Instance inst = make_instance({-1}, {1}, {}, 1, 1);
  CHECK_THROWS_AS(list_schedule(inst, all(1, Pool::Cpu)), InvalidInput);
  CHECK_NOTHROW(list_schedule(inst, all(1, Pool::Gpu)));
}

TEST_CASE("list schedule never idles a machine with ready work") {
  // Both pools used; a GPU successor becomes ready while the CPU is busy.
  const Instance inst = make_instance({2, 5, 1, 1}, {9, 9, 1, 1}, {{0, 2}, {0, 3}}, 2, 1);
  const Allocation a{{Pool::Cpu, Pool::Cpu, Pool::Gpu, Pool::Gpu}};
  const Schedule s = list_schedule(inst, a);
  CHECK(s.start[2] == 2.0);
  CHECK(s.start[3] == 3.0);
  CHECK(s.makespan == 5.0);
  check_produced(inst, s);
}

TEST_CASE("pipeline examples") {
  const Instance one = make_instance({4}, {2}, {}, 1, 1);
  PipelineResult r = hlp_b(one);
  CHECK(r.allocation.side[0] == Pool::Gpu);
  CHECK(r.diagnostics.makespan == doctest::Approx(2.0));
  CHECK(r.diagnostics.ratio == doctest::Approx(1.0));
  CHECK(r.diagnostics.b->is_infinite());
  check_produced(one, r.schedule);

  r = hlp_b(Instance({}, {}, {}, 1, 1));
  CHECK(r.diagnostics.makespan == 0.0);
  CHECK(r.diagnostics.ratio == 1.0);

  CHECK_THROWS_AS(hlp_b(one, 1.5), InvalidInput);

  const Instance mid = hsched::testing::random_instance(42, 50, 4, 2, 0.3);
  r = hlp_b(mid);
  CHECK(r.diagnostics.ratio <= 3.0 + 4.0 * std::sqrt(0.5 / 1.5) + 1e-6);
  CHECK(r.diagnostics.b->b() == doctest::Approx(optimal_b(4, 2).b()));
  check_produced(mid, r.schedule);
}

TEST_CASE("pipeline invariants over random instances") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::uint32_t m = 1 + seed % 8;
    const std::uint32_t k = 1 + (seed / 8) % m;
    const Instance inst = hsched::testing::random_instance(seed, 5 + seed % 70, m, k, 0.3);
    for (RoundingRule rule : {RoundingRule::Hlpb, RoundingRule::Half}) {
      PipelineOptions options;
      options.rule = rule;
      const PipelineResult r = run_pipeline(inst, options);
      check_produced(inst, r.schedule);
      CHECK(r.diagnostics.makespan <= list_schedule_bound(inst, r.diagnostics.load) + 1e-6);
      CHECK(r.diagnostics.lp_bound <= r.diagnostics.makespan + 1e-6);
      if (rule == RoundingRule::Hlpb) {
        CHECK(r.diagnostics.ratio <= theoretical_ratio(m, k) + 1e-6);
      } else {
        CHECK_FALSE(r.diagnostics.b.has_value());
      }
    }
  }
}

TEST_CASE("user supplied b") {
  const Instance inst = hsched::testing::random_instance(3, 30, 4, 1, 0.3);
  for (double b : {2.0, 3.0, 8.0}) {
    const PipelineResult r = hlp_b(inst, b);
    CHECK(r.diagnostics.b->b() == b);
    check_produced(inst, r.schedule);
  }
}

TEST_CASE("pipeline is deterministic") {
  const Instance inst = hsched::testing::random_instance(11, 80, 6, 2, 0.25);
  const PipelineResult a = hlp_b(inst);
  const PipelineResult b = hlp_b(inst);
  CHECK(a.schedule == b.schedule);
  CHECK(diagnostics_to_json(a.diagnostics) == diagnostics_to_json(b.diagnostics));
}

TEST_CASE("diagnostics json") {
  const auto doc = nlohmann::json::parse(diagnostics_to_json(hlp_b(make_instance({4}, {2}, {}, 1, 1)).diagnostics));
  CHECK(doc.at("rounding") == "hlpb");
  CHECK(doc.at("b") == "inf");
  CHECK(doc.at("makespan").get<double>() == doctest::Approx(2.0));
  CHECK(doc.contains("w_cpu"));
  CHECK(doc.contains("w_gpu"));
  CHECK(doc.contains("critical_path"));
  CHECK(doc.contains("lp_bound"));
  CHECK(doc.contains("ratio"));
}
