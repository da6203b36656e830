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

#include "hsched/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hsched/error.hpp"

namespace hsched {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("parse error: ") + e.what());
  }
}

const json& field(const json& object, const char* key) {
  if (!object.is_object()) throw InvalidInput("parse error: expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw InvalidInput(std::string("parse error: missing key \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const json& value, const char* what) {
  if (!value.is_number_integer()) {
    throw InvalidInput(std::string("parse error: ") + what + " must be an integer");
  }
  return value.get<std::int64_t>();
}

ProcTime as_time(const json& value) {
  if (value.is_string() && value.get<std::string>() == "inc") return ProcTime::incompatible();
  if (!value.is_number()) throw InvalidInput("parse error: time must be a number or \"inc\"");
  return ProcTime::finite(value.get<double>());
}

json time_to_json(ProcTime t) {
  if (!t.compatible()) return "inc";
  return t.value();
}

std::uint32_t as_count(const json& value, const char* what) {
  const std::int64_t v = as_int(value, what);
  if (v < 1 || v > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidInput(std::string(what) + " must be a positive integer");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  const json doc = parse_json(json_text);
  const std::uint32_t m = as_count(field(doc, "m"), "m");
  const std::uint32_t k = as_count(field(doc, "k"), "k");
  const json& tasks = field(doc, "tasks");
  const json& edges = field(doc, "edges");
  if (!tasks.is_array() || !edges.is_array()) {
    throw InvalidInput("parse error: tasks and edges must be arrays");
  }
  const std::size_t n = tasks.size();
  std::vector<ProcTime> cpu(n, ProcTime::incompatible());
  std::vector<ProcTime> gpu(n, ProcTime::incompatible());
  std::vector<char> seen(n, 0);
  for (const json& task : tasks) {
    const std::int64_t id = as_int(field(task, "id"), "task id");
    if (id < 0 || static_cast<std::size_t>(id) >= n || seen[id]) {
      throw InvalidInput("task ids must be exactly 0..n-1");
    }
    seen[id] = 1;
    cpu[id] = as_time(field(task, "cpu"));
    gpu[id] = as_time(field(task, "gpu"));
  }
  std::vector<Edge> edge_list;
  edge_list.reserve(edges.size());
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("parse error: edge must be [from, to]");
    const std::int64_t from = as_int(e[0], "edge endpoint");
    const std::int64_t to = as_int(e[1], "edge endpoint");
    if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n ||
        static_cast<std::size_t>(to) >= n) {
      throw InvalidInput("edge " + std::to_string(from) + "->" + std::to_string(to) +
                         " references an unknown task");
    }
    edge_list.push_back({static_cast<TaskId>(from), static_cast<TaskId>(to)});
  }
  return Instance(std::move(cpu), std::move(gpu), std::move(edge_list), m, k);
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

std::string instance_to_json(const Instance& instance) {
  json tasks = json::array();
  for (TaskId j = 0; j < instance.size(); ++j) {
    tasks.push_back({{"id", j},
                     {"cpu", time_to_json(instance.cpu_time(j))},
                     {"gpu", time_to_json(instance.gpu_time(j))}});
  }
  json edges = json::array();
  for (const Edge& e : instance.edges()) edges.push_back({e.from, e.to});
  json doc = {{"m", instance.cpus()}, {"k", instance.gpus()}, {"tasks", tasks}, {"edges", edges}};
  return doc.dump();
}

Schedule parse_schedule(std::string_view json_text, std::size_t task_count) {
  const json doc = parse_json(json_text);
  const json& makespan = field(doc, "makespan");
  if (!makespan.is_number()) throw InvalidInput("parse error: makespan must be a number");
  const json& assignments = field(doc, "assignments");
  if (!assignments.is_array() || assignments.size() != task_count) {
    throw InvalidInput("schedule must assign every task exactly once");
  }
  Schedule schedule;
  schedule.makespan = makespan.get<double>();
  schedule.start.assign(task_count, 0.0);
  schedule.machine.assign(task_count, Placement{});
  std::vector<char> seen(task_count, 0);
  for (const json& a : assignments) {
    const std::int64_t id = as_int(field(a, "id"), "assignment id");
    if (id < 0 || static_cast<std::size_t>(id) >= task_count || seen[id]) {
      throw InvalidInput("assignment ids must be exactly 0..n-1");
    }
    seen[id] = 1;
    const json& pool = field(a, "pool");
    if (pool == "cpu") {
      schedule.machine[id].pool = Pool::Cpu;
    } else if (pool == "gpu") {
      schedule.machine[id].pool = Pool::Gpu;
    } else {
      throw InvalidInput("parse error: pool must be \"cpu\" or \"gpu\"");
    }
    const std::int64_t machine = as_int(field(a, "machine"), "machine");
    if (machine < 0 || machine > std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidInput("machine index out of range");
    }
    schedule.machine[id].index = static_cast<std::uint32_t>(machine);
    const json& start = field(a, "start");
    if (!start.is_number()) throw InvalidInput("parse error: start must be a number");
    schedule.start[id] = start.get<double>();
  }
  return schedule;
}

Schedule load_schedule(const std::filesystem::path& path, std::size_t task_count) {
  return parse_schedule(read_file(path), task_count);
}

std::string schedule_to_json(const Schedule& schedule) {
  json assignments = json::array();
  for (std::size_t j = 0; j < schedule.start.size(); ++j) {
    assignments.push_back({{"id", j},
                           {"pool", to_string(schedule.machine[j].pool)},
                           {"machine", schedule.machine[j].index},
                           {"start", schedule.start[j]}});
  }
  json doc = {{"makespan", schedule.makespan}, {"assignments", assignments}};
  return doc.dump();
}

std::string report_to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"kind", to_string(v.kind)}, {"subject", v.subject}, {"detail", v.detail}});
  }
  json doc = {{"ok", report.ok()}, {"violations", violations}};
  return doc.dump();
}

std::string gantt_csv(const Instance& instance, const Schedule& schedule) {
  std::vector<TaskId> order(instance.size());
  for (TaskId j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](TaskId a, TaskId b) {
    const Placement& pa = schedule.machine[a];
    const Placement& pb = schedule.machine[b];
    if (pa.pool != pb.pool) return pa.pool < pb.pool;
    if (pa.index != pb.index) return pa.index < pb.index;
    if (schedule.start[a] != schedule.start[b]) return schedule.start[a] < schedule.start[b];
    return a < b;
  });
  std::ostringstream out;
  out.precision(17);
  out << "machine,task,start,end\n";
  for (TaskId j : order) {
    const Placement& p = schedule.machine[j];
    out << to_string(p.pool) << p.index << ',' << j << ',' << schedule.start[j] << ','
        << schedule.start[j] + duration_on(instance, j, p.pool) << '\n';
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace hsched
