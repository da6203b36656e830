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

#include "hsched/allocate.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "hsched/error.hpp"

namespace hsched {

RoundingParams RoundingParams::finite(double b) {
  if (!(b >= 2.0) || !std::isfinite(b)) throw InvalidInput("b must be ≥ 2");
  return RoundingParams(b);
}

double RoundingParams::b() const {
  if (is_infinite()) throw std::logic_error("b() of the infinite rounding limit");
  return b_;
}

std::string RoundingParams::to_string() const {
  if (is_infinite()) return "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, b_);
  return std::string(buf, end);
}

RoundingParams optimal_b(std::uint32_t m, std::uint32_t k) {
  if (m == k) return RoundingParams::infinite();
  const double ratio = static_cast<double>(k) / static_cast<double>(m);
  return RoundingParams::finite(1.0 + std::sqrt((2.0 - ratio) / (1.0 - ratio)));
}

Pool round_hlpb_task(double x, double cpu_time, double gpu_time, const RoundingParams& params) {
  const double inv = params.inverse();
  if (x >= 1.0 - inv) return Pool::Cpu;
  if (x <= inv) return Pool::Gpu;
  return cpu_time >= gpu_time ? Pool::Gpu : Pool::Cpu;
}

Allocation round_hlpb(const FractionalSolution& fractional, const Instance& instance,
                      const RoundingParams& params) {
  if (fractional.x.size() != instance.size()) {
    throw InvalidInput("fractional solution size does not match task count");
  }
  if (!instance.all_finite()) throw InvalidInput("rounding requires finite times");
  Allocation allocation;
  allocation.side.resize(instance.size());
  for (TaskId j = 0; j < instance.size(); ++j) {
    allocation.side[j] = round_hlpb_task(fractional.x[j], instance.cpu_time(j).value(),
                                         instance.gpu_time(j).value(), params);
  }
  return allocation;
}

Allocation round_half(const FractionalSolution& fractional) {
  Allocation allocation;
  allocation.side.reserve(fractional.x.size());
  for (double x : fractional.x) allocation.side.push_back(x < 0.5 ? Pool::Gpu : Pool::Cpu);
  return allocation;
}

}  // namespace hsched
