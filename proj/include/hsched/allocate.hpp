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

#include <cstdint>
#include <string>

#include "hsched/core.hpp"
#include "hsched/lp.hpp"

namespace hsched {

// Rounding threshold b >= 2, or the infinite limit used when m == k.
class RoundingParams {
 public:
  static RoundingParams finite(double b);  // throws InvalidInput("b must be ≥ 2")
  static constexpr RoundingParams infinite() { return RoundingParams(0.0); }

  constexpr bool is_infinite() const { return b_ == 0.0; }
  double b() const;  // throws std::logic_error when infinite
  // 1/b, exactly 0 in the infinite limit.
  constexpr double inverse() const { return is_infinite() ? 0.0 : 1.0 / b_; }

  std::string to_string() const;  // "inf" or the shortest round-trip decimal

 private:
  constexpr explicit RoundingParams(double b) : b_(b) {}
  double b_;
};

// b = 1 + sqrt((2 - k/m) / (1 - k/m)); infinite when m == k.
RoundingParams optimal_b(std::uint32_t m, std::uint32_t k);

// Threshold rounding, rules applied in order:
//   x >= 1 - 1/b           -> CPU
//   x <= 1/b               -> GPU
//   otherwise cpu >= gpu   -> GPU, else CPU (faster pool).
// Requires finite times.
Allocation round_hlpb(const FractionalSolution& fractional, const Instance& instance,
                      const RoundingParams& params);

Pool round_hlpb_task(double x, double cpu_time, double gpu_time, const RoundingParams& params);

// Baseline: x < 1/2 -> GPU, otherwise CPU.
Allocation round_half(const FractionalSolution& fractional);

}  // namespace hsched
