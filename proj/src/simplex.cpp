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
#include <sstream>

#include "hsched/error.hpp"
#include "hsched/lp.hpp"

namespace hsched {

void LpProblem::check() const {
  const std::size_t n = variables();
  if (lower.size() != n || upper.size() != n) {
    throw InvalidInput("bounds must have one entry per variable");
  }
  if (!names.empty() && names.size() != n) throw InvalidInput("names must match variables");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(lower[j] >= 0.0) || !std::isfinite(lower[j])) {
      throw InvalidInput("lower bounds must be finite and non-negative");
    }
    if (!(lower[j] <= upper[j])) throw InvalidInput("lower bound exceeds upper bound");
  }
  for (const LpRow& row : rows) {
    if (row.coefficients.size() != n) throw InvalidInput("row width differs from objective");
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Tableau in canonical form for the current basis. Columns are laid out as
// [structural | slack/surplus | artificial], the last column holds the rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t columns)
      : rows_(rows), width_(columns + 1), cells_(rows * width_, 0.0), cost_(width_, 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }
  double rhs(std::size_t r) const { return at(r, width_ - 1); }
  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return width_ - 1; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  // Reduced costs for `costs` given the current basis.
  void price(const std::vector<double>& costs) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::copy(costs.begin(), costs.end(), cost_.begin());
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &cells_[r * width_];
      for (std::size_t c = 0; c < width_; ++c) cost_[c] -= cb * row[c];
    }
  }

  // Objective value of the current basic solution.
  double value() const { return -cost_[width_ - 1]; }
  double reduced_cost(std::size_t c) const { return cost_[c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = &cells_[pr * width_];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      eliminate(&cells_[r * width_], prow, pc);
    }
    eliminate(cost_.data(), prow, pc);
    basis_[pr] = pc;
  }

 private:
  void eliminate(double* row, const double* prow, std::size_t pc) const {
    const double factor = row[pc];
    if (factor == 0.0) return;
    for (std::size_t c = 0; c < width_; ++c) {
      if (prow[c] == 0.0) continue;
      double v = row[c] - factor * prow[c];
      if (std::abs(v) < 1e-13) v = 0.0;
      row[c] = v;
    }
    row[pc] = 0.0;
  }

  std::size_t rows_;
  std::size_t width_;
  std::vector<double> cells_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
};

enum class PhaseOutcome { Optimal, Unbounded };

// Bland's rule: lowest-index improving column enters, and among tied ratio
// rows the one whose basic variable has the lowest index leaves.
PhaseOutcome run_phase(Tableau& t, std::size_t allowed_columns) {
  const std::size_t limit = 200 * (t.rows() + t.columns()) + 10000;
  for (std::size_t iter = 0; iter < limit; ++iter) {
    std::size_t entering = allowed_columns;
    for (std::size_t c = 0; c < allowed_columns; ++c) {
      if (t.reduced_cost(c) < -kPivotTolerance) {
        entering = c;
        break;
      }
    }
    if (entering == allowed_columns) return PhaseOutcome::Optimal;

    std::size_t leaving = t.rows();
    double best = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, entering);
      if (a <= kPivotTolerance) continue;
      const double ratio = t.rhs(r) / a;
      if (leaving == t.rows()) {
        leaving = r;
        best = ratio;
        continue;
      }
      const double slack = 1e-12 * (1.0 + std::abs(best));
      if (ratio < best - slack ||
          (ratio <= best + slack && t.basis()[r] < t.basis()[leaving])) {
        leaving = r;
        best = std::min(best, ratio);
      }
    }
    if (leaving == t.rows()) return PhaseOutcome::Unbounded;
    t.pivot(leaving, entering);
  }
  throw SolverFailure("simplex iteration limit reached");
}

}  // namespace

LpResult simplex_solve(const LpProblem& problem) {
  problem.check();
  const std::size_t n = problem.variables();

  // Shift x = lower + y, y >= 0, and turn finite upper bounds into rows.
  struct StdRow {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<StdRow> rows;
  rows.reserve(problem.rows.size() + n);
  for (const LpRow& row : problem.rows) {
    double b = row.rhs;
    for (std::size_t j = 0; j < n; ++j) b -= row.coefficients[j] * problem.lower[j];
    rows.push_back({row.coefficients, row.relation, b});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isinf(problem.upper[j])) continue;
    std::vector<double> a(n, 0.0);
    a[j] = 1.0;
    rows.push_back({std::move(a), Relation::LessEqual, problem.upper[j] - problem.lower[j]});
  }
  for (StdRow& row : rows) {
    if (row.b < 0.0) {
      for (double& v : row.a) v = -v;
      row.b = -row.b;
      if (row.rel == Relation::LessEqual) {
        row.rel = Relation::GreaterEqual;
      } else if (row.rel == Relation::GreaterEqual) {
        row.rel = Relation::LessEqual;
      }
    }
  }

  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (const StdRow& row : rows) {
    if (row.rel != Relation::Equal) ++slacks;
    if (row.rel != Relation::LessEqual) ++artificials;
  }
  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + slacks;
  const std::size_t columns = first_artificial + artificials;

  Tableau t(rows.size(), columns);
  {
    std::size_t s = first_slack;
    std::size_t a = first_artificial;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const StdRow& row = rows[r];
      for (std::size_t j = 0; j < n; ++j) t.at(r, j) = row.a[j];
      t.at(r, columns) = row.b;
      switch (row.rel) {
        case Relation::LessEqual:
          t.at(r, s) = 1.0;
          t.basis()[r] = s++;
          break;
        case Relation::GreaterEqual:
          t.at(r, s++) = -1.0;
          t.at(r, a) = 1.0;
          t.basis()[r] = a++;
          break;
        case Relation::Equal:
          t.at(r, a) = 1.0;
          t.basis()[r] = a++;
          break;
      }
    }
  }
  rows.clear();

  LpResult result;
  if (artificials > 0) {
    std::vector<double> phase_one(columns, 0.0);
    std::fill(phase_one.begin() + static_cast<std::ptrdiff_t>(first_artificial), phase_one.end(), 1.0);
    t.price(phase_one);
    run_phase(t, columns);  // bounded below by zero, never unbounded
    double scale = 1.0;
    for (std::size_t r = 0; r < t.rows(); ++r) scale = std::max(scale, std::abs(t.rhs(r)));
    if (t.value() > kFeasibilityTolerance * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible. Rows that
    // keep one are redundant and stay inert because artificials never re-enter.
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.basis()[r] < first_artificial) continue;
      for (std::size_t c = 0; c < first_artificial; ++c) {
        if (std::abs(t.at(r, c)) > kPivotTolerance) {
          t.pivot(r, c);
          break;
        }
      }
    }
  }

  std::vector<double> costs(columns, 0.0);
  std::copy(problem.objective.begin(), problem.objective.end(), costs.begin());
  t.price(costs);
  if (run_phase(t, first_artificial) == PhaseOutcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.values = problem.lower;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::size_t var = t.basis()[r];
    if (var < n) result.values[var] += std::max(0.0, t.rhs(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    result.values[j] = std::min(result.values[j], problem.upper[j]);
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += problem.objective[j] * result.values[j];
  return result;
}

std::string to_lp_text(const LpProblem& problem) {
  problem.check();
  auto name = [&](std::size_t j) {
    return problem.names.empty() ? "v" + std::to_string(j) : problem.names[j];
  };
  std::ostringstream out;
  out.precision(17);
  auto linear = [&](const std::vector<double>& coefficients) {
    bool any = false;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      const double c = coefficients[j];
      if (c == 0.0) continue;
      out << (c < 0 ? " - " : (any ? " + " : " ")) << std::abs(c) << ' ' << name(j);
      any = true;
    }
    if (!any) out << " 0";
  };
  out << "Minimize\n obj:";
  linear(problem.objective);
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const LpRow& row = problem.rows[r];
    out << " r" << r << ':';
    linear(row.coefficients);
    switch (row.relation) {
      case Relation::LessEqual: out << " <= "; break;
      case Relation::Equal: out << " = "; break;
      case Relation::GreaterEqual: out << " >= "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < problem.variables(); ++j) {
    if (std::isinf(problem.upper[j])) {
      out << ' ' << name(j) << " >= " << problem.lower[j] << '\n';
    } else {
      out << ' ' << problem.lower[j] << " <= " << name(j) << " <= " << problem.upper[j] << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace hsched
