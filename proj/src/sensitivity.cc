// Copyright 2026 The triplechannel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "triplechannel/sensitivity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "triplechannel/equilibrium.h"
#include "triplechannel/errors.h"

namespace triplechannel {
namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw ModelError(ErrorKind::kInvalidSpec, field, "invalid sweep: " + why);
}

SweepRow failed_row(double value, std::string code) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.param_value = value;
  row.prices = {kNaN, kNaN, kNaN};
  row.profits = {kNaN, kNaN, kNaN};
  row.split = {kNaN, kNaN, kNaN};
  row.error_code = std::move(code);
  return row;
}

}  // namespace

Interval reference_range(ParamId id) {
  switch (id) {
    case ParamId::kAlpha: return {0.8, 1.0, true, false};
    case ParamId::kTheta: return {0.0, 0.8, true, true};
    case ParamId::kT: return {0.0, 20.0, false, false};
    case ParamId::kX: return {0.0, 10.0, false, false};
    case ParamId::kBeta: return {0.0, 1.0, true, false};
    case ParamId::kM: return {0.0, 1.0, true, false};
    case ParamId::kMu1: return {0.0, 200.0, false, false};
    case ParamId::kMu2: return {0.0, 200.0, false, false};
    case ParamId::kC1: return {119.0, 231.0, false, false};
    case ParamId::kC2: return {49.0, 231.0, false, false};
    case ParamId::kC3: return {49.0, 231.0, false, false};
  }
  return {};
}

SweepSpec reference_sweep(const MarketParams& base, ParamId param,
                          int steps) {
  const Interval r = reference_range(param);
  SweepSpec spec;
  spec.base = base;
  spec.param = param;
  spec.lo = r.lo;
  spec.hi = r.hi;
  spec.lo_open = r.lo_open;
  spec.hi_open = r.hi_open;
  spec.steps = steps;
  return spec;
}

std::vector<double> sweep_points(const SweepSpec& spec) {
  if (spec.steps < 1) invalid("steps", "steps must be at least 1");
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
    invalid("range", "range endpoints must be finite");
  }
  if (spec.lo > spec.hi || (spec.lo == spec.hi && spec.steps != 1)) {
    invalid("range", "lo must be below hi (lo == hi only with steps = 1)");
  }
  if (spec.strict) {
    const Interval r = reference_range(spec.param);
    const std::string name(to_string(spec.param));
    if (spec.lo < r.lo || spec.hi > r.hi) {
      invalid(name, "[" + std::to_string(spec.lo) + ", " +
                        std::to_string(spec.hi) +
                        "] leaves the reference range of " + name);
    }
    if ((r.lo_open && spec.lo == r.lo && !spec.lo_open) ||
        (r.hi_open && spec.hi == r.hi && !spec.hi_open)) {
      invalid(name, "an open endpoint of the reference range would be "
                    "evaluated");
    }
  }

  const int n = spec.steps;
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(n));
  if (spec.mode == SweepMode::kUniformRandom) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32)};
    std::mt19937_64 engine(seq);
    const double width = spec.hi - spec.lo;
    while (static_cast<int>(points.size()) < n) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      const double value = spec.lo + u * width;
      if (spec.lo_open && value == spec.lo) continue;
      points.push_back(value);
    }
    std::sort(points.begin(), points.end());
    return points;
  }

  if (spec.lo == spec.hi) return {spec.lo};
  // Closed ends sit on the grid, open ends half a step inside.
  const double offset_lo = spec.lo_open ? 0.5 : 0.0;
  const double offset_hi = spec.hi_open ? 0.5 : 0.0;
  const double span = (n - 1) + offset_lo + offset_hi;
  if (span <= 0.0) return {0.5 * (spec.lo + spec.hi)};
  const double h = (spec.hi - spec.lo) / span;
  for (int i = 0; i < n; ++i) {
    points.push_back(spec.lo + (i + offset_lo) * h);
  }
  if (!spec.hi_open) points.back() = spec.hi;
  return points;
}

SweepResult ofat_sweep(const SweepSpec& spec) {
  SweepResult result;
  result.param = spec.param;
  for (double value : sweep_points(spec)) {
    const MarketParams params = with_param(spec.base, spec.param, value);
    try {
      const EquilibriumResult eq = solve_equilibrium(params);
      SweepRow row;
      row.param_value = value;
      row.prices = eq.prices;
      row.profits = eq.profits;
      row.split = eq.split;
      row.concavity_ok = eq.concavity.ok();
      row.feasible = eq.all_feasible();
      result.rows.push_back(row);
    } catch (const ModelError& e) {
      std::string code(to_string(e.kind()));
      if (!e.detail().empty()) code += ":" + e.detail();
      result.rows.push_back(failed_row(value, std::move(code)));
    }
  }
  return result;
}

std::string_view to_string(SweepColumn column) {
  switch (column) {
    case SweepColumn::kP1: return "p1";
    case SweepColumn::kP2: return "p2";
    case SweepColumn::kP3: return "p3";
    case SweepColumn::kPi1: return "pi1";
    case SweepColumn::kPi2: return "pi2";
    case SweepColumn::kPi3: return "pi3";
    case SweepColumn::kDu: return "du";
    case SweepColumn::kDo: return "do";
    case SweepColumn::kDe: return "de";
  }
  return "?";
}

double column_value(const SweepRow& row, SweepColumn column) {
  switch (column) {
    case SweepColumn::kP1: return row.prices.p1;
    case SweepColumn::kP2: return row.prices.p2;
    case SweepColumn::kP3: return row.prices.p3;
    case SweepColumn::kPi1: return row.profits.pi1;
    case SweepColumn::kPi2: return row.profits.pi2;
    case SweepColumn::kPi3: return row.profits.pi3;
    case SweepColumn::kDu: return row.split.d_u;
    case SweepColumn::kDo: return row.split.d_o;
    case SweepColumn::kDe: return row.split.d_e;
  }
  return 0.0;
}

std::string_view to_string(Trend trend) {
  switch (trend) {
    case Trend::kIncreasing: return "increasing";
    case Trend::kDecreasing: return "decreasing";
    case Trend::kFlat: return "flat";
    case Trend::kNonMonotone: return "non-monotone";
  }
  return "?";
}

SignSummary sign_summary(const SweepResult& result, double flat_tol) {
  std::vector<const SweepRow*> rows;
  for (const auto& row : result.rows) {
    if (row.solved()) rows.push_back(&row);
  }
  if (rows.size() < 2) {
    throw ModelError(ErrorKind::kInsufficientData, "rows",
                     "sign summary needs at least two solved rows, got " +
                         std::to_string(rows.size()));
  }
  SignSummary summary;
  summary.rows_used = rows.size();
  for (SweepColumn column : kSweepColumns) {
    bool up = false;
    bool down = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double a = column_value(*rows[i - 1], column);
      const double b = column_value(*rows[i], column);
      const double delta = b - a;
      if (std::abs(delta) <= flat_tol * std::max(std::abs(a), std::abs(b))) {
        continue;
      }
      (delta > 0 ? up : down) = true;
    }
    Trend trend = Trend::kFlat;
    if (up && down) {
      trend = Trend::kNonMonotone;
    } else if (up) {
      trend = Trend::kIncreasing;
    } else if (down) {
      trend = Trend::kDecreasing;
    }
    summary.labels[static_cast<std::size_t>(column)] = trend;
  }
  return summary;
}

}  // namespace triplechannel
