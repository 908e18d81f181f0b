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

// One-factor-at-a-time sweeps: vary a single parameter over a range with
// every other parameter held at the base scenario, solving the equilibrium
// at each point.

#ifndef TRIPLECHANNEL_SENSITIVITY_H_
#define TRIPLECHANNEL_SENSITIVITY_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "triplechannel/market_model.h"

namespace triplechannel {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
};

// Reference sensitivity range for each parameter, e.g. alpha in (0.8, 1],
// c1 in [119, 231].
Interval reference_range(ParamId id);

enum class SweepMode { kGrid, kUniformRandom };

struct SweepSpec {
  MarketParams base;
  ParamId param = ParamId::kBeta;
  double lo = 0.0;
  double hi = 0.0;
  // Open ends are never evaluated; the grid is offset by half a step.
  bool lo_open = false;
  bool hi_open = false;
  int steps = 50;
  SweepMode mode = SweepMode::kGrid;
  std::uint64_t seed = 0;  // kUniformRandom only
  // Require [lo, hi] to sit inside reference_range(param).
  bool strict = false;
};

// Sweep over the full reference range of `param`.
SweepSpec reference_sweep(const MarketParams& base, ParamId param,
                          int steps = 50);

// Parameter values a sweep evaluates, ascending. Throws
// ModelError(kInvalidSpec).
std::vector<double> sweep_points(const SweepSpec& spec);

struct SweepRow {
  double param_value = 0.0;
  PriceVector prices;
  ProfitVector profits;
  DemandSplit split;
  bool concavity_ok = false;
  bool feasible = false;   // every interiority check passed
  std::string error_code;  // empty when the point solved

  bool solved() const { return error_code.empty(); }
};

struct SweepResult {
  ParamId param = ParamId::kBeta;
  std::vector<SweepRow> rows;
};

// Failed points keep their row with NaN values and an error code.
SweepResult ofat_sweep(const SweepSpec& spec);

enum class SweepColumn { kP1, kP2, kP3, kPi1, kPi2, kPi3, kDu, kDo, kDe };
inline constexpr std::array<SweepColumn, 9> kSweepColumns = {
    SweepColumn::kP1,  SweepColumn::kP2,  SweepColumn::kP3,
    SweepColumn::kPi1, SweepColumn::kPi2, SweepColumn::kPi3,
    SweepColumn::kDu,  SweepColumn::kDo,  SweepColumn::kDe};

std::string_view to_string(SweepColumn column);
double column_value(const SweepRow& row, SweepColumn column);

enum class Trend { kIncreasing, kDecreasing, kFlat, kNonMonotone };
std::string_view to_string(Trend trend);

struct SignSummary {
  std::array<Trend, 9> labels{};
  std::size_t rows_used = 0;

  Trend at(SweepColumn column) const {
    return labels[static_cast<std::size_t>(column)];
  }
};

// Monotonicity of each column over consecutive solved rows. A step counts
// as flat when |delta| <= flat_tol * max(|a|, |b|). Throws
// ModelError(kInsufficientData) with fewer than two solved rows.
SignSummary sign_summary(const SweepResult& result, double flat_tol = 1e-9);

}  // namespace triplechannel

#endif  // TRIPLECHANNEL_SENSITIVITY_H_
