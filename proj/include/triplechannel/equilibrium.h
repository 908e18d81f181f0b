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

// Bertrand-Nash pricing for the three-channel game.
//
// Each retailer maximizes pi_i = beta * (p_i - c_i) * D_i over its own price,
// with D_i given by the three-channel demand formulas. Each payoff is
// quadratic in its own price, so the first-order conditions form an affine
// 3x3 system. closed_form_prices() evaluates the published closed-form
// solution term by term; solve_foc_system() solves the same stationarity
// conditions numerically and serves as its cross-check.

#ifndef TRIPLECHANNEL_EQUILIBRIUM_H_
#define TRIPLECHANNEL_EQUILIBRIUM_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "triplechannel/market_model.h"

namespace triplechannel {

// Condition-number ceiling above which the stationarity system is treated as
// singular.
inline constexpr double kMaxConditionNumber = 1e8;

// m * (2 + 4*alpha*(theta - 4) + 11*theta - theta^2), shared by all three
// closed-form prices.
double closed_form_denominator(const MarketParams& params);

// Throws ModelError(kSingularDenominator) when the shared denominator
// vanishes. Does not check concavity; see concavity_check().
PriceVector closed_form_prices(const MarketParams& params);

// Marginal profit per unit of beta, (d pi_i / d p_i) / beta, for each
// retailer at its own price. Zero at an interior equilibrium. beta does not
// enter.
struct FocResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double at(Channel channel) const;
  double max_abs() const;
};

FocResiduals foc_residuals(const MarketParams& params,
                           const PriceVector& prices);

// The stationarity conditions written as residual = A * p + b.
struct FocSystem {
  Eigen::Matrix3d matrix;
  Eigen::Vector3d offset;
};

FocSystem foc_system(const MarketParams& params);

struct LinearSolveResult {
  PriceVector prices;
  double condition_number = 0.0;
};

// Throws ModelError(kSingularSystem) when cond(A) exceeds
// kMaxConditionNumber or is not finite.
LinearSolveResult solve_foc_system(const MarketParams& params);

struct ConcavityReport {
  bool cond_main = false;  // alpha > (1 + theta) / 2
  bool cond_aux = false;   // alpha > theta
  // d^2 pi_i / d p_i^2 for the three retailers.
  std::array<double, 3> second_derivatives{};

  bool concave() const;
  // Both parameter conditions hold and every second derivative is negative.
  bool ok() const;
};

ConcavityReport concavity_check(const MarketParams& params);

struct FeasibilityCheck {
  std::string name;
  bool passed = false;
  std::string explanation;
};

struct EquilibriumResult {
  PriceVector prices;
  DemandSplit split;
  ProfitVector profits;
  IndifferencePoints points;
  // Regime the equilibrium thresholds fall in; empty on a threshold tie.
  std::optional<Regime> regime;
  FocResiduals foc;
  ConcavityReport concavity;
  std::vector<FeasibilityCheck> feasibility;
  std::vector<Finding> warnings;

  bool all_feasible() const;
  const FeasibilityCheck* check(const std::string& name) const;
};

// Closed-form prices, interior demands and profits, plus a checklist of
// interiority conditions. Failed checks are reported, never thrown.
EquilibriumResult solve_equilibrium(const MarketParams& params);

}  // namespace triplechannel

#endif  // TRIPLECHANNEL_EQUILIBRIUM_H_
