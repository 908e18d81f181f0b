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

#include "triplechannel/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "triplechannel/errors.h"

namespace triplechannel {
namespace {

double nonzero(double value, const char* name) {
  if (!std::isfinite(value) || std::abs(value) <= kTieTolerance) {
    throw ModelError(ErrorKind::kDegenerateDenominator, name,
                     std::string("denominator '") + name +
                         "' vanishes for these parameters");
  }
  return value;
}

std::string fmt_interval(double d) {
  return std::string(d < 0.0 ? "below 0" : "above 1");
}

}  // namespace

double closed_form_denominator(const MarketParams& params) {
  const double a = params.alpha;
  const double th = params.theta;
  return params.m * (2.0 + 4.0 * a * (-4.0 + th) + 11.0 * th - th * th);
}

PriceVector closed_form_prices(const MarketParams& params) {
  const double den = closed_form_denominator(params);
  if (!std::isfinite(den) || std::abs(den) <= kTieTolerance) {
    throw ModelError(ErrorKind::kSingularDenominator,
                     "m*(2+4*alpha*(theta-4)+11*theta-theta^2)",
                     "closed-form price denominator vanishes (m = " +
                         std::to_string(params.m) +
                         ", alpha = " + std::to_string(params.alpha) +
                         ", theta = " + std::to_string(params.theta) + ")");
  }

  const double a = params.alpha;
  const double th = params.theta;
  const double m = params.m;
  const double tx = params.travel_cost();
  const double c1 = params.c1;
  const double c2 = params.c2;
  const double c3 = params.c3;
  const double mu1 = params.mu1;
  const double mu2 = params.mu2;
  const double a2 = a * a;
  const double th2 = th * th;
  const double th3 = th2 * th;

  // Numerators are kept term for term in their published order.
  const double n1 = -2 * tx + 4 * a + 8 * tx * a - 8 * a2 - 3 * th -
                    5 * tx * th + 9 * a * th - 2 * tx * a * th +
                    2 * a2 * th - 3 * th2 + tx * th2 - a * th2 +
                    2 * m * (a * (-4 + th) + 3 * th) * c1 -
                    m * (a - th) * (2 + th) * c2 + m * c3 - 3 * m * a * c3 +
                    2 * m * th * c3 - 2 * a * mu1 + 2 * th * mu1 -
                    a * th * mu1 + th2 * mu1 + mu2 - 3 * a * mu2 +
                    2 * th * mu2;

  const double n2 = 2 - 4 * tx - 4 * a + 4 * tx * th + 4 * a * th -
                    2 * th2 + 4 * m * (-1 + th) * c1 +
                    8 * m * (-a + th) * c2 + 3 * m * c3 - 4 * m * a * c3 +
                    m * th * c3 - 2 * mu1 + 8 * a * mu1 - 3 * th * mu1 -
                    4 * a * th * mu1 + th2 * mu1 + 3 * mu2 - 4 * a * mu2 +
                    th * mu2;

  const double n3 = th - 2 * tx * th - 2 * a * th + 2 * tx * th2 +
                    2 * a * th2 - th3 + 2 * m * (-1 + th) * th * c1 +
                    4 * m * th * (-a + th) * c2 + m * c3 - 8 * m * a * c3 +
                    7 * m * th * c3 - 4 * a * th * mu1 + 4 * th2 * mu1 -
                    mu2 + 8 * a * mu2 - 4 * th * mu2 - 4 * a * th * mu2 +
                    th2 * mu2;

  return PriceVector{n1 / den, n2 / den, n3 / den};
}

double FocResiduals::at(Channel channel) const {
  switch (channel) {
    case Channel::kUnorganized: return r1;
    case Channel::kOrganized: return r2;
    case Channel::kOnline: return r3;
  }
  return 0.0;
}

double FocResiduals::max_abs() const {
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

FocResiduals foc_residuals(const MarketParams& params,
                           const PriceVector& prices) {
  const double k = nonzero(2 * params.alpha - params.theta - 1,
                           "2*alpha-theta-1");
  const double l = nonzero(1 - params.theta, "1-theta");
  const double th = nonzero(params.theta, "theta");
  const double m = params.m;
  const double tx = params.travel_cost();
  const double mu1 = params.mu1;
  const double mu2 = params.mu2;
  const double p1 = prices.p1;
  const double p2 = prices.p2;
  const double p3 = prices.p3;

  // The unorganized condition is customarily written as the negated
  // marginal profit; flip it so every residual carries the sign of
  // d pi_i / d p_i.
  const double unorganized_lhs = 4 * m * p1 / k - m * p2 / k - m * p3 / k +
                                 (2 * tx - mu1 - mu2 - 2 * m * params.c1) / k -
                                 1;
  const double r2 = 2 * m * p1 / k - (1 / k + 1 / l) * 2 * m * p2 -
                    (1 / k - 1 / l) * m * p3 +
                    (2 * tx - mu1 - mu2 + m * params.c2) / k +
                    (m * params.c2 - mu1 + mu2) / l;
  const double r3 = m / l * p2 - (1 / l + 1 / th) * 2 * m * p3 +
                    (mu1 - mu2 + m * params.c3) / l +
                    (m * params.c3 - mu2) / th;
  return FocResiduals{-unorganized_lhs, r2, r3};
}

FocSystem foc_system(const MarketParams& params) {
  const double k = nonzero(2 * params.alpha - params.theta - 1,
                           "2*alpha-theta-1");
  const double l = nonzero(1 - params.theta, "1-theta");
  const double th = nonzero(params.theta, "theta");
  const double m = params.m;
  const double tx = params.travel_cost();
  const double mu1 = params.mu1;
  const double mu2 = params.mu2;

  FocSystem sys;
  sys.matrix << -4 * m / k, m / k, m / k,
                2 * m / k, -2 * m * (1 / k + 1 / l), -m * (1 / k - 1 / l),
                0.0, m / l, -2 * m * (1 / l + 1 / th);
  sys.offset << 1 - (2 * tx - mu1 - mu2 - 2 * m * params.c1) / k,
                (2 * tx - mu1 - mu2 + m * params.c2) / k +
                    (m * params.c2 - mu1 + mu2) / l,
                (mu1 - mu2 + m * params.c3) / l + (m * params.c3 - mu2) / th;
  return sys;
}

LinearSolveResult solve_foc_system(const MarketParams& params) {
  const FocSystem sys = foc_system(params);
  const Eigen::Vector3d sv =
      Eigen::JacobiSVD<Eigen::Matrix3d>(sys.matrix).singularValues();
  const double cond = sv.minCoeff() > 0.0
                          ? sv.maxCoeff() / sv.minCoeff()
                          : std::numeric_limits<double>::infinity();
  if (!std::isfinite(cond) || cond > kMaxConditionNumber) {
    throw ModelError(ErrorKind::kSingularSystem, "foc_matrix",
                     "stationarity system is singular (condition number " +
                         std::to_string(cond) + ")");
  }
  const Eigen::Vector3d p =
      sys.matrix.colPivHouseholderQr().solve(-sys.offset);
  return LinearSolveResult{PriceVector{p(0), p(1), p(2)}, cond};
}

bool ConcavityReport::concave() const {
  return std::all_of(second_derivatives.begin(), second_derivatives.end(),
                     [](double d) { return d < 0.0; });
}

bool ConcavityReport::ok() const { return cond_main && cond_aux && concave(); }

ConcavityReport concavity_check(const MarketParams& params) {
  const double k = nonzero(2 * params.alpha - params.theta - 1,
                           "2*alpha-theta-1");
  const double l = nonzero(1 - params.theta, "1-theta");
  const double th = nonzero(params.theta, "theta");
  const double mb = params.m * params.beta;

  ConcavityReport report;
  report.cond_main = params.alpha > (1 + params.theta) / 2;
  report.cond_aux = params.alpha > params.theta;
  report.second_derivatives = {-4 * mb / k, -2 * mb * (1 / k + 1 / l),
                               -2 * mb * (1 / l + 1 / th)};
  return report;
}

bool EquilibriumResult::all_feasible() const {
  return std::all_of(feasibility.begin(), feasibility.end(),
                     [](const FeasibilityCheck& c) { return c.passed; });
}

const FeasibilityCheck* EquilibriumResult::check(
    const std::string& name) const {
  for (const auto& c : feasibility) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

EquilibriumResult solve_equilibrium(const MarketParams& params) {
  EquilibriumResult r;
  r.prices = closed_form_prices(params);
  r.points = indifference_points(params, r.prices);
  r.split = interior_demand(params, r.prices);
  r.profits = profits(params, r.prices, r.split);
  r.foc = foc_residuals(params, r.prices);
  r.concavity = concavity_check(params);

  try {
    r.regime = classify_regime(r.points, ChannelSet::kAll);
  } catch (const ModelError& e) {
    if (e.kind() != ErrorKind::kTieCase) throw;
    r.warnings.push_back({"regime_tie", e.what()});
  }
  if (!r.concavity.cond_main) {
    r.warnings.push_back(
        {"concavity_condition_violated",
         "alpha <= (1 + theta) / 2: the unorganized profit is not concave, "
         "so the stationary point is not a best response"});
  }

  const IndifferencePoints& v = r.points;
  auto add = [&r](std::string name, bool ok, std::string why) {
    r.feasibility.push_back({std::move(name), ok, std::move(why)});
  };
  add("two_channel_ordering", v.v_e < v.v_o && v.v_o < v.v_u,
      "v_e < v_o < v_u, necessary for at least two channels to have demand");
  add("threshold_chain",
      v.v_e < v.v_o && v.v_o < v.v_u && v.v_u < v.v_ue && v.v_ue < v.v_uoe,
      "v_e < v_o < v_u < v_ue < v_uoe, threshold ordering of the "
      "three-channel market");
  add("oe_below_uoe", v.v_oe < v.v_uoe,
      "v_oe < v_uoe, organized demand interval is non-empty");

  static constexpr const char* kDemandNames[] = {"demand_u_in_range",
                                                 "demand_o_in_range",
                                                 "demand_e_in_range"};
  static constexpr const char* kDemandSym[] = {"D_u", "D_o", "D_e"};
  static constexpr const char* kMarginNames[] = {"margin_u_nonneg",
                                                 "margin_o_nonneg",
                                                 "margin_e_nonneg"};
  static constexpr const char* kMarginSym[] = {"p1 >= c1", "p2 >= c2",
                                               "p3 >= c3"};
  for (Channel c : kAllChannels) {
    const int i = index_of(c);
    const double d = r.split.at(c);
    const bool in_range = d >= 0.0 && d <= 1.0;
    add(kDemandNames[i], in_range,
        in_range ? std::string(kDemandSym[i]) + " in [0,1]"
                 : std::string(kDemandSym[i]) + " " + fmt_interval(d) +
                       ": interior-solution condition violated");
  }
  add("demand_total_at_most_one", r.split.total() <= 1.0,
      "D_u + D_o + D_e <= 1");
  for (Channel c : kAllChannels) {
    const int i = index_of(c);
    const bool ok = r.prices.at(c) >= params.cost(c);
    add(kMarginNames[i], ok,
        ok ? std::string(kMarginSym[i])
           : std::string(kMarginSym[i]) +
                 " fails: price below marginal cost, profit comes from a "
                 "negative margin");
  }
  return r;
}

}  // namespace triplechannel
