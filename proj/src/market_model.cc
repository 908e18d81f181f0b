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

#include "triplechannel/market_model.h"

#include <cmath>
#include <string>

#include "triplechannel/errors.h"

namespace triplechannel {
namespace {

double checked_denominator(double value, const char* name) {
  if (!std::isfinite(value) || std::abs(value) <= kTieTolerance) {
    throw ModelError(ErrorKind::kDegenerateDenominator, name,
                     std::string("denominator '") + name +
                         "' vanishes for these parameters");
  }
  return value;
}

// True when a < b; throws on a tie. `what` names the comparison.
bool strictly_below(double a, double b, const char* what) {
  if (std::abs(a - b) <= kTieTolerance) {
    throw ModelError(ErrorKind::kTieCase, what,
                     std::string("thresholds tie in comparison ") + what +
                         "; the regime is undefined on this boundary");
  }
  return a < b;
}

Regime make_regime(ChannelSet set, RegimeCase label,
                   std::initializer_list<Channel> active) {
  Regime regime;
  regime.channel_set = set;
  regime.case_label = label;
  for (Channel c : active) regime.active.set(index_of(c));
  return regime;
}

}  // namespace

std::string_view to_string(Channel channel) {
  switch (channel) {
    case Channel::kUnorganized: return "unorganized";
    case Channel::kOrganized: return "organized";
    case Channel::kOnline: return "online";
  }
  return "?";
}

double MarketParams::cost(Channel channel) const {
  switch (channel) {
    case Channel::kUnorganized: return c1;
    case Channel::kOrganized: return c2;
    case Channel::kOnline: return c3;
  }
  return 0.0;
}

std::string_view to_string(ParamId id) {
  switch (id) {
    case ParamId::kAlpha: return "alpha";
    case ParamId::kTheta: return "theta";
    case ParamId::kBeta: return "beta";
    case ParamId::kM: return "m";
    case ParamId::kT: return "t";
    case ParamId::kX: return "x";
    case ParamId::kMu1: return "mu1";
    case ParamId::kMu2: return "mu2";
    case ParamId::kC1: return "c1";
    case ParamId::kC2: return "c2";
    case ParamId::kC3: return "c3";
  }
  return "?";
}

std::optional<ParamId> parse_param_id(std::string_view name) {
  for (ParamId id : kAllParams) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

double get_param(const MarketParams& p, ParamId id) {
  switch (id) {
    case ParamId::kAlpha: return p.alpha;
    case ParamId::kTheta: return p.theta;
    case ParamId::kBeta: return p.beta;
    case ParamId::kM: return p.m;
    case ParamId::kT: return p.t;
    case ParamId::kX: return p.x;
    case ParamId::kMu1: return p.mu1;
    case ParamId::kMu2: return p.mu2;
    case ParamId::kC1: return p.c1;
    case ParamId::kC2: return p.c2;
    case ParamId::kC3: return p.c3;
  }
  return 0.0;
}

MarketParams with_param(MarketParams p, ParamId id, double value) {
  switch (id) {
    case ParamId::kAlpha: p.alpha = value; break;
    case ParamId::kTheta: p.theta = value; break;
    case ParamId::kBeta: p.beta = value; break;
    case ParamId::kM: p.m = value; break;
    case ParamId::kT: p.t = value; break;
    case ParamId::kX: p.x = value; break;
    case ParamId::kMu1: p.mu1 = value; break;
    case ParamId::kMu2: p.mu2 = value; break;
    case ParamId::kC1: p.c1 = value; break;
    case ParamId::kC2: p.c2 = value; break;
    case ParamId::kC3: p.c3 = value; break;
  }
  return p;
}

std::vector<ValidationIssue> validate(const MarketParams& params) {
  std::vector<ValidationIssue> issues;
  for (ParamId id : kAllParams) {
    const double value = get_param(params, id);
    const std::string name(to_string(id));
    if (!std::isfinite(value)) {
      issues.push_back({name, name + " is not finite"});
      continue;
    }
    switch (id) {
      case ParamId::kAlpha:
      case ParamId::kTheta:
        if (!(value > 0.0 && value < 1.0))
          issues.push_back({name, name + " must lie in (0,1)"});
        break;
      case ParamId::kBeta:
      case ParamId::kM:
        if (!(value > 0.0 && value <= 1.0))
          issues.push_back({name, name + " must lie in (0,1]"});
        break;
      default:
        if (value < 0.0)
          issues.push_back({name, name + " must be non-negative"});
        break;
    }
  }
  return issues;
}

bool model_validity(const MarketParams& params) {
  return params.alpha > (1.0 + params.theta) / 2.0;
}

double PriceVector::at(Channel channel) const {
  switch (channel) {
    case Channel::kUnorganized: return p1;
    case Channel::kOrganized: return p2;
    case Channel::kOnline: return p3;
  }
  return 0.0;
}

PriceVector PriceVector::with(Channel channel, double price) const {
  PriceVector out = *this;
  switch (channel) {
    case Channel::kUnorganized: out.p1 = price; break;
    case Channel::kOrganized: out.p2 = price; break;
    case Channel::kOnline: out.p3 = price; break;
  }
  return out;
}

double Utilities::at(Channel channel) const {
  switch (channel) {
    case Channel::kUnorganized: return unorganized;
    case Channel::kOrganized: return organized;
    case Channel::kOnline: return online;
  }
  return 0.0;
}

Utilities utilities(double v, const MarketParams& params,
                    const PriceVector& prices) {
  const double m = params.m;
  return Utilities{
      params.alpha * v - m * prices.p1 - params.t * params.x,
      v - m * prices.p2 - params.mu1,
      params.theta * v - m * prices.p3 - params.mu2,
  };
}

IndifferencePoints indifference_points(const MarketParams& params,
                                       const PriceVector& prices) {
  const double a = params.alpha;
  const double th = params.theta;
  const double m = params.m;
  const double tx = params.travel_cost();
  const double mu1 = params.mu1;
  const double mu2 = params.mu2;
  const double p1 = prices.p1;
  const double p2 = prices.p2;
  const double p3 = prices.p3;

  const double den_alpha = checked_denominator(a, "alpha");
  const double den_theta = checked_denominator(th, "theta");
  const double den_uo = checked_denominator(a - 1.0, "alpha-1");
  const double den_oe = checked_denominator(1.0 - th, "1-theta");
  const double den_ue = checked_denominator(a - th, "alpha-theta");
  const double den_uoe =
      checked_denominator(2.0 * a - th - 1.0, "2*alpha-theta-1");

  IndifferencePoints v;
  v.v_u = (m * p1 + tx) / den_alpha;
  v.v_o = m * p2 + mu1;
  v.v_e = (m * p3 + mu2) / den_theta;
  v.v_uo = (m * (p1 - p2) + tx - mu1) / den_uo;
  v.v_oe = (m * (p2 - p3) + mu1 - mu2) / den_oe;
  v.v_ue = (m * (p1 - p3) + tx - mu2) / den_ue;
  v.v_uoe = (m * (2.0 * p1 - p2 - p3) + 2.0 * tx - mu1 - mu2) / den_uoe;
  return v;
}

std::string_view to_string(ChannelSet set) {
  switch (set) {
    case ChannelSet::kOrganizedOnline: return "oe";
    case ChannelSet::kUnorganizedOrganized: return "uo";
    case ChannelSet::kUnorganizedOnline: return "ue";
    case ChannelSet::kAll: return "uoe";
  }
  return "?";
}

std::optional<ChannelSet> parse_channel_set(std::string_view text) {
  if (text == "oe" || text == "eo") return ChannelSet::kOrganizedOnline;
  if (text == "uo" || text == "ou") return ChannelSet::kUnorganizedOrganized;
  if (text == "ue" || text == "eu") return ChannelSet::kUnorganizedOnline;
  if (text == "uoe" || text == "all") return ChannelSet::kAll;
  return std::nullopt;
}

bool offers(ChannelSet set, Channel channel) {
  switch (set) {
    case ChannelSet::kOrganizedOnline:
      return channel != Channel::kUnorganized;
    case ChannelSet::kUnorganizedOrganized:
      return channel != Channel::kOnline;
    case ChannelSet::kUnorganizedOnline:
      return channel != Channel::kOrganized;
    case ChannelSet::kAll:
      return true;
  }
  return false;
}

std::string_view to_string(RegimeCase label) {
  switch (label) {
    case RegimeCase::kOrganizedOnlineBoth: return "oe:both_active";
    case RegimeCase::kOrganizedOnlyOfOe: return "oe:online_inactive";
    case RegimeCase::kUnorganizedOrganizedBoth: return "uo:both_active";
    case RegimeCase::kUnorganizedOnlyOfUo: return "uo:organized_inactive";
    case RegimeCase::kUnorganizedOnlineBoth: return "ue:both_active";
    case RegimeCase::kUnorganizedOnlyOfUe: return "ue:online_inactive";
    case RegimeCase::kTripleAllActive: return "uoe:case1_all_active";
    case RegimeCase::kTripleOrganizedInactive:
      return "uoe:case2_organized_inactive";
  }
  return "?";
}

Regime classify_regime(const IndifferencePoints& v, ChannelSet set) {
  using C = Channel;
  switch (set) {
    case ChannelSet::kOrganizedOnline:
      return strictly_below(v.v_e, v.v_o, "v_e<v_o")
                 ? make_regime(set, RegimeCase::kOrganizedOnlineBoth,
                               {C::kOrganized, C::kOnline})
                 : make_regime(set, RegimeCase::kOrganizedOnlyOfOe,
                               {C::kOrganized});
    case ChannelSet::kUnorganizedOrganized:
      return strictly_below(v.v_o, v.v_u, "v_o<v_u")
                 ? make_regime(set, RegimeCase::kUnorganizedOrganizedBoth,
                               {C::kUnorganized, C::kOrganized})
                 : make_regime(set, RegimeCase::kUnorganizedOnlyOfUo,
                               {C::kUnorganized});
    case ChannelSet::kUnorganizedOnline:
      return strictly_below(v.v_e, v.v_u, "v_e<v_u")
                 ? make_regime(set, RegimeCase::kUnorganizedOnlineBoth,
                               {C::kUnorganized, C::kOnline})
                 : make_regime(set, RegimeCase::kUnorganizedOnlyOfUe,
                               {C::kUnorganized});
    case ChannelSet::kAll:
      return strictly_below(v.v_ue, v.v_uo, "v_ue<v_uo")
                 ? make_regime(set, RegimeCase::kTripleAllActive,
                               {C::kUnorganized, C::kOrganized, C::kOnline})
                 : make_regime(set, RegimeCase::kTripleOrganizedInactive,
                               {C::kUnorganized, C::kOnline});
  }
  throw ModelError(ErrorKind::kInvalidSpec, "channel_set",
                   "unknown channel set");
}

double DemandSplit::at(Channel channel) const {
  switch (channel) {
    case Channel::kUnorganized: return d_u;
    case Channel::kOrganized: return d_o;
    case Channel::kOnline: return d_e;
  }
  return 0.0;
}

std::vector<Finding> demand_bound_violations(const DemandSplit& split) {
  std::vector<Finding> out;
  static constexpr const char* kCodes[] = {"d_u_out_of_range",
                                           "d_o_out_of_range",
                                           "d_e_out_of_range"};
  static constexpr const char* kNames[] = {"D_u", "D_o", "D_e"};
  for (Channel c : kAllChannels) {
    const double d = split.at(c);
    if (d < 0.0) {
      out.push_back({kCodes[index_of(c)],
                     std::string(kNames[index_of(c)]) +
                         " < 0: interior-solution condition violated, the "
                         "demand formula extrapolates below zero"});
    } else if (d > 1.0) {
      out.push_back({kCodes[index_of(c)],
                     std::string(kNames[index_of(c)]) +
                         " > 1: demand exceeds the unit population"});
    }
  }
  if (split.total() > 1.0) {
    out.push_back({"total_above_one",
                   "D_u + D_o + D_e > 1: more than the whole population "
                   "buys"});
  }
  return out;
}

DemandSplit interior_demand(const MarketParams& params,
                            const PriceVector& prices) {
  const IndifferencePoints v = indifference_points(params, prices);
  return DemandSplit{1.0 - v.v_uoe, v.v_uoe - v.v_oe, v.v_oe - v.v_e};
}

DemandResult demand(const MarketParams& params, const PriceVector& prices,
                    ChannelSet set) {
  DemandResult result;
  result.points = indifference_points(params, prices);
  result.regime = classify_regime(result.points, set);
  const IndifferencePoints& v = result.points;
  DemandSplit& d = result.split;
  switch (result.regime.case_label) {
    case RegimeCase::kOrganizedOnlineBoth:
      d = {0.0, 1.0 - v.v_oe, v.v_oe - v.v_e};
      break;
    case RegimeCase::kOrganizedOnlyOfOe:
      d = {0.0, 1.0 - v.v_o, 0.0};
      break;
    case RegimeCase::kUnorganizedOrganizedBoth:
      d = {1.0 - v.v_uo, v.v_uo - v.v_o, 0.0};
      break;
    case RegimeCase::kUnorganizedOnlyOfUo:
    case RegimeCase::kUnorganizedOnlyOfUe:
      d = {1.0 - v.v_u, 0.0, 0.0};
      break;
    case RegimeCase::kUnorganizedOnlineBoth:
      d = {1.0 - v.v_ue, 0.0, v.v_ue - v.v_e};
      break;
    case RegimeCase::kTripleAllActive:
      d = {1.0 - v.v_uoe, v.v_uoe - v.v_oe, v.v_oe - v.v_e};
      break;
    case RegimeCase::kTripleOrganizedInactive:
      d = {1.0 - v.v_uoe, 0.0, v.v_uoe - v.v_e};
      break;
  }
  result.violations = demand_bound_violations(d);
  return result;
}

double ProfitVector::at(Channel channel) const {
  switch (channel) {
    case Channel::kUnorganized: return pi1;
    case Channel::kOrganized: return pi2;
    case Channel::kOnline: return pi3;
  }
  return 0.0;
}

ProfitVector profits(const MarketParams& params, const PriceVector& prices,
                     const DemandSplit& split) {
  const double b = params.beta;
  return ProfitVector{b * (prices.p1 - params.c1) * split.d_u,
                      b * (prices.p2 - params.c2) * split.d_o,
                      b * (prices.p3 - params.c3) * split.d_e};
}

ProfitVector interior_profits(const MarketParams& params,
                              const PriceVector& prices) {
  return profits(params, prices, interior_demand(params, prices));
}

}  // namespace triplechannel
