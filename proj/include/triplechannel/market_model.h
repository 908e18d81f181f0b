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

// Consumer choice model for a market served by an unorganized (neighbourhood)
// pharmacy, an organized chain pharmacy and an online pharmacy.
//
// A consumer with valuation v in [0,1] gets
//   U_u = alpha*v - m*p1 - t*x      (unorganized)
//   U_o = v - m*p2 - mu1            (organized)
//   U_e = theta*v - m*p3 - mu2      (online)
// and valuations are uniform with density one, so demands are lengths of
// valuation intervals bounded by the indifference points below.
//
// Nothing here clamps to [0,1]. Out-of-range thresholds and demands are
// reported through diagnostics so that raw formula evaluation is always
// available.

#ifndef TRIPLECHANNEL_MARKET_MODEL_H_
#define TRIPLECHANNEL_MARKET_MODEL_H_

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace triplechannel {

// Absolute tolerance under which two thresholds count as equal, or a
// denominator counts as zero.
inline constexpr double kTieTolerance = 1e-12;

enum class Channel { kUnorganized = 0, kOrganized = 1, kOnline = 2 };
inline constexpr std::array<Channel, 3> kAllChannels = {
    Channel::kUnorganized, Channel::kOrganized, Channel::kOnline};

std::string_view to_string(Channel channel);
inline int index_of(Channel channel) { return static_cast<int>(channel); }

struct MarketParams {
  double alpha = 0.0;  // acceptance of the unorganized channel, (0,1)
  double theta = 0.0;  // acceptance of the online channel, (0,1)
  double beta = 0.0;   // probability of category-level demand, (0,1]
  double m = 0.0;      // marginal utility of money, (0,1]
  double t = 0.0;      // transport cost, Rs/km
  double x = 0.0;      // distance to nearest unorganized retailer, km
  double mu1 = 0.0;    // disutility of organized purchase, Rs
  double mu2 = 0.0;    // disutility of online purchase, Rs
  double c1 = 0.0;     // marginal costs, Rs
  double c2 = 0.0;
  double c3 = 0.0;

  double travel_cost() const { return t * x; }
  double cost(Channel channel) const;

  friend bool operator==(const MarketParams&, const MarketParams&) = default;
};

enum class ParamId {
  kAlpha, kTheta, kBeta, kM, kT, kX, kMu1, kMu2, kC1, kC2, kC3
};
inline constexpr std::array<ParamId, 11> kAllParams = {
    ParamId::kAlpha, ParamId::kTheta, ParamId::kBeta, ParamId::kM,
    ParamId::kT,     ParamId::kX,     ParamId::kMu1,  ParamId::kMu2,
    ParamId::kC1,    ParamId::kC2,    ParamId::kC3};

std::string_view to_string(ParamId id);
std::optional<ParamId> parse_param_id(std::string_view name);
double get_param(const MarketParams& params, ParamId id);
MarketParams with_param(MarketParams params, ParamId id, double value);

struct ValidationIssue {
  std::string field;
  std::string message;
};

// Range checks for the model's parameter domain. Kept apart from evaluation
// so that out-of-domain scenarios can still be computed and inspected.
std::vector<ValidationIssue> validate(const MarketParams& params);

// alpha > (1 + theta) / 2, the parameter condition under which all three
// profit functions are concave and the closed-form prices are optimal.
bool model_validity(const MarketParams& params);

struct PriceVector {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;

  double at(Channel channel) const;
  PriceVector with(Channel channel, double price) const;

  friend bool operator==(const PriceVector&, const PriceVector&) = default;
};

struct Utilities {
  double unorganized = 0.0;
  double organized = 0.0;
  double online = 0.0;

  double at(Channel channel) const;
};

Utilities utilities(double v, const MarketParams& params,
                    const PriceVector& prices);

// Valuation thresholds. v_u, v_o, v_e are where each channel's utility
// crosses zero; v_oe, v_uo, v_ue are pairwise utility ties; v_uoe solves the
// two unorganized-vs-rival ties added together.
struct IndifferencePoints {
  double v_u = 0.0;
  double v_o = 0.0;
  double v_e = 0.0;
  double v_uo = 0.0;
  double v_oe = 0.0;
  double v_ue = 0.0;
  double v_uoe = 0.0;
};

// Throws ModelError(kDegenerateDenominator) naming the first vanishing
// denominator among alpha, theta, alpha-1, 1-theta, alpha-theta and
// 2*alpha-theta-1.
IndifferencePoints indifference_points(const MarketParams& params,
                                       const PriceVector& prices);

enum class ChannelSet {
  kOrganizedOnline,
  kUnorganizedOrganized,
  kUnorganizedOnline,
  kAll,
};

std::string_view to_string(ChannelSet set);
std::optional<ChannelSet> parse_channel_set(std::string_view text);
bool offers(ChannelSet set, Channel channel);

enum class RegimeCase {
  kOrganizedOnlineBoth,        // v_e < v_o
  kOrganizedOnlyOfOe,          // v_e > v_o, online has no demand
  kUnorganizedOrganizedBoth,   // v_o < v_u
  kUnorganizedOnlyOfUo,        // v_o > v_u, organized has no demand
  kUnorganizedOnlineBoth,      // v_e < v_u
  kUnorganizedOnlyOfUe,        // v_e > v_u, online has no demand
  kTripleAllActive,            // v_ue < v_uo
  kTripleOrganizedInactive,    // v_ue > v_uo
};

std::string_view to_string(RegimeCase label);

struct Regime {
  ChannelSet channel_set = ChannelSet::kAll;
  std::bitset<3> active;  // indexed by index_of(Channel)
  RegimeCase case_label = RegimeCase::kTripleAllActive;

  bool is_active(Channel channel) const { return active[index_of(channel)]; }
};

// Picks the demand case from the threshold comparison that defines it for
// the offered channel set. Throws ModelError(kTieCase) when the compared
// pair is equal within kTieTolerance.
Regime classify_regime(const IndifferencePoints& points, ChannelSet set);

struct DemandSplit {
  double d_u = 0.0;
  double d_o = 0.0;
  double d_e = 0.0;

  double at(Channel channel) const;
  double total() const { return d_u + d_o + d_e; }
};

struct Finding {
  std::string code;
  std::string message;
};

// Flags each demand outside [0,1] and a total above one. Values are never
// altered.
std::vector<Finding> demand_bound_violations(const DemandSplit& split);

struct DemandResult {
  DemandSplit split;
  Regime regime;
  IndifferencePoints points;
  std::vector<Finding> violations;

  bool within_bounds() const { return violations.empty(); }
};

// Regime-selected demand: classifies the thresholds, then applies the
// formulas for that case.
DemandResult demand(const MarketParams& params, const PriceVector& prices,
                    ChannelSet set = ChannelSet::kAll);

// The three-channel formulas applied unconditionally:
//   D_u = 1 - v_uoe,  D_o = v_uoe - v_oe,  D_e = v_oe - v_e.
// These define the payoffs of the pricing game regardless of which regime
// the thresholds fall in.
DemandSplit interior_demand(const MarketParams& params,
                            const PriceVector& prices);

struct ProfitVector {
  double pi1 = 0.0;
  double pi2 = 0.0;
  double pi3 = 0.0;

  double at(Channel channel) const;
};

// pi_i = beta * (p_i - c_i) * d_i.
ProfitVector profits(const MarketParams& params, const PriceVector& prices,
                     const DemandSplit& split);

// profits() over interior_demand(); the payoff functions of the game.
ProfitVector interior_profits(const MarketParams& params,
                              const PriceVector& prices);

}  // namespace triplechannel

#endif  // TRIPLECHANNEL_MARKET_MODEL_H_
