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

// Numerical oracles that check the analytic model from the outside: a
// Monte Carlo consumer population that buys by direct utility comparison,
// and own-price searches that test whether a price vector is a Nash point.

#ifndef TRIPLECHANNEL_ORACLE_H_
#define TRIPLECHANNEL_ORACLE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "triplechannel/market_model.h"

namespace triplechannel {

// Draws are generated in fixed-size partitions. Partition k uses a
// std::mt19937_64 seeded with std::seed_seq{seed_lo, seed_hi, k}, and each
// 64-bit output becomes a double in [0,1) from its top 53 bits. Every piece
// is fully specified by the C++ standard, so estimates are bit-identical
// across platforms and independent of the number of worker threads.
inline constexpr std::uint64_t kMcPartitionSize = 1u << 16;
inline constexpr std::string_view kMcGenerator =
    "mt19937_64/seed_seq(seed_lo,seed_hi,partition)/top53;partition=65536";

// Utility-maximizing choice among offered channels, or nullopt if no
// offered utility is strictly positive. Exact ties go to the channel with
// the lowest zero-utility threshold: online, then organized, then
// unorganized.
std::optional<Channel> choose_channel(double v, const MarketParams& params,
                                      const PriceVector& prices,
                                      ChannelSet set);

struct McDemandEstimate {
  std::array<double, 3> d_hat{};
  std::array<double, 3> std_err{};
  std::array<std::uint64_t, 3> counts{};
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

// workers == 0 picks std::thread::hardware_concurrency().
McDemandEstimate monte_carlo_demand(const MarketParams& params,
                                    const PriceVector& prices, ChannelSet set,
                                    std::uint64_t n, std::uint64_t seed,
                                    unsigned workers = 0);

struct McComparison {
  bool applicable = false;
  std::string skip_reason;
  // |d_hat - analytic| / std_err per channel; infinite when the standard
  // error is zero but the two disagree.
  std::array<double, 3> z{};
  double sigmas = 3.0;

  bool agrees() const;
};

// Only meaningful when every analytic demand lies in [0,1]; otherwise the
// result is marked not applicable.
McComparison compare_with_analytic(const McDemandEstimate& estimate,
                                   const DemandSplit& analytic,
                                   double sigmas = 3.0);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Own-profit-maximizing price for `channel` with the other two prices held
// at their values in `prices` (the channel's own entry is ignored). Payoffs
// are the three-channel profit functions. When the own profit is concave
// the maximizer is the vertex of the quadratic through three evaluations;
// otherwise a 1001-point grid scan refined by golden-section search to
// `tol` is used. Throws ModelError(kBracketMiss) if the concave maximizer
// lies outside the bracket.
double best_response(const MarketParams& params, const PriceVector& prices,
                     Channel channel, Bracket bracket, double tol);

struct DeviationReport {
  Channel channel = Channel::kUnorganized;
  double incumbent_price = 0.0;
  double incumbent_profit = 0.0;
  double best_deviation_price = 0.0;
  double best_deviation_profit = 0.0;
  double profit_gain = 0.0;  // >= 0; the incumbent is part of the scan
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  int steps = 0;
};

// Unilateral deviation scan: for each channel, `steps` prices evenly spaced
// over [p_i (1 - rel_range), p_i (1 + rel_range)] plus p_i itself, rivals
// fixed, with the best cell refined to `tol`. Throws ModelError(kInvalidSpec)
// if steps < 3.
std::array<DeviationReport, 3> nash_deviation_check(const MarketParams& params,
                                                    const PriceVector& prices,
                                                    double rel_range,
                                                    int steps, double tol);

}  // namespace triplechannel

#endif  // TRIPLECHANNEL_ORACLE_H_
