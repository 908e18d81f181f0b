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


#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "test_support.h"
#include "triplechannel/equilibrium.h"
#include "triplechannel/errors.h"
#include "triplechannel/oracle.h"

namespace triplechannel {
namespace {

using testing::base_params;
using testing::feasible_params;

PriceVector feasible_prices() { return closed_form_prices(feasible_params()); }

TEST_SUITE("oracle") {

TEST_CASE("choice rule picks the best positive utility") {
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  const IndifferencePoints v = indifference_points(q, p);
  CHECK_FALSE(choose_channel(0.5 * v.v_e, q, p, ChannelSet::kAll));
  CHECK(choose_channel(0.5 * (v.v_e + v.v_oe), q, p, ChannelSet::kAll) ==
        Channel::kOnline);
  CHECK(choose_channel(0.5 * (v.v_oe + 1.0), q, p, ChannelSet::kAll) ==
        Channel::kOrganized);
  // Unorganized wins only if organized is not offered.
  CHECK(choose_channel(0.99, q, p, ChannelSet::kUnorganizedOnline) ==
        Channel::kUnorganized);
}

TEST_CASE("utility ties resolve toward the lower-threshold channel") {
  MarketParams q = feasible_params();
  q.alpha = 0.5;
  q.theta = 0.5;
  q.t = 0.0;
  q.mu1 = 0.0;
  q.mu2 = 0.0;
  // At v = 1 with equal online and unorganized utilities and organized
  // priced out, online wins the tie.
  const PriceVector p{0.1, 10.0, 0.1};
  CHECK(choose_channel(1.0, q, p, ChannelSet::kAll) == Channel::kOnline);
  CHECK(choose_channel(1.0, q, p, ChannelSet::kUnorganizedOnline) ==
        Channel::kOnline);
}

TEST_CASE("prohibitive prices give empty demand") {
  const MarketParams q = feasible_params();
  const McDemandEstimate e =
      monte_carlo_demand(q, {10.0, 10.0, 10.0}, ChannelSet::kAll, 10000, 1);
  CHECK(e.counts[0] + e.counts[1] + e.counts[2] == 0);
  CHECK(e.std_err[0] == 0.0);
}

TEST_CASE("estimates are deterministic and independent of worker count") {
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  const std::uint64_t n = 300001;
  const auto one = monte_carlo_demand(q, p, ChannelSet::kAll, n, 42, 1);
  const auto four = monte_carlo_demand(q, p, ChannelSet::kAll, n, 42, 4);
  const auto again = monte_carlo_demand(q, p, ChannelSet::kAll, n, 42, 0);
  CHECK(one.counts == four.counts);
  CHECK(one.counts == again.counts);
  CHECK(one.d_hat == four.d_hat);
  const auto other = monte_carlo_demand(q, p, ChannelSet::kAll, n, 43, 1);
  CHECK(other.counts != one.counts);
  CHECK(one.generator == kMcGenerator);
  CHECK_THROWS_AS(monte_carlo_demand(q, p, ChannelSet::kAll, 0, 1), ModelError);
}

TEST_CASE("standard errors follow the binomial formula") {
  const MarketParams q = feasible_params();
  const auto e = monte_carlo_demand(q, feasible_prices(), ChannelSet::kAll,
                                    100000, 5);
  for (int i = 0; i < 3; ++i) {
    CHECK(e.d_hat[i] >= 0.0);
    CHECK(e.d_hat[i] <= 1.0);
    CHECK(e.std_err[i] ==
          doctest::Approx(std::sqrt(e.d_hat[i] * (1 - e.d_hat[i]) / 1e5)));
  }
}

TEST_CASE("pairwise markets match the analytic demand") {
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  for (ChannelSet set :
       {ChannelSet::kOrganizedOnline, ChannelSet::kUnorganizedOnline}) {
    INFO(to_string(set));
    const DemandResult analytic = demand(q, p, set);
    const auto est = monte_carlo_demand(q, p, set, 1000000, 42);
    const McComparison cmp = compare_with_analytic(est, analytic.split);
    CHECK(cmp.applicable);
    CHECK(cmp.agrees());
  }
}

TEST_CASE("organized dominates unorganized at high valuations") {
  // With alpha < 1 the organized-minus-unorganized utility gap grows in v,
  // so the top of the market never shops unorganized. The pairwise
  // unorganized/organized formula assigns it to unorganized instead.
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  const auto est =
      monte_carlo_demand(q, p, ChannelSet::kUnorganizedOrganized, 200000, 42);
  const DemandResult analytic = demand(q, p, ChannelSet::kUnorganizedOrganized);
  CHECK(est.counts[index_of(Channel::kUnorganized)] == 0);
  CHECK(analytic.split.d_u > 0.5);
  CHECK_FALSE(compare_with_analytic(est, analytic.split).agrees());
}

TEST_CASE("three-channel market: sampled online share matches, the rest do not") {
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  const IndifferencePoints v = indifference_points(q, p);
  const auto est = monte_carlo_demand(q, p, ChannelSet::kAll, 1000000, 42);
  const DemandSplit interior = interior_demand(q, p);
  const McComparison cmp = compare_with_analytic(est, interior);
  REQUIRE(cmp.applicable);
  CHECK(cmp.z[index_of(Channel::kOnline)] <= 3.0);
  CHECK_FALSE(cmp.agrees());
  // Sampled boundaries sit at v_e and v_oe.
  CHECK(est.d_hat[0] == 0.0);
  CHECK(std::abs(est.d_hat[1] - (1.0 - v.v_oe)) <= 3 * est.std_err[1]);
  CHECK(std::abs(est.d_hat[2] - (v.v_oe - v.v_e)) <= 3 * est.std_err[2]);
}

TEST_CASE("comparison is skipped when analytic demand leaves [0,1]") {
  const MarketParams q = base_params();
  const PriceVector p = closed_form_prices(q);
  const auto est = monte_carlo_demand(q, p, ChannelSet::kAll, 1000, 1);
  const McComparison cmp = compare_with_analytic(est, interior_demand(q, p));
  CHECK_FALSE(cmp.applicable);
  CHECK_FALSE(cmp.skip_reason.empty());
  CHECK_FALSE(cmp.agrees());
}

TEST_CASE("Monte Carlo error shrinks like n^-1/2") {
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  const DemandSplit exact = demand(q, p, ChannelSet::kOrganizedOnline).split;
  std::vector<double> log_n;
  std::vector<double> log_err;
  for (std::uint64_t n : {10000u, 100000u, 1000000u, 10000000u}) {
    const int reps = n >= 10000000u ? 4 : 16;
    double sq = 0.0;
    for (int r = 0; r < reps; ++r) {
      const auto est = monte_carlo_demand(q, p, ChannelSet::kOrganizedOnline,
                                          n, 1000 + r);
      for (int i = 1; i < 3; ++i) {
        const double e = est.d_hat[i] - exact.at(kAllChannels[i]);
        sq += e * e;
      }
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_err.push_back(0.5 * std::log(sq / (2 * reps)));
  }
  const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / 4;
  const double my = std::accumulate(log_err.begin(), log_err.end(), 0.0) / 4;
  double sxy = 0.0;
  double sxx = 0.0;
  for (int i = 0; i < 4; ++i) {
    sxy += (log_n[i] - mx) * (log_err[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = sxy / sxx;
  INFO("slope = " << slope);
  CHECK(std::abs(slope + 0.5) <= 0.1);
}

TEST_CASE("best response reproduces each closed-form price") {
  for (const MarketParams& q : {feasible_params(), base_params()}) {
    const PriceVector p = closed_form_prices(q);
    for (Channel c : kAllChannels) {
      const double own = p.at(c);
      const Bracket b{own - std::abs(own), own + std::abs(own)};
      const double br = best_response(q, p, c, b, 1e-10);
      CHECK(br == doctest::Approx(own).epsilon(1e-6));
    }
  }
}

TEST_CASE("best response dominates a 1001-point grid and is stationary") {
  const MarketParams q = feasible_params();
  const PriceVector eq = feasible_prices();
  const PriceVector p{eq.p1 * 1.2, eq.p2 * 0.9, eq.p3 * 1.1};
  for (Channel c : kAllChannels) {
    const Bracket b{0.0, 2.0};
    const double br = best_response(q, p, c, b, 1e-10);
    auto own = [&](double price) {
      return interior_profits(q, p.with(c, price)).at(c);
    };
    const double best = own(br);
    for (int i = 0; i <= 1000; ++i) {
      CHECK(own(b.lo + (b.hi - b.lo) * i / 1000.0) <= best + 1e-15);
    }
    const double h = 1e-4;
    const double slope = (own(br + h) - own(br - h)) / (2 * h);
    CHECK(std::abs(slope) <= 1e-6);
  }
}

TEST_CASE("best response reports a root outside the bracket") {
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  try {
    best_response(q, p, Channel::kOrganized, {0.0, 0.1}, 1e-10);
    FAIL("expected BracketMiss");
  } catch (const ModelError& e) {
    CHECK(e.kind() == ErrorKind::kBracketMiss);
    CHECK(e.detail() == "organized");
  }
  CHECK_THROWS_AS(
      best_response(q, p, Channel::kOrganized, {0.3, 0.3}, 1e-10),
      ModelError);
}

TEST_CASE("non-concave own profit falls back to the grid") {
  MarketParams q = feasible_params();
  q.alpha = 0.7;  // 2 alpha - theta - 1 < 0: unorganized profit is convex
  const PriceVector p{0.5, 0.28, 0.26};
  const Bracket b{0.0, 2.0};
  const double br = best_response(q, p, Channel::kUnorganized, b, 1e-9);
  auto own = [&](double price) {
    return interior_profits(q, p.with(Channel::kUnorganized, price)).pi1;
  };
  CHECK(own(br) >= std::max(own(b.lo), own(b.hi)) - 1e-12);
  CHECK((br == doctest::Approx(b.lo) || br == doctest::Approx(b.hi)));
}

TEST_CASE("Nash certification at the feasible equilibrium") {
  const MarketParams q = feasible_params();
  const PriceVector p = feasible_prices();
  const ProfitVector pi = interior_profits(q, p);
  const auto reports = nash_deviation_check(q, p, 0.5, 1001, 1e-12);
  for (const auto& r : reports) {
    INFO(to_string(r.channel));
    CHECK(r.profit_gain >= 0.0);
    CHECK(r.profit_gain <= 1e-6 * std::abs(pi.at(r.channel)));
    CHECK(r.grid_lo <= r.incumbent_price);
    CHECK(r.incumbent_price <= r.grid_hi);
  }
}

TEST_CASE("perturbed prices show a profitable deviation") {
  const MarketParams q = base_params();
  PriceVector p = closed_form_prices(q);
  p.p1 += 10.0;
  const auto reports = nash_deviation_check(q, p, 0.5, 1001, 1e-9);
  CHECK(reports[0].profit_gain > 0.0);
  CHECK(reports[0].best_deviation_price < p.p1);
}

TEST_CASE("deviation gains scale with beta") {
  MarketParams q = feasible_params();
  PriceVector p = feasible_prices();
  p.p2 *= 1.1;
  q.beta = 1.0;
  const auto unit = nash_deviation_check(q, p, 0.5, 101, 1e-12);
  q.beta = 0.25;
  const auto scaled = nash_deviation_check(q, p, 0.5, 101, 1e-12);
  for (int i = 0; i < 3; ++i) {
    CHECK(scaled[i].profit_gain ==
          doctest::Approx(0.25 * unit[i].profit_gain).epsilon(1e-9));
    CHECK(scaled[i].best_deviation_price ==
          doctest::Approx(unit[i].best_deviation_price).epsilon(1e-9));
  }
  CHECK(unit[1].profit_gain > 0.0);
  CHECK_THROWS_AS(nash_deviation_check(q, p, 0.5, 2, 1e-9), ModelError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace triplechannel
