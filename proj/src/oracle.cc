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

#include "triplechannel/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "triplechannel/errors.h"

namespace triplechannel {
namespace {

using Counts = std::array<std::uint64_t, 3>;

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Counts sample_partition(const MarketParams& params, const PriceVector& prices,
                        ChannelSet set, std::uint64_t seed,
                        std::uint64_t partition, std::uint64_t draws) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(partition),
                    static_cast<std::uint32_t>(partition >> 32)};
  std::mt19937_64 engine(seq);
  Counts counts{};
  for (std::uint64_t i = 0; i < draws; ++i) {
    const double v = unit_double(engine());
    if (auto c = choose_channel(v, params, prices, set)) {
      ++counts[index_of(*c)];
    }
  }
  return counts;
}

double own_profit(const MarketParams& params, const PriceVector& prices,
                  Channel channel, double price) {
  return interior_profits(params, prices.with(channel, price)).at(channel);
}

// Grid scan followed by Brent refinement of the best cell.
double grid_refined_max(const std::function<double(double)>& f, double lo,
                        double hi, int steps, double tol) {
  const double h = (hi - lo) / (steps - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < steps; ++i) {
    const double value = f(lo + i * h);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  const double cell_lo = lo + std::max(best - 1, 0) * h;
  const double cell_hi = lo + std::min(best + 1, steps - 1) * h;
  const int bits = std::clamp(
      static_cast<int>(std::ceil(std::log2((cell_hi - cell_lo) / tol))), 1,
      std::numeric_limits<double>::digits / 2);
  const double refined =
      boost::math::tools::brent_find_minima(
          [&f](double q) { return -f(q); }, cell_lo, cell_hi, bits)
          .first;
  return f(refined) > best_value ? refined : lo + best * h;
}

}  // namespace

std::optional<Channel> choose_channel(double v, const MarketParams& params,
                                      const PriceVector& prices,
                                      ChannelSet set) {
  const Utilities u = utilities(v, params, prices);
  std::optional<Channel> best;
  double best_utility = 0.0;
  // Priority order for ties: a later channel must be strictly better.
  for (Channel c :
       {Channel::kOnline, Channel::kOrganized, Channel::kUnorganized}) {
    if (!offers(set, c)) continue;
    const double value = u.at(c);
    if (!best ? value > 0.0 : value > best_utility) {
      best = c;
      best_utility = value;
    }
  }
  return best;
}

McDemandEstimate monte_carlo_demand(const MarketParams& params,
                                    const PriceVector& prices, ChannelSet set,
                                    std::uint64_t n, std::uint64_t seed,
                                    unsigned workers) {
  if (n == 0) {
    throw ModelError(ErrorKind::kInvalidSpec, "n",
                     "Monte Carlo sample count must be at least 1");
  }
  const std::uint64_t partitions =
      (n + kMcPartitionSize - 1) / kMcPartitionSize;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, partitions));

  std::vector<Counts> per_partition(partitions);
  auto run = [&](unsigned worker) {
    for (std::uint64_t k = worker; k < partitions; k += workers) {
      const std::uint64_t begin = k * kMcPartitionSize;
      const std::uint64_t draws = std::min(kMcPartitionSize, n - begin);
      per_partition[k] = sample_partition(params, prices, set, seed, k, draws);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  McDemandEstimate est;
  est.n = n;
  est.seed = seed;
  est.generator = std::string(kMcGenerator);
  for (const Counts& c : per_partition) {
    for (int i = 0; i < 3; ++i) est.counts[i] += c[i];
  }
  const double dn = static_cast<double>(n);
  for (int i = 0; i < 3; ++i) {
    const double d = static_cast<double>(est.counts[i]) / dn;
    est.d_hat[i] = d;
    est.std_err[i] = std::sqrt(d * (1.0 - d) / dn);
  }
  return est;
}

bool McComparison::agrees() const {
  return applicable && std::all_of(z.begin(), z.end(),
                                   [this](double v) { return v <= sigmas; });
}

McComparison compare_with_analytic(const McDemandEstimate& estimate,
                                   const DemandSplit& analytic,
                                   double sigmas) {
  McComparison cmp;
  cmp.sigmas = sigmas;
  for (Channel c : kAllChannels) {
    const double d = analytic.at(c);
    if (!(d >= 0.0 && d <= 1.0)) {
      cmp.skip_reason = "analytic demand for " + std::string(to_string(c)) +
                        " lies outside [0,1]; the formula extrapolates "
                        "beyond the population";
      return cmp;
    }
  }
  cmp.applicable = true;
  for (Channel c : kAllChannels) {
    const int i = index_of(c);
    const double diff = std::abs(estimate.d_hat[i] - analytic.at(c));
    const double se = estimate.std_err[i];
    if (se > 0.0) {
      cmp.z[i] = diff / se;
    } else {
      cmp.z[i] = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
  }
  return cmp;
}

double best_response(const MarketParams& params, const PriceVector& prices,
                     Channel channel, Bracket bracket, double tol) {
  if (!(bracket.hi > bracket.lo)) {
    throw ModelError(ErrorKind::kInvalidSpec, "bracket",
                     "best-response bracket must have positive width");
  }
  auto f = [&](double q) { return own_profit(params, prices, channel, q); };

  // Own profit is exactly quadratic in own price, so three samples fix it.
  const double lo = bracket.lo;
  const double hi = bracket.hi;
  const double mid = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double f_lo = f(lo);
  const double f_mid = f(mid);
  const double f_hi = f(hi);
  const double curvature = f_hi - 2.0 * f_mid + f_lo;
  if (curvature < 0.0) {
    const double vertex = mid - h * (f_hi - f_lo) / (2.0 * curvature);
    if (vertex < lo || vertex > hi) {
      throw ModelError(
          ErrorKind::kBracketMiss, std::string(to_string(channel)),
          "best response " + std::to_string(vertex) +
              " lies outside bracket [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]");
    }
    return vertex;
  }
  return grid_refined_max(f, bracket.lo, bracket.hi, 1001, tol);
}

std::array<DeviationReport, 3> nash_deviation_check(const MarketParams& params,
                                                    const PriceVector& prices,
                                                    double rel_range,
                                                    int steps, double tol) {
  if (steps < 3) {
    throw ModelError(ErrorKind::kInvalidSpec, "steps",
                     "deviation scan needs at least 3 grid points");
  }
  std::array<DeviationReport, 3> reports;
  for (Channel c : kAllChannels) {
    DeviationReport& rep = reports[index_of(c)];
    const double p = prices.at(c);
    auto f = [&](double q) { return own_profit(params, prices, c, q); };
    const double a = p * (1.0 - rel_range);
    const double b = p * (1.0 + rel_range);
    rep.channel = c;
    rep.steps = steps;
    rep.grid_lo = std::min(a, b);
    rep.grid_hi = std::max(a, b);
    rep.incumbent_price = p;
    rep.incumbent_profit = f(p);
    rep.best_deviation_price = p;
    rep.best_deviation_profit = rep.incumbent_profit;
    if (rep.grid_hi > rep.grid_lo) {
      const double q =
          grid_refined_max(f, rep.grid_lo, rep.grid_hi, steps, tol);
      const double fq = f(q);
      if (fq > rep.best_deviation_profit) {
        rep.best_deviation_price = q;
        rep.best_deviation_profit = fq;
      }
    }
    rep.profit_gain = rep.best_deviation_profit - rep.incumbent_profit;
  }
  return reports;
}

}  // namespace triplechannel
