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

// Serialization of results: JSON for machine consumption, CSV for sweep
// series, and fixed-width text tables for people.

#ifndef TRIPLECHANNEL_REPORT_H_
#define TRIPLECHANNEL_REPORT_H_

#include <array>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "triplechannel/equilibrium.h"
#include "triplechannel/market_model.h"
#include "triplechannel/oracle.h"
#include "triplechannel/sensitivity.h"

namespace triplechannel {

inline constexpr std::string_view kSweepCsvHeader =
    "param_value,p1,p2,p3,pi1,pi2,pi3,du,do,de,concavity_ok,feasible,error";

// Shortest text that round-trips is not enough for plotting tools that
// re-print; always 17 significant digits.
std::string format_number(double value);

nlohmann::json to_json(const MarketParams& params);
nlohmann::json to_json(const PriceVector& prices);
nlohmann::json to_json(const DemandSplit& split);
nlohmann::json to_json(const ProfitVector& profits);
nlohmann::json to_json(const IndifferencePoints& points);
nlohmann::json to_json(const Regime& regime);
nlohmann::json to_json(const FocResiduals& foc);
nlohmann::json to_json(const ConcavityReport& report);
nlohmann::json to_json(const EquilibriumResult& result);
nlohmann::json to_json(const McDemandEstimate& estimate);
nlohmann::json to_json(const McComparison& comparison);
nlohmann::json to_json(const DeviationReport& report);
nlohmann::json to_json(const SweepResult& result);
nlohmann::json to_json(const SignSummary& summary);

void write_sweep_csv(const SweepResult& result, std::ostream& out);

void write_equilibrium_text(const EquilibriumResult& result,
                            std::ostream& out);
void write_demand_text(const DemandResult& result, const MarketParams& params,
                       const PriceVector& prices, std::ostream& out);
void write_mc_text(const McDemandEstimate& estimate, std::ostream& out);

}  // namespace triplechannel

#endif  // TRIPLECHANNEL_REPORT_H_
