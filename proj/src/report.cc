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

#include "triplechannel/report.h"

#include <cmath>

#include <fmt/format.h>

namespace triplechannel {

using nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.17g}", value);
}

json to_json(const MarketParams& p) {
  json doc = json::object();
  for (ParamId id : kAllParams) {
    doc[std::string(to_string(id))] = get_param(p, id);
  }
  return doc;
}

json to_json(const PriceVector& p) {
  return {{"p1", p.p1}, {"p2", p.p2}, {"p3", p.p3}};
}

json to_json(const DemandSplit& d) {
  return {{"d_u", d.d_u}, {"d_o", d.d_o}, {"d_e", d.d_e}};
}

json to_json(const ProfitVector& p) {
  return {{"pi1", p.pi1}, {"pi2", p.pi2}, {"pi3", p.pi3}};
}

json to_json(const IndifferencePoints& v) {
  return {{"v_u", v.v_u},   {"v_o", v.v_o},   {"v_e", v.v_e},
          {"v_uo", v.v_uo}, {"v_oe", v.v_oe}, {"v_ue", v.v_ue},
          {"v_uoe", v.v_uoe}};
}

json to_json(const Regime& r) {
  json active = json::array();
  for (Channel c : kAllChannels) {
    if (r.is_active(c)) active.push_back(std::string(to_string(c)));
  }
  return {{"channel_set", std::string(to_string(r.channel_set))},
          {"case", std::string(to_string(r.case_label))},
          {"active", active}};
}

json to_json(const FocResiduals& f) {
  return {{"r1", f.r1}, {"r2", f.r2}, {"r3", f.r3}};
}

json to_json(const ConcavityReport& c) {
  return {{"cond_main", c.cond_main},
          {"cond_aux", c.cond_aux},
          {"second_derivatives", c.second_derivatives},
          {"concave", c.concave()}};
}

json to_json(const EquilibriumResult& r) {
  json checks = json::array();
  for (const auto& c : r.feasibility) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"explanation", c.explanation}});
  }
  json warnings = json::array();
  for (const auto& w : r.warnings) {
    warnings.push_back({{"code", w.code}, {"message", w.message}});
  }
  return {{"prices", to_json(r.prices)},
          {"demand", to_json(r.split)},
          {"profits", to_json(r.profits)},
          {"indifference_points", to_json(r.points)},
          {"regime", r.regime ? to_json(*r.regime) : json(nullptr)},
          {"foc_residuals", to_json(r.foc)},
          {"concavity", to_json(r.concavity)},
          {"feasibility", checks},
          {"all_feasible", r.all_feasible()},
          {"warnings", warnings}};
}

json to_json(const McDemandEstimate& e) {
  return {{"d_hat", e.d_hat},     {"std_err", e.std_err},
          {"counts", e.counts},   {"n", e.n},
          {"seed", e.seed},       {"generator", e.generator}};
}

json to_json(const McComparison& c) {
  json doc = {{"applicable", c.applicable}, {"sigmas", c.sigmas}};
  if (c.applicable) {
    doc["z"] = c.z;
    doc["agrees"] = c.agrees();
  } else {
    doc["skip_reason"] = c.skip_reason;
  }
  return doc;
}

json to_json(const DeviationReport& r) {
  return {{"channel", std::string(to_string(r.channel))},
          {"incumbent_price", r.incumbent_price},
          {"incumbent_profit", r.incumbent_profit},
          {"best_deviation_price", r.best_deviation_price},
          {"best_deviation_profit", r.best_deviation_profit},
          {"profit_gain", r.profit_gain},
          {"grid", {{"lo", r.grid_lo}, {"hi", r.grid_hi}, {"steps", r.steps}}}};
}

json to_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"param_value", row.param_value},
                    {"prices", to_json(row.prices)},
                    {"profits", to_json(row.profits)},
                    {"demand", to_json(row.split)},
                    {"concavity_ok", row.concavity_ok},
                    {"feasible", row.feasible},
                    {"error", row.error_code}});
  }
  return {{"param", std::string(to_string(result.param))}, {"rows", rows}};
}

json to_json(const SignSummary& s) {
  json labels = json::object();
  for (SweepColumn c : kSweepColumns) {
    labels[std::string(to_string(c))] = std::string(to_string(s.at(c)));
  }
  return {{"rows_used", s.rows_used}, {"labels", labels}};
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const auto& row : result.rows) {
    out << format_number(row.param_value);
    for (SweepColumn c : kSweepColumns) {
      out << ',' << format_number(column_value(row, c));
    }
    out << ',' << (row.concavity_ok ? "true" : "false") << ','
        << (row.feasible ? "true" : "false") << ',' << row.error_code << '\n';
  }
}

void write_equilibrium_text(const EquilibriumResult& r, std::ostream& out) {
  out << fmt::format("{:<14}{:>14}{:>14}{:>14}\n", "", "unorganized",
                     "organized", "online");
  out << fmt::format("{:<14}{:>14.2f}{:>14.2f}{:>14.2f}\n", "price",
                     r.prices.p1, r.prices.p2, r.prices.p3);
  out << fmt::format("{:<14}{:>14.2f}{:>14.2f}{:>14.2f}\n", "profit",
                     r.profits.pi1, r.profits.pi2, r.profits.pi3);
  out << fmt::format("{:<14}{:>14.4f}{:>14.4f}{:>14.4f}\n", "demand",
                     r.split.d_u, r.split.d_o, r.split.d_e);
  out << fmt::format("{:<14}{:>14.3g}{:>14.3g}{:>14.3g}\n", "foc residual",
                     r.foc.r1, r.foc.r2, r.foc.r3);
  out << "regime: "
      << (r.regime ? std::string(to_string(r.regime->case_label))
                   : std::string("undetermined (threshold tie)"))
      << '\n';
  out << "concavity: " << (r.concavity.ok() ? "ok" : "VIOLATED") << '\n';
  out << "feasibility:\n";
  for (const auto& c : r.feasibility) {
    out << fmt::format("  [{}] {:<26} {}\n", c.passed ? "pass" : "FAIL",
                       c.name, c.explanation);
  }
  for (const auto& w : r.warnings) {
    out << "warning: " << w.code << ": " << w.message << '\n';
  }
}

void write_demand_text(const DemandResult& d, const MarketParams& params,
                       const PriceVector& prices, std::ostream& out) {
  const ProfitVector pi = profits(params, prices, d.split);
  out << fmt::format("prices   {:.2f} {:.2f} {:.2f}\n", prices.p1, prices.p2,
                     prices.p3);
  out << "regime   " << to_string(d.regime.case_label) << '\n';
  out << fmt::format("demand   d_u={:.6f} d_o={:.6f} d_e={:.6f}\n",
                     d.split.d_u, d.split.d_o, d.split.d_e);
  out << fmt::format("profit   pi1={:.2f} pi2={:.2f} pi3={:.2f}\n", pi.pi1,
                     pi.pi2, pi.pi3);
  const auto& v = d.points;
  out << fmt::format(
      "thresholds v_u={:.6g} v_o={:.6g} v_e={:.6g} v_uo={:.6g} v_oe={:.6g} "
      "v_ue={:.6g} v_uoe={:.6g}\n",
      v.v_u, v.v_o, v.v_e, v.v_uo, v.v_oe, v.v_ue, v.v_uoe);
  for (const auto& f : d.violations) {
    out << "finding: " << f.code << ": " << f.message << '\n';
  }
}

void write_mc_text(const McDemandEstimate& e, std::ostream& out) {
  out << fmt::format("n={} seed={} generator={}\n", e.n, e.seed, e.generator);
  static constexpr const char* kNames[] = {"unorganized", "organized",
                                           "online"};
  for (int i = 0; i < 3; ++i) {
    out << fmt::format("{:<12} d_hat={:.6f} se={:.6f} count={}\n", kNames[i],
                       e.d_hat[i], e.std_err[i], e.counts[i]);
  }
}

}  // namespace triplechannel
