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

#include "cli_app.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "triplechannel/equilibrium.h"
#include "triplechannel/errors.h"
#include "triplechannel/market_model.h"
#include "triplechannel/oracle.h"
#include "triplechannel/report.h"
#include "triplechannel/scenario.h"
#include "triplechannel/sensitivity.h"

namespace triplechannel::cli {
namespace {

using nlohmann::json;

enum class Format { kText, kStructured, kCsv };

struct CommonOptions {
  std::string scenario_path;
  std::string out_path;
  std::string format = "text";
  bool strict = false;
  std::optional<double> p1;
  std::optional<double> p2;
  std::optional<double> p3;
  std::string channels = "uoe";
};

struct VerifyOptions {
  double rel_range = 0.5;
  int grid_steps = 1001;
  std::uint64_t n = 200000;
  std::uint64_t seed = 42;
};

struct McOptions {
  std::uint64_t n = 1000000;
  std::uint64_t seed = 42;
  unsigned workers = 0;
};

struct SweepOptions {
  std::string param;
  std::optional<double> min;
  std::optional<double> max;
  int steps = 50;
  std::string mode = "grid";
  std::uint64_t seed = 0;
};

Format parse_format(const std::string& text) {
  if (text == "text") return Format::kText;
  if (text == "structured" || text == "json") return Format::kStructured;
  if (text == "csv") return Format::kCsv;
  throw ModelError(ErrorKind::kInvalidSpec, "format",
                   "unknown --format '" + text +
                       "' (expected text, structured or csv)");
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--scenario", o.scenario_path, "Scenario JSON file")
      ->required();
  cmd->add_option("--out", o.out_path, "Write the report to this file");
  cmd->add_option("--format", o.format, "text | structured | csv");
  cmd->add_flag("--strict", o.strict,
                "Reject unknown fields, out-of-domain parameters and sweep "
                "ranges outside the reference ranges");
}

void add_prices(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--p1", o.p1, "Unorganized price");
  cmd->add_option("--p2", o.p2, "Organized price");
  cmd->add_option("--p3", o.p3, "Online price");
}

struct Loaded {
  Scenario scenario;
  std::string hash;
};

Loaded load(const CommonOptions& o, std::ostream& err) {
  std::vector<std::string> warnings;
  Loaded l{parse_scenario(o.scenario_path, o.strict, &warnings), ""};
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const auto issues = validate(l.scenario.params);
  for (const auto& issue : issues) {
    if (o.strict) {
      throw ModelError(ErrorKind::kInvalidParams, issue.field,
                       "invalid parameter: " + issue.message);
    }
    err << "warning: " << issue.message << '\n';
  }
  l.hash = scenario_hash(l.scenario.params);
  return l;
}

// Price flags override the scenario's prices block; any price still missing
// comes from the closed-form equilibrium.
std::pair<PriceVector, std::string> resolve_prices(const CommonOptions& o,
                                                   const Scenario& s) {
  const bool any_flag = o.p1 || o.p2 || o.p3;
  if (!any_flag && s.prices) return {*s.prices, "scenario"};
  std::optional<PriceVector> eq;
  auto fill = [&](const std::optional<double>& flag, double scenario_value,
                  bool has_scenario, Channel c) {
    if (flag) return *flag;
    if (has_scenario) return scenario_value;
    if (!eq) eq = closed_form_prices(s.params);
    return eq->at(c);
  };
  const bool has = s.prices.has_value();
  const PriceVector base = has ? *s.prices : PriceVector{};
  PriceVector p{fill(o.p1, base.p1, has, Channel::kUnorganized),
                fill(o.p2, base.p2, has, Channel::kOrganized),
                fill(o.p3, base.p3, has, Channel::kOnline)};
  if (!any_flag && !has) return {p, "equilibrium"};
  return {p, eq ? "flags+equilibrium" : "flags"};
}

ChannelSet channel_set(const std::string& text) {
  if (auto set = parse_channel_set(text)) return *set;
  throw ModelError(ErrorKind::kInvalidSpec, "channels",
                   "unknown --channels '" + text +
                       "' (expected oe, uo, ue or uoe)");
}

json metadata(const Loaded& l, std::optional<std::uint64_t> seed) {
  json meta = {{"tool", "triplechannel"},
               {"version", TRIPLECHANNEL_VERSION},
               {"scenario_hash", l.hash}};
  if (!l.scenario.label.empty()) meta["scenario_label"] = l.scenario.label;
  if (seed) meta["seed"] = *seed;
  return meta;
}

std::string text_header(const Loaded& l, std::optional<std::uint64_t> seed) {
  std::string line = fmt::format("# triplechannel {} scenario={}",
                                 TRIPLECHANNEL_VERSION, l.hash);
  if (!l.scenario.label.empty()) line += " label=\"" + l.scenario.label + "\"";
  if (seed) line += fmt::format(" seed={}", *seed);
  return line + "\n";
}

// Writes `body` to --out or `out`. CSV written to a file gets its metadata
// in a sidecar so the header stays on the first line.
void emit(const CommonOptions& o, Format format, const std::string& body,
          const json& meta, std::ostream& out, std::ostream& err) {
  if (o.out_path.empty()) {
    out << body;
    if (format == Format::kCsv) err << "# meta " << meta.dump() << '\n';
    return;
  }
  std::ofstream file(o.out_path);
  if (!file) {
    throw ModelError(ErrorKind::kIo, o.out_path,
                     "cannot write output file '" + o.out_path + "'");
  }
  file << body;
  if (format == Format::kCsv) {
    std::ofstream meta_file(o.out_path + ".meta.json");
    meta_file << meta.dump(2) << '\n';
  }
}

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ',';
    line += format_number(v);
  }
  return line;
}

int cmd_solve(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const Format format = parse_format(o.format);
  const Loaded l = load(o, err);
  const EquilibriumResult r = solve_equilibrium(l.scenario.params);
  const json meta = metadata(l, std::nullopt);
  std::ostringstream body;
  switch (format) {
    case Format::kStructured: {
      json doc = to_json(r);
      doc["meta"] = meta;
      doc["params"] = to_json(l.scenario.params);
      body << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      body << "p1,p2,p3,pi1,pi2,pi3,du,do,de,concavity_ok,feasible\n"
           << csv_row({r.prices.p1, r.prices.p2, r.prices.p3, r.profits.pi1,
                       r.profits.pi2, r.profits.pi3, r.split.d_u, r.split.d_o,
                       r.split.d_e})
           << ',' << (r.concavity.ok() ? "true" : "false") << ','
           << (r.all_feasible() ? "true" : "false") << '\n';
      break;
    case Format::kText:
      body << text_header(l, std::nullopt);
      write_equilibrium_text(r, body);
      break;
  }
  emit(o, format, body.str(), meta, out, err);
  return kExitOk;
}

int cmd_demand(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const Format format = parse_format(o.format);
  const Loaded l = load(o, err);
  const auto [prices, source] = resolve_prices(o, l.scenario);
  const ChannelSet set = channel_set(o.channels);
  const DemandResult d = demand(l.scenario.params, prices, set);
  const ProfitVector pi = profits(l.scenario.params, prices, d.split);
  const json meta = metadata(l, std::nullopt);
  std::ostringstream body;
  switch (format) {
    case Format::kStructured: {
      json findings = json::array();
      for (const auto& f : d.violations) {
        findings.push_back({{"code", f.code}, {"message", f.message}});
      }
      json doc = {{"meta", meta},
                  {"prices", to_json(prices)},
                  {"price_source", source},
                  {"regime", to_json(d.regime)},
                  {"demand", to_json(d.split)},
                  {"profits", to_json(pi)},
                  {"indifference_points", to_json(d.points)},
                  {"findings", findings}};
      body << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      body << "p1,p2,p3,du,do,de,pi1,pi2,pi3,regime\n"
           << csv_row({prices.p1, prices.p2, prices.p3, d.split.d_u,
                       d.split.d_o, d.split.d_e, pi.pi1, pi.pi2, pi.pi3})
           << ',' << to_string(d.regime.case_label) << '\n';
      break;
    case Format::kText:
      body << text_header(l, std::nullopt) << "price source: " << source
           << '\n';
      write_demand_text(d, l.scenario.params, prices, body);
      break;
  }
  emit(o, format, body.str(), meta, out, err);
  return kExitOk;
}

int cmd_mc(const CommonOptions& o, const McOptions& mc, std::ostream& out,
           std::ostream& err) {
  const Format format = parse_format(o.format);
  const Loaded l = load(o, err);
  const auto [prices, source] = resolve_prices(o, l.scenario);
  const ChannelSet set = channel_set(o.channels);
  const McDemandEstimate est =
      monte_carlo_demand(l.scenario.params, prices, set, mc.n, mc.seed,
                         mc.workers);
  const json meta = metadata(l, mc.seed);
  std::ostringstream body;
  switch (format) {
    case Format::kStructured: {
      json doc = {{"meta", meta},
                  {"prices", to_json(prices)},
                  {"price_source", source},
                  {"channel_set", std::string(to_string(set))},
                  {"estimate", to_json(est)}};
      body << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      body << "channel,d_hat,std_err,count\n";
      for (Channel c : kAllChannels) {
        const int i = index_of(c);
        body << to_string(c) << ',' << format_number(est.d_hat[i]) << ','
             << format_number(est.std_err[i]) << ',' << est.counts[i] << '\n';
      }
      break;
    case Format::kText:
      body << text_header(l, mc.seed) << "price source: " << source << '\n';
      write_mc_text(est, body);
      break;
  }
  emit(o, format, body.str(), meta, out, err);
  return kExitOk;
}

int cmd_verify(const CommonOptions& o, const VerifyOptions& v,
               std::ostream& out, std::ostream& err) {
  const Format format = parse_format(o.format);
  const Loaded l = load(o, err);
  const MarketParams& params = l.scenario.params;
  const auto [prices, source] = resolve_prices(o, l.scenario);

  const PriceVector closed = closed_form_prices(params);
  const LinearSolveResult linear = solve_foc_system(params);
  double max_rel_delta = 0.0;
  for (Channel c : kAllChannels) {
    const double a = closed.at(c);
    const double b = linear.prices.at(c);
    max_rel_delta = std::max(
        max_rel_delta, std::abs(a - b) / std::max(1.0, std::abs(b)));
  }
  const FocResiduals foc = foc_residuals(params, prices);
  const ConcavityReport concavity = concavity_check(params);
  const auto deviations =
      nash_deviation_check(params, prices, v.rel_range, v.grid_steps, 1e-9);
  const DemandResult analytic = demand(params, prices, ChannelSet::kAll);
  const DemandSplit interior = interior_demand(params, prices);
  const McDemandEstimate est =
      monte_carlo_demand(params, prices, ChannelSet::kAll, v.n, v.seed);
  const McComparison vs_regime = compare_with_analytic(est, analytic.split);
  const McComparison vs_interior = compare_with_analytic(est, interior);

  const json meta = metadata(l, v.seed);
  std::ostringstream body;
  if (format == Format::kStructured) {
    json devs = json::array();
    for (const auto& d : deviations) devs.push_back(to_json(d));
    json doc = {
        {"meta", meta},
        {"prices", to_json(prices)},
        {"price_source", source},
        {"foc_residuals", to_json(foc)},
        {"closed_form", to_json(closed)},
        {"linear_solve",
         {{"prices", to_json(linear.prices)},
          {"condition_number", linear.condition_number}}},
        {"closed_vs_linear_max_rel_delta", max_rel_delta},
        {"concavity", to_json(concavity)},
        {"nash_deviation", devs},
        {"monte_carlo",
         {{"estimate", to_json(est)},
          {"regime", to_json(analytic.regime)},
          {"vs_regime_demand",
           {{"analytic", to_json(analytic.split)},
            {"comparison", to_json(vs_regime)}}},
          {"vs_interior_demand",
           {{"analytic", to_json(interior)},
            {"comparison", to_json(vs_interior)}}}}}};
    body << doc.dump(2) << '\n';
  } else if (format == Format::kCsv) {
    body << "check,value\n";
    body << "foc_r1," << format_number(foc.r1) << '\n';
    body << "foc_r2," << format_number(foc.r2) << '\n';
    body << "foc_r3," << format_number(foc.r3) << '\n';
    body << "closed_vs_linear_max_rel_delta," << format_number(max_rel_delta)
         << '\n';
    body << "condition_number," << format_number(linear.condition_number)
         << '\n';
    for (const auto& d : deviations) {
      body << "profit_gain_" << to_string(d.channel) << ','
           << format_number(d.profit_gain) << '\n';
    }
    body << "mc_vs_regime_agrees,"
         << (vs_regime.applicable ? (vs_regime.agrees() ? "true" : "false")
                                  : "skipped")
         << '\n';
    body << "mc_vs_interior_agrees,"
         << (vs_interior.applicable ? (vs_interior.agrees() ? "true" : "false")
                                    : "skipped")
         << '\n';
  } else {
    body << text_header(l, v.seed);
    body << fmt::format("prices ({}): {:.6f} {:.6f} {:.6f}\n", source,
                        prices.p1, prices.p2, prices.p3);
    body << fmt::format("foc residuals: {:.3g} {:.3g} {:.3g}\n", foc.r1,
                        foc.r2, foc.r3);
    body << fmt::format(
        "closed form vs linear solve: max relative delta {:.3g} "
        "(condition number {:.3g})\n",
        max_rel_delta, linear.condition_number);
    body << "concavity: " << (concavity.ok() ? "ok" : "VIOLATED") << '\n';
    for (const auto& d : deviations) {
      body << fmt::format(
          "deviation {:<12} gain={:.6g} best={:.6f} over [{:.4f}, {:.4f}] "
          "x {}\n",
          to_string(d.channel), d.profit_gain, d.best_deviation_price,
          d.grid_lo, d.grid_hi, d.steps);
    }
    write_mc_text(est, body);
    auto describe = [&body](const char* name, const DemandSplit& a,
                            const McComparison& c) {
      body << fmt::format("mc vs {}: analytic {:.6f} {:.6f} {:.6f} -> ", name,
                          a.d_u, a.d_o, a.d_e);
      if (!c.applicable) {
        body << "skipped (" << c.skip_reason << ")\n";
      } else {
        body << fmt::format("z = {:.2f} {:.2f} {:.2f} ({})\n", c.z[0], c.z[1],
                            c.z[2], c.agrees() ? "agrees" : "DISAGREES");
      }
    };
    describe("regime demand", analytic.split, vs_regime);
    describe("interior demand", interior, vs_interior);
  }
  emit(o, format, body.str(), meta, out, err);
  return kExitOk;
}

int cmd_sweep(const CommonOptions& o, const SweepOptions& s,
              std::ostream& out, std::ostream& err) {
  const std::string format_text =
      o.format == "text" && !o.out_path.empty() ? "csv" : o.format;
  const Format format = parse_format(format_text);
  const Loaded l = load(o, err);
  const auto param = parse_param_id(s.param);
  if (!param) {
    throw ModelError(ErrorKind::kInvalidSpec, "param",
                     "unknown --param '" + s.param + "'");
  }
  SweepSpec spec = reference_sweep(l.scenario.params, *param, s.steps);
  if (s.min) {
    spec.lo = *s.min;
    spec.lo_open = false;
  }
  if (s.max) {
    spec.hi = *s.max;
    spec.hi_open = false;
  }
  spec.strict = o.strict;
  if (s.mode == "random") {
    spec.mode = SweepMode::kUniformRandom;
    spec.seed = s.seed;
  } else if (s.mode != "grid") {
    throw ModelError(ErrorKind::kInvalidSpec, "mode",
                     "unknown --mode '" + s.mode + "' (expected grid or random)");
  }
  const SweepResult result = ofat_sweep(spec);
  std::optional<std::uint64_t> seed;
  if (spec.mode == SweepMode::kUniformRandom) seed = spec.seed;
  json meta = metadata(l, seed);
  meta["param"] = s.param;
  meta["lo"] = spec.lo;
  meta["hi"] = spec.hi;
  meta["steps"] = spec.steps;
  meta["mode"] = s.mode;

  std::optional<SignSummary> summary;
  try {
    summary = sign_summary(result);
  } catch (const ModelError& e) {
    err << "note: " << e.what() << '\n';
  }

  std::ostringstream body;
  if (format == Format::kStructured) {
    json doc = to_json(result);
    doc["meta"] = meta;
    doc["sign_summary"] = summary ? to_json(*summary) : json(nullptr);
    body << doc.dump(2) << '\n';
  } else if (format == Format::kCsv) {
    write_sweep_csv(result, body);
  } else {
    body << text_header(l, seed);
    body << fmt::format("{:>12} {:>10} {:>10} {:>10} {:>12} {:>12} {:>12} "
                        "{:>9} {:>9}\n",
                        s.param, "p1", "p2", "p3", "pi1", "pi2", "pi3",
                        "concave", "feasible");
    for (const auto& row : result.rows) {
      if (!row.solved()) {
        body << fmt::format("{:>12.6g} error: {}\n", row.param_value,
                            row.error_code);
        continue;
      }
      body << fmt::format(
          "{:>12.6g} {:>10.2f} {:>10.2f} {:>10.2f} {:>12.2f} {:>12.2f} "
          "{:>12.2f} {:>9} {:>9}\n",
          row.param_value, row.prices.p1, row.prices.p2, row.prices.p3,
          row.profits.pi1, row.profits.pi2, row.profits.pi3,
          row.concavity_ok ? "yes" : "NO", row.feasible ? "yes" : "no");
    }
    if (summary) {
      body << "trends:";
      for (SweepColumn c : kSweepColumns) {
        body << ' ' << to_string(c) << '=' << to_string(summary->at(c));
      }
      body << '\n';
    }
  }
  emit(o, format, body.str(), meta, out, err);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Equilibrium pricing for unorganized, organized and online "
               "pharmacy channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TRIPLECHANNEL_VERSION);

  CommonOptions solve_o, demand_o, verify_o, mc_o, sweep_o;
  VerifyOptions verify_v;
  McOptions mc_v;
  SweepOptions sweep_v;

  auto* solve = app.add_subcommand("solve", "Closed-form equilibrium with "
                                            "feasibility checklist");
  add_common(solve, solve_o);

  auto* demand_cmd =
      app.add_subcommand("demand", "Regime and demand at given prices");
  add_common(demand_cmd, demand_o);
  add_prices(demand_cmd, demand_o);
  demand_cmd->add_option("--channels", demand_o.channels,
                         "Offered channels: oe, uo, ue or uoe");

  auto* verify = app.add_subcommand(
      "verify", "Stationarity, linear-solve cross-check, deviation scan and "
                "Monte Carlo comparison");
  add_common(verify, verify_o);
  add_prices(verify, verify_o);
  verify->add_option("--rel-range", verify_v.rel_range,
                     "Deviation scan half-width relative to each price");
  verify->add_option("--grid-steps", verify_v.grid_steps,
                     "Deviation scan grid points")
      ->check(CLI::Range(3, 10000000));
  verify->add_option("--n", verify_v.n, "Monte Carlo sample count")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  verify->add_option("--seed", verify_v.seed, "Monte Carlo seed");

  auto* mc = app.add_subcommand("mc", "Monte Carlo demand by direct utility "
                                      "comparison");
  add_common(mc, mc_o);
  add_prices(mc, mc_o);
  mc->add_option("--channels", mc_o.channels,
                 "Offered channels: oe, uo, ue or uoe");
  mc->add_option("--n", mc_v.n, "Sample count")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  mc->add_option("--seed", mc_v.seed, "Seed");
  mc->add_option("--workers", mc_v.workers,
                 "Worker threads (0 = hardware concurrency); output does not "
                 "depend on it");

  auto* sweep = app.add_subcommand("sweep", "One-factor-at-a-time sweep");
  add_common(sweep, sweep_o);
  sweep->add_option("--param", sweep_v.param, "Parameter to vary")->required();
  sweep->add_option("--min", sweep_v.min, "Range start (default: reference "
                                          "range)");
  sweep->add_option("--max", sweep_v.max, "Range end (default: reference "
                                          "range)");
  sweep->add_option("--steps", sweep_v.steps, "Number of points")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--mode", sweep_v.mode, "grid | random");
  sweep->add_option("--seed", sweep_v.seed, "Seed for random mode");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve) return cmd_solve(solve_o, out, err);
    if (*demand_cmd) return cmd_demand(demand_o, out, err);
    if (*verify) return cmd_verify(verify_o, verify_v, out, err);
    if (*mc) return cmd_mc(mc_o, mc_v, out, err);
    if (*sweep) return cmd_sweep(sweep_o, sweep_v, out, err);
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.kind()) ? kExitNumerical : kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace triplechannel::cli
