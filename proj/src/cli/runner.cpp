#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>

#include <CLI11.hpp>

#include "qgames/cli.hpp"

namespace qgames::cli {

namespace {

using nlohmann::json;

json num(double x) { return snap(x); }

json nums(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

template <std::size_t N>
json nums(const std::array<double, N>& xs) {
  return nums(std::vector<double>(xs.begin(), xs.end()));
}

json table_json(const Table2x2& t) { return json::array({nums(t[0]), nums(t[1])}); }

json distribution_json(const OutcomeDistribution& d) {
  json o = json::object();
  for (std::size_t k = 0; k < d.labels.size(); ++k) o[d.labels[k]] = num(d.probabilities[k]);
  return o;
}

json strategy_json(const Strategy& s) {
  if (const auto* p = std::get_if<ParameterPoint>(&s)) return {{"parameters", nums(p->values)}};
  if (const auto* w = std::get_if<MixtureWeights>(&s)) return {{"weights", nums(w->weights)}};
  return {{"channel", "kraus"}};
}

json equilibrium_json(const EquilibriumReport& r) {
  json profile = json::array(), best = json::array();
  for (const auto& s : r.profile) profile.push_back(strategy_json(s));
  for (const auto& d : r.deviations) {
    json b = strategy_json(d.strategy);
    b["payoff"] = num(d.payoff);
    b["gain"] = num(d.gain);
    best.push_back(std::move(b));
  }
  return {{"profile", profile},
          {"payoffs", nums(r.payoffs)},
          {"gains", nums(r.gains)},
          {"epsilon", num(r.epsilon)},
          {"threshold", num(r.threshold)},
          {"is_epsilon_nash", r.is_epsilon_nash},
          {"method", r.method},
          {"grid_resolution", r.grid_resolution},
          {"best_responses", best}};
}

// Outcome counts from `shots` samples; keys follow the distribution's label order.
json counts_json(const OutcomeDistribution& d, std::uint64_t seed, std::size_t shots) {
  std::map<std::string, std::size_t> tally;
  for (const auto& l : d.labels) tally[l] = 0;
  for (const auto& l : sample_many(d, seed, shots)) ++tally[l];
  json o = json::object();
  for (const auto& [k, v] : tally) o[k] = v;
  return o;
}

SearchOptions search_options(const ScenarioConfig& cfg) { return {cfg.grid, true}; }

StrategyProfile point_profile(const std::vector<std::vector<double>>& angles) {
  StrategyProfile p;
  for (const auto& a : angles) p.push_back(ParameterPoint{a});
  return p;
}

void require_profile(const std::vector<std::vector<double>>& profile) {
  if (profile.empty()) throw ConfigError("parameters.profile", "required for this analysis");
}

json game_analysis(const ScenarioConfig& cfg, const QuantumGameSpec& spec, const StrategyProfile& profile) {
  json r;
  if (cfg.analysis == "nash-verify") {
    r["equilibrium"] = equilibrium_json(verify_epsilon_nash(spec, profile, search_options(cfg), cfg.tolerance));
  } else if (cfg.analysis == "nash-search") {
    r["equilibrium"] = equilibrium_json(search_equilibrium(spec, profile, search_options(cfg), cfg.tolerance));
  }
  const auto dist = outcome_distribution(spec, profile);
  r["payoffs"] = nums(evaluate(spec, profile));
  r["distribution"] = distribution_json(dist);
  if (cfg.shots > 0) r["counts"] = counts_json(dist, cfg.seed, cfg.shots);
  return r;
}

json run_meyer(const ScenarioConfig& cfg, const MeyerParams& m) {
  const ComplexMatrix q = meyer_unitary(m.u, m.v);
  json r;
  if (cfg.analysis == "nash-search") {
    const auto mm = meyer_minimax(cfg.grid ? cfg.grid : 200);
    r["minimax"] = {{"upper", num(mm.upper)},
                    {"lower", num(mm.lower)},
                    {"argmin_u2", num(mm.argmin_u2)},
                    {"argmax_p", num(mm.argmax_p)}};
  }
  const auto play = meyer_play(q, m.p, q);
  const auto spec = meyer_spec(q, q);
  const StrategyProfile profile{MixtureWeights{{1 - m.p, m.p}}, ParameterPoint{}};
  json g = game_analysis(cfg, spec, profile);
  r.update(g);
  r["payoff_p"] = num(play.payoff_p);
  r["payoff_q"] = num(-play.payoff_p);
  return r;
}

json run_ewl(const ScenarioConfig& cfg, const EwlParams& e) {
  const auto spec = ewl_spec(e.config);
  StrategyProfile profile;
  if (e.profile.empty()) {
    if (cfg.analysis != "nash-search") require_profile(e.profile);
    for (std::size_t p = 0; p < e.config.players; ++p) profile.push_back(ParameterPoint{spec.spaces()[p].box().lower});
  } else {
    profile = point_profile(e.profile);
  }
  return game_analysis(cfg, spec, profile);
}

json run_minority(const ScenarioConfig& cfg, const MinorityParams& m) {
  require_profile(m.profile);
  std::vector<ComplexMatrix> moves;
  for (const auto& a : m.profile) moves.push_back(su2(a[0], a[1], a[2]));
  json r;
  r["payoffs"] = nums(minority_payoff(moves, m.disentangler));
  if (cfg.analysis == "nash-verify" || cfg.analysis == "nash-search") {
    const EWLConfig ec{m.players, std::numbers::pi / 2, FlipConvention::SigmaX, minority_table(m.players),
                       StrategyBox::FullSU2};
    const auto spec = ewl_spec(ec);
    const auto rep = cfg.analysis == "nash-verify"
                         ? verify_epsilon_nash(spec, point_profile(m.profile), search_options(cfg), cfg.tolerance)
                         : search_equilibrium(spec, point_profile(m.profile), search_options(cfg), cfg.tolerance);
    r["equilibrium"] = equilibrium_json(rep);
  }
  return r;
}

json run_mw(const ScenarioConfig& cfg, const MwParams& m) {
  validate(m.config);
  json r;
  const auto dist = mw_final_probabilities(m.config, m.p, m.q);
  r["payoffs"] = nums(mw_payoffs(m.config, m.p, m.q));
  r["distribution"] = distribution_json(dist);
  if (cfg.shots > 0) r["counts"] = counts_json(dist, cfg.seed, cfg.shots);
  const auto [at, bt] = mw_transformed_tables(m.config);
  r["transformed"] = {{"alice", table_json(at)}, {"bob", table_json(bt)}};
  if (cfg.analysis == "nash-verify") {
    const auto spec = mw_spec(m.config);
    const StrategyProfile profile{MixtureWeights{{m.p, 1 - m.p}}, MixtureWeights{{m.q, 1 - m.q}}};
    r["equilibrium"] = equilibrium_json(verify_epsilon_nash(spec, profile, search_options(cfg), cfg.tolerance));
  } else if (cfg.analysis == "nash-search") {
    json pure = json::array();
    for (auto [i, j] : pure_equilibria_2x2(at, bt))
      pure.push_back({{"alice", i == 0 ? "I" : "F"}, {"bob", j == 0 ? "I" : "F"}, {"payoffs", nums(std::array{at[i][j], bt[i][j]})}});
    r["pure_equilibria"] = pure;
    if (const auto mixed = mixed_equilibrium_2x2(at, bt))
      r["mixed_equilibrium"] = {{"p", num(mixed->p)}, {"q", num(mixed->q)}, {"payoffs", nums(std::array{mixed->payoff_row, mixed->payoff_col})}};
    else
      r["mixed_equilibrium"] = nullptr;
  }
  return r;
}

json run_cournot(const ScenarioConfig& cfg, const CournotParams& c) {
  const auto s = cournot_closed_form(c.config);
  json r{{"y_star", nums(s.y_star)}, {"quantities", nums(s.quantities)}, {"profits", nums(s.profit_star)},
         {"gaussian_profits", nums(cournot_gaussian_payoffs(c.config, s.y_star[0], s.y_star[1]))}};
  if (cfg.analysis == "nash-verify" || cfg.analysis == "nash-search") {
    const double m = c.config.a - c.config.c;
    const double eps = cournot_grid_epsilon(c.config, s.y_star, cfg.grid ? cfg.grid : 2000, -m, m);
    r["equilibrium"] = {{"epsilon", num(eps)},
                        {"threshold", num(cfg.tolerance)},
                        {"is_epsilon_nash", eps <= cfg.tolerance},
                        {"gradient", nums(cournot_gradient(c.config, s.y_star[0], s.y_star[1]))}};
  }
  return r;
}

json run_stackelberg(const CournotParams& c) {
  const auto st = stackelberg_solve(c.config);
  const auto nash = cournot_closed_form(c.config);
  return {{"leader", {{"y", num(st.y1_star)}, {"profit", num(st.profits[0])}}},
          {"follower", {{"y", num(st.y2_star)}, {"profit", num(st.profits[1])}}},
          {"quantities", nums(cournot_quantities(c.config, st.y1_star, st.y2_star))},
          {"cournot_profit", num(nash.profit_star[0])}};
}

json run_bv(const BvParams& b) {
  const auto r = bv_run(b.instance);
  return {{"guessed", r.guess}, {"oracle_calls", r.oracle_calls}, {"amplitude", num(r.amplitude)}};
}

json dispatch(const ScenarioConfig& cfg) {
  return std::visit(
      [&](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MeyerParams>) return run_meyer(cfg, p);
        else if constexpr (std::is_same_v<T, EwlParams>) return run_ewl(cfg, p);
        else if constexpr (std::is_same_v<T, MinorityParams>) return run_minority(cfg, p);
        else if constexpr (std::is_same_v<T, MwParams>) return run_mw(cfg, p);
        else if constexpr (std::is_same_v<T, CournotParams>)
          return cfg.protocol == "stackelberg" ? run_stackelberg(p) : run_cournot(cfg, p);
        else return run_bv(p);
      },
      cfg.params);
}

// Scalar leaves of a results object as dotted columns; strings and nested
// object arrays are left out of the table.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  if (j.is_number() || j.is_boolean()) {
    out.emplace_back(prefix, j);
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      if (j[i].is_number() || j[i].is_boolean() || j[i].is_array()) flatten(j[i], prefix + "." + std::to_string(i), out);
  }
}

std::string csv_cell(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_null()) return "";
  return v.dump();
}

ScenarioConfig with_value(const ScenarioConfig& cfg, double value) {
  ScenarioConfig row = cfg;
  row.sweep.reset();
  if (row.analysis == "sweep") row.analysis = "evaluate";
  row.parameters[cfg.sweep->parameter] = value;
  row.params = parse_parameters(cfg.protocol, row.parameters);
  return row;
}

json report(const ScenarioConfig& cfg, const json& results, double seconds) {
  json scenario{{"protocol", cfg.protocol},
                {"analysis", cfg.analysis},
                {"parameters", cfg.parameters},
                {"grid", cfg.grid},
                {"shots", cfg.shots},
                {"tolerance", num(cfg.tolerance)}};
  if (cfg.sweep) scenario["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", nums(cfg.sweep->values)}};
  return {{"library", {{"name", "qgames"}, {"version", QGAMES_VERSION}}},
          {"scenario", scenario},
          {"seed", cfg.seed},
          {"results", results},
          {"timing", {{"seconds", seconds}}}};
}

}  // namespace

double snap(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json run_results(const ScenarioConfig& cfg) {
  if (cfg.sweep) return sweep_table(cfg);
  return dispatch(cfg);
}

json sweep_table(const ScenarioConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep", "required field is missing");
  std::vector<std::string> columns{cfg.sweep->parameter};
  json rows = json::array();
  for (double value : cfg.sweep->values) {
    std::vector<std::pair<std::string, json>> cells;
    flatten(dispatch(with_value(cfg, value)), "", cells);
    if (rows.empty())
      for (const auto& [name, _] : cells) columns.push_back(name);
    json row = json::array({num(value)});
    for (std::size_t c = 1; c < columns.size(); ++c) {
      json cell = nullptr;
      for (const auto& [name, v] : cells)
        if (name == columns[c]) cell = v;
      row.push_back(cell);
    }
    rows.push_back(std::move(row));
  }
  return {{"parameter", cfg.sweep->parameter}, {"columns", columns}, {"rows", rows}};
}

std::string table_to_csv(const json& table) {
  std::string out;
  const auto& cols = table.at("columns");
  for (std::size_t c = 0; c < cols.size(); ++c) out += (c ? "," : "") + cols[c].get<std::string>();
  out += "\n";
  for (const auto& row : table.at("rows")) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_cell(row[c]);
    out += "\n";
  }
  return out;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum game scenarios: configs in, reproduction reports out."};
  app.set_version_flag("--version", std::string(QGAMES_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid;
  std::optional<double> tolerance;
  std::string out_path, format;

  auto* run = app.add_subcommand("run", "Run one scenario and write its report");
  auto* sweep = app.add_subcommand("sweep", "Run a scenario over its swept parameter and write a table");
  for (auto* sub : {run, sweep}) {
    sub->add_option("config", config_path, "Scenario config (JSON)")->required();
    sub->add_option("--seed", seed, "Seed for sampled outcomes");
    sub->add_option("--grid", grid, "Grid points per axis for equilibrium checks");
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tolerance", tolerance, "Epsilon threshold for equilibrium checks")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    ScenarioConfig cfg = load_scenario(config_path);
    if (seed) cfg.seed = *seed;
    if (grid) cfg.grid = *grid;
    if (tolerance) cfg.tolerance = *tolerance;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!format.empty()) cfg.format = format;
    const bool sweeping = sweep->parsed() || cfg.analysis == "sweep";
    if (sweeping && !cfg.sweep) throw ConfigError("sweep", "required field is missing");
    if (!sweeping && cfg.sweep) throw ConfigError("sweep", "present, but the command is 'run' and the analysis is not 'sweep'");
    if (cfg.format == "csv" && !sweeping) throw ConfigError("output.format", "csv is only available for sweeps");

    const auto t0 = std::chrono::steady_clock::now();
    const json results = run_results(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string text = cfg.format == "csv" ? table_to_csv(results) : report(cfg, results, seconds).dump(2) + "\n";
    if (cfg.output_path.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output_path);
      if (!f) throw ConfigError("output.path", "cannot write '" + cfg.output_path + "'");
      f << text;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qgames::cli
