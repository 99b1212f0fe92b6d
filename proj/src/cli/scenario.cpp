#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "qgames/cli.hpp"

namespace qgames::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

const std::set<std::string> kProtocols{"meyer", "ewl", "mw", "minority", "cournot", "stackelberg", "bv"};
const std::set<std::string> kAnalyses{"evaluate", "nash-verify", "nash-search", "sweep"};

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown fields.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }
  const json& at(const std::string& key) {
    if (!has(key)) throw ConfigError(field(key), "required field is missing");
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(field(key), "expected a finite number");
    return x;
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::uint64_t count(const std::string& key) {
    const json& v = at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (x >= 0 && std::floor(x) == x && x < 1e18) return static_cast<std::uint64_t>(x);
    }
    throw ConfigError(field(key), "expected a non-negative integer");
  }
  std::uint64_t count(const std::string& key, std::uint64_t fallback) { return has(key) ? count(key) : fallback; }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::set<std::string>& allowed) {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    const auto s = v.get<std::string>();
    if (!allowed.empty() && !allowed.count(s)) {
      std::string opts;
      for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
      throw ConfigError(field(key), "unknown value '" + s + "' (expected one of: " + opts + ")");
    }
    return s;
  }
  std::string text(const std::string& key, const std::set<std::string>& allowed, const std::string& fallback) {
    return has(key) ? text(key, allowed) : fallback;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(field(it.key()), "unknown field");
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

// A complex entry is a number or a [re, im] pair.
Complex complex_value(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(field, "expected a number or a [re, im] pair");
}

std::vector<double> number_list(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(field + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Table2x2 table2x2(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(field, "expected a 2x2 array");
  Table2x2 t{};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto row = number_list(v[i], field + "[" + std::to_string(i) + "]");
    if (row.size() != 2) throw ConfigError(field + "[" + std::to_string(i) + "]", "expected two entries");
    t[i] = {row[0], row[1]};
  }
  return t;
}

std::vector<double> named_move(const std::string& name, StrategyBox box, const std::string& field) {
  switch (box) {
    case StrategyBox::EwlTwoParameter:
      if (name == "C") return {0.0, 0.0};
      if (name == "D") return {kPi, 0.0};
      if (name == "Q") return {0.0, kPi / 2};
      break;
    case StrategyBox::Restricted:
      if (name == "C") return {0.0, 0.0};
      if (name == "D") return {kPi / 2, 0.0};
      break;
    case StrategyBox::FullSU2:
      if (name == "I" || name == "C") return {0.0, 0.0, 0.0};
      if (name == "iX") return {kPi / 2, 0.0, kPi / 2};
      if (name == "iY" || name == "D") return {kPi / 2, 0.0, 0.0};
      if (name == "iZ") return {0.0, kPi / 2, 0.0};
      break;
  }
  throw ConfigError(field, "unknown move name '" + name + "' for this strategy box");
}

std::vector<std::vector<double>> profile_list(const json& v, std::size_t players, StrategyBox box,
                                              const std::string& field) {
  if (!v.is_array() || v.size() != players)
    throw ConfigError(field, "expected one entry per player (" + std::to_string(players) + ")");
  const std::size_t arity = box == StrategyBox::FullSU2 ? 3 : 2;
  std::vector<std::vector<double>> out;
  for (std::size_t p = 0; p < players; ++p) {
    const std::string f = field + "[" + std::to_string(p) + "]";
    if (v[p].is_string()) {
      out.push_back(named_move(v[p].get<std::string>(), box, f));
    } else {
      auto x = number_list(v[p], f);
      if (x.size() != arity) throw ConfigError(f, "expected " + std::to_string(arity) + " angles");
      out.push_back(std::move(x));
    }
  }
  return out;
}

MeyerParams parse_meyer(Fields& f) {
  const double r = 1.0 / std::sqrt(2.0);
  MeyerParams m{r, r, 0.5};
  if (f.has("u")) m.u = complex_value(f.at("u"), f.field("u"));
  if (f.has("v")) m.v = complex_value(f.at("v"), f.field("v"));
  m.p = f.number("p", 0.5);
  return m;
}

StrategyBox parse_box(Fields& f) {
  const auto s = f.text("box", {"ewl", "su2", "restricted"}, "ewl");
  if (s == "su2") return StrategyBox::FullSU2;
  if (s == "restricted") return StrategyBox::Restricted;
  return StrategyBox::EwlTwoParameter;
}

std::vector<std::vector<double>> payoff_table(Fields& f, std::size_t players) {
  if (!f.has("table")) {
    if (players == 2) return prisoners_dilemma_table();
    if (players == 3) return prisoners_dilemma3_table();
    throw ConfigError(f.field("table"), "required field is missing");
  }
  const json& t = f.at("table");
  if (t.is_string()) {
    const auto name = f.text("table", {"pd", "pd3", "minority"});
    if (name == "pd") return prisoners_dilemma_table();
    if (name == "pd3") return prisoners_dilemma3_table();
    return minority_table(players);
  }
  if (!t.is_array()) throw ConfigError(f.field("table"), "expected a table name or an array of payoff rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < t.size(); ++k) rows.push_back(number_list(t[k], f.field("table") + "[" + std::to_string(k) + "]"));
  return rows;
}

EwlParams parse_ewl(Fields& f) {
  EwlParams e;
  e.config.players = f.count("players", 2);
  if (e.config.players < 2 || e.config.players > 8) throw ConfigError(f.field("players"), "expected 2 to 8 players");
  e.config.gamma = f.number("gamma");
  const auto flip = f.text("flip", {"dhat", "sigma_x"}, e.config.players % 2 == 0 ? "dhat" : "sigma_x");
  e.config.flip = flip == "dhat" ? FlipConvention::Dhat : FlipConvention::SigmaX;
  e.config.box = parse_box(f);
  e.config.payoffs = payoff_table(f, e.config.players);
  if (f.has("profile")) e.profile = profile_list(f.at("profile"), e.config.players, e.config.box, f.field("profile"));
  return e;
}

MinorityParams parse_minority(Fields& f) {
  MinorityParams m;
  m.players = f.count("players", 4);
  if (m.players < 3 || m.players > 8) throw ConfigError(f.field("players"), "expected 3 to 8 players");
  m.disentangler = f.boolean("disentangler", true);
  if (f.has("profile")) {
    const json& v = f.at("profile");
    if (v.is_string()) {
      f.text("profile", {"equilibrium"});
      if (m.players != 4) throw ConfigError(f.field("profile"), "the quoted equilibrium is for 4 players");
      const auto c = su2_coordinates(minority4_strategy());
      m.profile.assign(4, {c.theta, c.phi, c.psi});
    } else {
      m.profile = profile_list(v, m.players, StrategyBox::FullSU2, f.field("profile"));
    }
  }
  return m;
}

MwParams parse_mw(Fields& f) {
  MwParams m;
  if (f.has("amplitudes")) {
    const json& a = f.at("amplitudes");
    if (!a.is_array() || a.size() != 4) throw ConfigError(f.field("amplitudes"), "expected four amplitudes c00, c01, c10, c11");
    for (std::size_t i = 0; i < 4; ++i)
      m.config.amplitudes[i] = complex_value(a[i], f.field("amplitudes") + "[" + std::to_string(i) + "]");
  }
  const auto game = f.text("game", {"custom", "bos", "ultimatum"}, "custom");
  if (game == "bos") {
    Fields b(f.at("bos"), f.field("bos"));
    std::tie(m.config.alpha, m.config.beta) = battle_of_sexes_tables(b.number("alpha"), b.number("beta"), b.number("gamma"));
    b.finish();
  } else if (game == "ultimatum") {
    const auto u = ultimatum_spec(1.0, 0.0);
    m.config.alpha = u.alpha;
    m.config.beta = u.beta;
  } else {
    m.config.alpha = table2x2(f.at("alpha"), f.field("alpha"));
    m.config.beta = table2x2(f.at("beta"), f.field("beta"));
  }
  m.config.accept_entangled = f.boolean("accept_entangled", true);
  m.p = f.number("p", 1.0);
  m.q = f.number("q", 1.0);
  return m;
}

CournotParams parse_cournot(Fields& f) {
  CournotParams c;
  c.config.a = f.number("a");
  c.config.c = f.number("c");
  c.config.gamma = f.number("gamma");
  c.config.h = f.number("h", 1.0);
  return c;
}

BvParams parse_bv(Fields& f) {
  BvParams b;
  b.instance.n = f.count("n");
  b.instance.a = f.count("a");
  return b;
}

std::vector<double> sweep_values(const json& v, const std::string& field) {
  if (v.is_array()) return number_list(v, field);
  Fields r(v, field);
  if (r.has("values")) {
    auto out = number_list(r.at("values"), r.field("values"));
    r.finish();
    return out;
  }
  const double start = r.number("start"), stop = r.number("stop");
  const auto count = r.count("count");
  r.finish();
  if (count > 100000) throw ConfigError(r.field("count"), "at most 100000 grid values");
  if (count == 1) return {start};
  return linspace(start, stop, count);
}

}  // namespace

ProtocolParams parse_parameters(const std::string& protocol, const json& parameters) {
  Fields f(parameters, "parameters");
  ProtocolParams out;
  if (protocol == "meyer") out = parse_meyer(f);
  else if (protocol == "ewl") out = parse_ewl(f);
  else if (protocol == "minority") out = parse_minority(f);
  else if (protocol == "mw") out = parse_mw(f);
  else if (protocol == "cournot" || protocol == "stackelberg") out = parse_cournot(f);
  else if (protocol == "bv") out = parse_bv(f);
  else throw ConfigError("protocol", "unknown protocol '" + protocol + "'");
  f.finish();
  return out;
}

ScenarioConfig parse_scenario(const json& doc) {
  Fields f(doc, "");
  ScenarioConfig cfg;
  cfg.protocol = f.text("protocol", kProtocols);
  cfg.analysis = f.text("analysis", kAnalyses, "evaluate");
  cfg.parameters = f.has("parameters") ? f.at("parameters") : json::object();
  if (f.has("sweep")) {
    const json& s = f.at("sweep");
    if (!s.is_object() || s.empty()) throw ConfigError("sweep", "expected an object naming one parameter");
    if (s.size() > 1) throw ConfigError("sweep", "unsupported: only one swept parameter is allowed");
    SweepSpec sw;
    sw.parameter = s.begin().key();
    sw.values = sweep_values(s.begin().value(), "sweep." + sw.parameter);
    cfg.sweep = std::move(sw);
  } else if (cfg.analysis == "sweep") {
    throw ConfigError("sweep", "required field is missing");
  }
  cfg.grid = f.count("grid", 0);
  cfg.seed = f.count("seed", 0);
  cfg.shots = f.count("shots", 0);
  cfg.tolerance = f.number("tolerance", 1e-3);
  if (!(cfg.tolerance > 0)) throw ConfigError("tolerance", "expected a positive number");
  if (f.has("output")) {
    Fields o(f.at("output"), "output");
    if (o.has("path")) cfg.output_path = o.text("path", {});
    cfg.format = o.text("format", {"json", "csv"}, "json");
    o.finish();
  }
  f.finish();

  // The swept field may be absent from the base parameters; schema checks
  // then run with the first grid value (or a placeholder for an empty grid).
  json base = cfg.parameters;
  if (cfg.sweep && base.is_object() && !base.contains(cfg.sweep->parameter))
    base[cfg.sweep->parameter] = cfg.sweep->values.empty() ? 0.0 : cfg.sweep->values.front();
  cfg.params = parse_parameters(cfg.protocol, base);
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace qgames::cli
