#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qgames/errors.hpp"
#include "qgames/protocols.hpp"

namespace qgames::cli {

// Schema violation; `field` is the dotted path of the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct MeyerParams {
  Complex u;
  Complex v;
  double p = 0.5;  // P's flip probability
};

struct EwlParams {
  EWLConfig config;
  std::vector<std::vector<double>> profile;  // one parameter vector per player
};

struct MinorityParams {
  std::size_t players = 3;
  std::vector<std::vector<double>> profile;  // su2 angles per player
  bool disentangler = true;
};

struct MwParams {
  MWConfig config;
  double p = 1.0;
  double q = 1.0;
};

struct CournotParams {
  CournotConfig config;
};

struct BvParams {
  BVInstance instance;
};

using ProtocolParams = std::variant<MeyerParams, EwlParams, MinorityParams, MwParams, CournotParams, BvParams>;

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

struct ScenarioConfig {
  std::string protocol;
  std::string analysis = "evaluate";
  nlohmann::json parameters;  // as written, echoed into the report
  ProtocolParams params;
  std::optional<SweepSpec> sweep;
  std::size_t grid = 0;  // 0: library default
  std::uint64_t seed = 0;
  std::size_t shots = 0;  // sampled measurement outcomes, 0 for none
  double tolerance = 1e-3;
  std::string output_path;  // empty: stdout
  std::string format = "json";
};

ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::string& path);
// Parameters of one protocol, validated against its config type.
ProtocolParams parse_parameters(const std::string& protocol, const nlohmann::json& parameters);

// The deterministic part of a report.
nlohmann::json run_results(const ScenarioConfig& cfg);
// {"parameter", "columns", "rows"}; one row per swept value, in the given order.
nlohmann::json sweep_table(const ScenarioConfig& cfg);
std::string table_to_csv(const nlohmann::json& table);

// Rounds to 12 significant digits so reports are stable snapshots.
double snap(double x);

// Exit codes: 0 success, 2 config error, 3 numeric precondition error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qgames::cli
