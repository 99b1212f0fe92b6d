#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qgames/channels.hpp"
#include "qgames/linalg.hpp"
#include "qgames/measurement.hpp"
#include "qgames/states.hpp"

namespace qgames {

using UnitaryFactory = std::function<ComplexMatrix(std::span<const double>)>;

struct ParameterBox {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const noexcept { return lower.size(); }
  bool contains(std::span<const double> x, double tol = kDefaultTolerance) const;
};

class StrategySpace {
 public:
  enum class Kind { UnitaryParametric, FullUnitary, Channel, ClassicalMixture };

  static StrategySpace parametric(std::string factory_id, ParameterBox box, UnitaryFactory factory);
  // Qubits only: su2(theta, phi, psi) over theta in [0, pi/2], phi, psi in [-pi, pi].
  static StrategySpace full_unitary(std::size_t dim);
  static StrategySpace channel(std::size_t dim);
  static StrategySpace mixture(std::vector<std::string> names, std::vector<ComplexMatrix> unitaries);
  // Single fixed move for a player with nothing to choose.
  static StrategySpace trivial(std::size_t dim);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::string& factory_id() const noexcept { return factory_id_; }
  const ParameterBox& box() const noexcept { return box_; }
  const std::vector<std::string>& mixture_names() const noexcept { return names_; }
  const std::vector<ComplexMatrix>& mixture_set() const noexcept { return set_; }
  ComplexMatrix unitary(std::span<const double> params) const;

 private:
  Kind kind_ = Kind::Channel;
  std::size_t dim_ = 0;
  std::string factory_id_;
  ParameterBox box_;
  UnitaryFactory factory_;
  std::vector<std::string> names_;
  std::vector<ComplexMatrix> set_;
};

const char* to_string(StrategySpace::Kind kind);

struct ParameterPoint {
  std::vector<double> values;
};
struct MixtureWeights {
  std::vector<double> weights;
};
using Strategy = std::variant<ParameterPoint, KrausChannel, MixtureWeights>;
using StrategyProfile = std::vector<Strategy>;

using PayoffMap = std::map<std::string, double>;

class QuantumGameSpec {
 public:
  QuantumGameSpec(std::vector<std::size_t> player_dims, DensityMatrix initial_state, POVM povm,
                  std::vector<PayoffMap> payoffs, std::vector<StrategySpace> spaces);
  // Keeps the pure vector as well, enabling the state-vector path for unitary profiles.
  QuantumGameSpec(std::vector<std::size_t> player_dims, const PureState& initial_state, POVM povm,
                  std::vector<PayoffMap> payoffs, std::vector<StrategySpace> spaces);

  std::size_t player_count() const noexcept { return player_dims_.size(); }
  const std::vector<std::size_t>& player_dims() const noexcept { return player_dims_; }
  const DensityMatrix& initial_state() const noexcept { return initial_state_; }
  const std::optional<PureState>& initial_pure() const noexcept { return initial_pure_; }
  const POVM& povm() const noexcept { return povm_; }
  const std::vector<PayoffMap>& payoffs() const noexcept { return payoffs_; }
  const std::vector<StrategySpace>& spaces() const noexcept { return spaces_; }

  // Payoff of player j for each POVM outcome, in POVM order.
  const std::vector<double>& payoff_vector(std::size_t player) const { return payoff_vectors_.at(player); }

 private:
  void validate();

  std::vector<std::size_t> player_dims_;
  DensityMatrix initial_state_;
  std::optional<PureState> initial_pure_;
  POVM povm_;
  std::vector<PayoffMap> payoffs_;
  std::vector<StrategySpace> spaces_;
  std::vector<std::vector<double>> payoff_vectors_;
};

// Throws PreconditionError if a strategy does not fit its player's space.
void check_profile(const QuantumGameSpec& spec, const StrategyProfile& profile);

OutcomeDistribution outcome_distribution(const QuantumGameSpec& spec, const StrategyProfile& profile);
std::vector<double> evaluate(const QuantumGameSpec& spec, const StrategyProfile& profile);

struct SearchOptions {
  std::size_t points_per_axis = 0;  // 0: 60 for boxes up to 2 parameters, 24 otherwise
  bool refine = true;
};
std::size_t default_grid(std::size_t parameter_count);

struct BestResponse {
  Strategy strategy;
  double payoff = 0.0;
  double current_payoff = 0.0;
  double gain = 0.0;
  std::size_t evaluations = 0;
};

// Grid scan in lexicographic order plus coordinate-descent refinement from
// the best grid point. Throws UnsupportedSearchError for channel spaces.
BestResponse best_response(const QuantumGameSpec& spec, const StrategyProfile& profile, std::size_t player,
                           const SearchOptions& options = {});

struct EquilibriumReport {
  StrategyProfile profile;
  std::vector<double> payoffs;
  std::vector<double> gains;  // per player
  std::vector<BestResponse> deviations;
  double epsilon = 0.0;
  double threshold = 0.0;
  bool is_epsilon_nash = false;
  std::string method;
  std::vector<std::size_t> grid_resolution;  // per player
};

EquilibriumReport verify_epsilon_nash(const QuantumGameSpec& spec, const StrategyProfile& profile,
                                      const SearchOptions& options = {}, double threshold = 1e-3);

// Iterated best response from `start` until no player gains more than `threshold`
// or `max_rounds` is exhausted; the final profile is then verified.
EquilibriumReport search_equilibrium(const QuantumGameSpec& spec, StrategyProfile start,
                                     const SearchOptions& options = {}, double threshold = 1e-3,
                                     std::size_t max_rounds = 20);

// alpha[i][j]: row player's payoff when she plays i and the column player j.
using Table2x2 = std::array<std::array<double, 2>, 2>;

struct MixedEquilibrium {
  double p = 0.0;  // probability the row player plays strategy 0
  double q = 0.0;  // probability the column player plays strategy 0
  double payoff_row = 0.0;
  double payoff_col = 0.0;
};
// Empty when the indifference system is singular or its solution is not interior.
std::optional<MixedEquilibrium> mixed_equilibrium_2x2(const Table2x2& alpha, const Table2x2& beta);
std::array<double, 2> mixed_payoffs_2x2(const Table2x2& alpha, const Table2x2& beta, double p, double q);

// Pure-strategy Nash equilibria of a bimatrix game, as (row, col) pairs.
std::vector<std::array<std::size_t, 2>> pure_equilibria_2x2(const Table2x2& alpha, const Table2x2& beta);

// sum_k w_k (U_k (x) ... ) rho (...)^*; `unitaries` holds one product operator per weight.
DensityMatrix sample_mixed_unitary(const std::vector<double>& weights, const std::vector<ComplexMatrix>& unitaries,
                                   const DensityMatrix& rho);
// Monte-Carlo average of U rho U* over `samples` Haar-random SU(2) draws.
DensityMatrix haar_twirl(const DensityMatrix& rho, std::size_t samples, std::uint64_t seed);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qgames
