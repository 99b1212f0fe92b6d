#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qgames/games.hpp"
#include "qgames/unitaries.hpp"

namespace qgames {

// ---- Meyer penny flip -------------------------------------------------------

struct MeyerResult {
  DensityMatrix final_state;
  double payoff_p;  // p(T) - p(H)
};

// Q moves, P flips with probability p (else leaves the coin), Q moves again.
MeyerResult meyer_play(const ComplexMatrix& q_first, double p, const ComplexMatrix& q_second);
// (2p - 1)(|u|^2 - |v|^2)
double meyer_midgame_value(Complex u, Complex v, double p);

struct MeyerMinimax {
  double upper;      // min over |u|^2 of max over p
  double lower;      // max over p of min over |u|^2
  double argmin_u2;  // Q's minimizing |u|^2
  double argmax_p;   // P's maximizing p
};
MeyerMinimax meyer_minimax(std::size_t points);

// Two-player spec with dims {2, 1}: P mixes {N = I, F = X}; Q's moves are
// folded into the initial state and the measurement.
QuantumGameSpec meyer_spec(const ComplexMatrix& q_first, const ComplexMatrix& q_second);

// ---- EWL --------------------------------------------------------------------

enum class FlipConvention { Dhat, SigmaX };
enum class StrategyBox { EwlTwoParameter, FullSU2, Restricted };

struct EWLConfig {
  std::size_t players = 2;
  double gamma = 0.0;
  FlipConvention flip = FlipConvention::Dhat;
  // payoffs[outcome][player]; outcome index has player 0 as the most significant bit.
  std::vector<std::vector<double>> payoffs;
  StrategyBox box = StrategyBox::EwlTwoParameter;
};

// exp(i gamma/2 F^{(x)N}) with F = D-hat or sigma_x.
ComplexMatrix ewl_entangler(std::size_t players, double gamma, FlipConvention flip);
QuantumGameSpec ewl_spec(const EWLConfig& cfg);
// J* (U_1 (x) ... (x) U_N) J |0...0>.
std::vector<Complex> ewl_final_state(const EWLConfig& cfg, const std::vector<ComplexMatrix>& moves,
                                     bool apply_disentangler = true);
StrategySpace ewl_strategy_space(StrategyBox box);

std::vector<std::vector<double>> prisoners_dilemma_table();    // (3,3) (0,5) (5,0) (1,1)
std::vector<std::vector<double>> prisoners_dilemma3_table();   // three-player variant
std::vector<std::vector<double>> minority_table(std::size_t players);

// Closed-form amplitudes for su2 strategies under J = (I + i X^{(x)N})/sqrt 2, N in {2, 3}.
std::vector<Complex> ewl_amplitudes_n(const std::vector<SU2Coordinates>& angles);
// The deviation (-theta, -phi, pi/2 - psi) that sends the final state to |0...0> for N = 2.
SU2Coordinates no_nash_deviation(const SU2Coordinates& opponent);

std::vector<double> minority_payoff(const std::vector<ComplexMatrix>& moves, bool apply_disentangler = true);
std::array<double, 3> minority3_classical(double theta1, double theta2, double theta3);
// Four-player equilibrium strategy. `as_printed` selects the sign pattern
// (i sigma_y - i sigma_z); the default uses -(i sigma_y + i sigma_z).
ComplexMatrix minority4_strategy(bool as_printed = false);

// Pure profiles over {I, X, Y, Z} that are Nash among those four moves.
std::vector<std::vector<std::size_t>> discrete_pauli_equilibria(const EWLConfig& cfg);

// ---- Marinatto-Weber --------------------------------------------------------

struct MWConfig {
  std::array<Complex, 4> amplitudes{1.0, 0.0, 0.0, 0.0};  // c_00, c_01, c_10, c_11
  Table2x2 alpha{};
  Table2x2 beta{};
  bool accept_entangled = true;  // false: both start from |00>
};

void validate(const MWConfig& cfg);
// p (q): probability that Alice (Bob) applies the identity rather than the flip.
OutcomeDistribution mw_final_probabilities(const MWConfig& cfg, double p, double q);
OutcomeDistribution mw_pipeline_probabilities(const MWConfig& cfg, double p, double q);
std::array<double, 2> mw_payoffs(const MWConfig& cfg, double p, double q);
// Rows/columns: 0 = identity, 1 = flip.
std::pair<Table2x2, Table2x2> mw_transformed_tables(const MWConfig& cfg);
QuantumGameSpec mw_spec(const MWConfig& cfg);

std::pair<Table2x2, Table2x2> battle_of_sexes_tables(double alpha, double beta, double gamma);
MWConfig battle_of_sexes(double alpha, double beta, double gamma, Complex a, Complex b);
// Rows: unfair, fair; columns: accept, reject.
MWConfig ultimatum_spec(Complex a, Complex b);

// ---- Continuous-variable Cournot / Stackelberg --------------------------------

struct CournotConfig {
  double a = 0.0;
  double c = 0.0;
  double gamma = 0.0;
  double h = 1.0;
};

void validate(const CournotConfig& cfg);
std::array<double, 2> cournot_quantities(const CournotConfig& cfg, double y1, double y2);
// Payoffs on the squeezed (mean) state.
std::array<double, 2> cournot_payoffs(const CournotConfig& cfg, double y1, double y2);
// Payoffs E[x_j (a - c - x_1 - x_2)] on the Gaussian final state.
std::array<double, 2> cournot_gaussian_payoffs(const CournotConfig& cfg, double y1, double y2);

struct CournotSolution {
  std::array<double, 2> y_star;
  std::array<double, 2> profit_star;
  std::array<double, 2> quantities;
};
// Throws PreconditionError when the equilibrium leaves the region a >= Q.
CournotSolution cournot_closed_form(const CournotConfig& cfg);
// d u_j / d y_j at (y1, y2).
std::array<double, 2> cournot_gradient(const CournotConfig& cfg, double y1, double y2);
// Largest unilateral gain over `points` values of y_j in [lo, hi].
double cournot_grid_epsilon(const CournotConfig& cfg, std::array<double, 2> y, std::size_t points, double lo, double hi);

double stackelberg_follower(const CournotConfig& cfg, double y1);
struct StackelbergSolution {
  double y1_star;
  double y2_star;
  std::array<double, 2> profits;
};
StackelbergSolution stackelberg_solve(const CournotConfig& cfg);

// ---- Bernstein-Vazirani -----------------------------------------------------

struct BVInstance {
  std::size_t n = 1;
  std::uint64_t a = 0;
};

// |x> -> (-1)^{a.x} |x>, counting applications.
class BVOracle {
 public:
  explicit BVOracle(BVInstance inst);
  std::vector<Complex> operator()(const std::vector<Complex>& state);
  std::size_t calls() const noexcept { return calls_; }

 private:
  BVInstance inst_;
  std::size_t calls_ = 0;
};

struct BVResult {
  std::uint64_t guess = 0;
  std::size_t oracle_calls = 0;
  double amplitude = 0.0;               // |<guess|final>|
  std::vector<Complex> superposition;   // W^{(x)n} |0...0>
};
BVResult bv_run(const BVInstance& inst);
std::uint64_t bv_guess(const BVInstance& inst);

}  // namespace qgames
