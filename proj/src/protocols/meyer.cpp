#include <algorithm>
#include <cmath>
#include <limits>

#include "qgames/errors.hpp"
#include "qgames/protocols.hpp"

namespace qgames {

namespace {

void require_qubit_unitary(const ComplexMatrix& u, const char* who) {
  if (u.rows() != 2 || !is_unitary(u)) throw PreconditionError(std::string(who) + ": Q's move must be a 2x2 unitary");
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("flip probability must lie in [0, 1]");
}

}  // namespace

MeyerResult meyer_play(const ComplexMatrix& q_first, double p, const ComplexMatrix& q_second) {
  require_qubit_unitary(q_first, "meyer_play");
  require_qubit_unitary(q_second, "meyer_play");
  require_probability(p);
  const DensityMatrix heads = density_from_pure(PureState({1.0, 0.0}));
  const ComplexMatrix f = pauli::x();
  ComplexMatrix rho = q_first * heads.matrix() * q_first.adjoint();
  rho = Complex(p) * (f * rho * f) + Complex(1.0 - p) * rho;
  rho = q_second * rho * q_second.adjoint();
  DensityMatrix final_state(std::move(rho));
  const double p_heads = final_state.matrix()(0, 0).real();
  const double p_tails = final_state.matrix()(1, 1).real();
  return {std::move(final_state), p_tails - p_heads};
}

double meyer_midgame_value(Complex u, Complex v, double p) {
  if (std::abs(std::norm(u) + std::norm(v) - 1.0) > kDefaultTolerance)
    throw PreconditionError("meyer_midgame_value: |u|^2 + |v|^2 must be 1");
  require_probability(p);
  return (2.0 * p - 1.0) * (std::norm(u) - std::norm(v));
}

MeyerMinimax meyer_minimax(std::size_t points) {
  if (points < 2) throw PreconditionError("meyer_minimax: need at least two grid points");
  const auto grid = linspace(0.0, 1.0, points);
  auto value = [](double p, double t) {
    return meyer_midgame_value(std::sqrt(t), std::sqrt(1.0 - t), p);
  };
  MeyerMinimax out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (double t : grid) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double p : grid) worst = std::max(worst, value(p, t));
    if (worst < out.upper) {
      out.upper = worst;
      out.argmin_u2 = t;
    }
  }
  for (double p : grid) {
    double worst = std::numeric_limits<double>::infinity();
    for (double t : grid) worst = std::min(worst, value(p, t));
    if (worst > out.lower) {
      out.lower = worst;
      out.argmax_p = p;
    }
  }
  return out;
}

QuantumGameSpec meyer_spec(const ComplexMatrix& q_first, const ComplexMatrix& q_second) {
  require_qubit_unitary(q_first, "meyer_spec");
  require_qubit_unitary(q_second, "meyer_spec");
  const PureState start(q_first * std::vector<Complex>{1.0, 0.0}, {2, 1});
  // Measuring heads/tails after Q's second move is the POVM conjugated by Q2*.
  const POVM povm = POVM({"H", "T"}, computational_povm({2}).effects()).conjugated(q_second.adjoint());
  std::vector<PayoffMap> payoffs{{{"H", -1.0}, {"T", 1.0}}, {{"H", 1.0}, {"T", -1.0}}};
  std::vector<StrategySpace> spaces{StrategySpace::mixture({"N", "F"}, {pauli::identity(), pauli::x()}),
                                    StrategySpace::trivial(1)};
  return QuantumGameSpec({2, 1}, start, povm, std::move(payoffs), std::move(spaces));
}

}  // namespace qgames
