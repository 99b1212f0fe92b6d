#include <cmath>
#include <numbers>
#include <string>

#include "qgames/errors.hpp"
#include "qgames/protocols.hpp"

namespace qgames {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix flip_operator(FlipConvention flip) { return flip == FlipConvention::Dhat ? ewl_defect() : pauli::x(); }

ComplexMatrix tensor_power(const ComplexMatrix& a, std::size_t n) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < n; ++i) out = tensor_product(out, a);
  return out;
}

void validate(const EWLConfig& cfg) {
  if (cfg.players < 2 || cfg.players > 8) throw PreconditionError("ewl: player count must be between 2 and 8");
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= kPi / 2 + 1e-12)) throw PreconditionError("ewl: gamma must lie in [0, pi/2]");
  const std::size_t outcomes = std::size_t{1} << cfg.players;
  if (cfg.payoffs.size() != outcomes)
    throw PreconditionError("ewl: payoff table needs " + std::to_string(outcomes) + " outcomes");
  for (const auto& row : cfg.payoffs)
    if (row.size() != cfg.players) throw PreconditionError("ewl: every outcome needs one payoff per player");
}

std::vector<std::size_t> qubit_dims(std::size_t n) { return std::vector<std::size_t>(n, 2); }

std::vector<Complex> zero_state(std::size_t n) {
  std::vector<Complex> v(std::size_t{1} << n);
  v[0] = 1.0;
  return v;
}

}  // namespace

ComplexMatrix ewl_entangler(std::size_t players, double gamma, FlipConvention flip) {
  // exp(i t P) = cos t + i sin t P needs P^2 = I; D-hat^2 = -I, so the D-hat
  // convention only applies to an even number of players.
  if (flip == FlipConvention::Dhat && players % 2 != 0)
    throw PreconditionError("ewl: the D-hat entangler requires an even number of players");
  return exp_involution(tensor_power(flip_operator(flip), players), gamma / 2);
}

StrategySpace ewl_strategy_space(StrategyBox box) {
  switch (box) {
    case StrategyBox::EwlTwoParameter:
      return StrategySpace::parametric("ewl", {{0.0, 0.0}, {kPi, kPi / 2}},
                                       [](std::span<const double> x) { return ewl_strategy(x[0], x[1]); });
    case StrategyBox::FullSU2:
      return StrategySpace::full_unitary(2);
    case StrategyBox::Restricted:
      return StrategySpace::parametric("restricted", {{0.0, 0.0}, {kPi / 2, kPi / 2}},
                                       [](std::span<const double> x) { return restricted_su2(x[0], x[1]); });
  }
  throw PreconditionError("ewl: unknown strategy box");
}

QuantumGameSpec ewl_spec(const EWLConfig& cfg) {
  validate(cfg);
  const auto dims = qubit_dims(cfg.players);
  const ComplexMatrix j = ewl_entangler(cfg.players, cfg.gamma, cfg.flip);
  const PureState start(j * std::span<const Complex>(zero_state(cfg.players)), dims);
  // Measuring J* psi in the computational basis is the POVM {J|w><w|J*} on psi.
  const POVM povm = computational_povm(dims).conjugated(j);
  std::vector<PayoffMap> payoffs(cfg.players);
  for (std::size_t k = 0; k < cfg.payoffs.size(); ++k)
    for (std::size_t p = 0; p < cfg.players; ++p) payoffs[p][basis_label(k, dims)] = cfg.payoffs[k][p];
  std::vector<StrategySpace> spaces(cfg.players, ewl_strategy_space(cfg.box));
  return QuantumGameSpec(dims, start, povm, std::move(payoffs), std::move(spaces));
}

std::vector<Complex> ewl_final_state(const EWLConfig& cfg, const std::vector<ComplexMatrix>& moves,
                                     bool apply_disentangler) {
  if (moves.size() != cfg.players) throw PreconditionError("ewl: need one move per player");
  const ComplexMatrix j = ewl_entangler(cfg.players, cfg.gamma, cfg.flip);
  ComplexMatrix u = ComplexMatrix::identity(1);
  for (const auto& m : moves) {
    if (m.rows() != 2 || !is_unitary(m)) throw PreconditionError("ewl: moves must be 2x2 unitaries");
    u = tensor_product(u, m);
  }
  ComplexMatrix total = u * j;
  if (apply_disentangler) total = j.adjoint() * total;
  return total * std::span<const Complex>(zero_state(cfg.players));
}

std::vector<std::vector<double>> prisoners_dilemma_table() { return {{3, 3}, {0, 5}, {5, 0}, {1, 1}}; }

std::vector<std::vector<double>> prisoners_dilemma3_table() {
  // Outcome bits (A, B, C), 0 = cooperate.
  return {{3, 3, 3}, {2, 2, 5}, {2, 5, 2}, {0, 4, 4}, {5, 2, 2}, {4, 0, 4}, {4, 4, 0}, {1, 1, 1}};
}

std::vector<std::vector<double>> minority_table(std::size_t players) {
  const std::size_t outcomes = std::size_t{1} << players;
  std::vector<std::vector<double>> t(outcomes, std::vector<double>(players, 0.0));
  for (std::size_t k = 0; k < outcomes; ++k) {
    std::size_t ones = 0;
    for (std::size_t p = 0; p < players; ++p) ones += (k >> (players - 1 - p)) & 1U;
    for (std::size_t p = 0; p < players; ++p) {
      const bool bit = (k >> (players - 1 - p)) & 1U;
      const std::size_t mine = bit ? ones : players - ones;
      if (2 * mine < players) t[k][p] = 1.0;
    }
  }
  return t;
}

std::vector<Complex> ewl_amplitudes_n(const std::vector<SU2Coordinates>& a) {
  const Complex i = kI;
  if (a.size() == 2) {
    const double c1 = std::cos(a[0].theta), s1 = std::sin(a[0].theta);
    const double c2 = std::cos(a[1].theta), s2 = std::sin(a[1].theta);
    const double f1 = a[0].phi, f2 = a[1].phi, p1 = a[0].psi, p2 = a[1].psi;
    return {c1 * c2 * std::cos(f1 + f2) - s1 * s2 * std::sin(p1 + p2),
            i * c1 * s2 * std::sin(p2 - f1) + i * s1 * c2 * std::cos(f2 - p1),
            i * c2 * s1 * std::sin(p1 - f2) + i * s2 * c1 * std::cos(f1 - p2),
            s1 * s2 * std::cos(p1 + p2) + c1 * c2 * std::sin(f1 + f2)};
  }
  if (a.size() != 3) throw PreconditionError("ewl_amplitudes_n: closed forms exist for 2 or 3 players only");
  auto c = [&](std::size_t k) { return std::cos(a[k].theta); };
  auto s = [&](std::size_t k) { return std::sin(a[k].theta); };
  auto f = [&](std::size_t k) { return a[k].phi; };
  auto p = [&](std::size_t k) { return a[k].psi; };
  // Player z alone plays 1 (x, y play 0).
  auto single = [&](std::size_t x, std::size_t y, std::size_t z) -> Complex {
    return i * c(x) * c(y) * s(z) * std::sin(p(z) - f(x) - f(y)) + s(x) * s(y) * c(z) * std::sin(f(z) - p(x) - p(y));
  };
  // Player z alone plays 0 (x, y play 1).
  auto pair = [&](std::size_t z, std::size_t x, std::size_t y) -> Complex {
    return c(z) * s(x) * s(y) * std::cos(p(x) + p(y) - f(z)) + i * s(z) * c(x) * c(y) * std::cos(f(y) + f(x) - p(z));
  };
  const double fs = f(0) + f(1) + f(2), ps = p(0) + p(1) + p(2);
  const double ccc = c(0) * c(1) * c(2), sss = s(0) * s(1) * s(2);
  return {ccc * std::cos(fs) + i * sss * std::cos(ps),
          single(0, 1, 2),
          single(0, 2, 1),
          pair(0, 1, 2),
          single(1, 2, 0),
          pair(1, 0, 2),
          pair(2, 0, 1),
          i * sss * std::sin(ps) + ccc * std::sin(fs)};
}

SU2Coordinates no_nash_deviation(const SU2Coordinates& opponent) {
  return {-opponent.theta, -opponent.phi, kPi / 2 - opponent.psi};
}

std::vector<double> minority_payoff(const std::vector<ComplexMatrix>& moves, bool apply_disentangler) {
  const std::size_t n = moves.size();
  if (n < 3) throw PreconditionError("minority game needs at least 3 players");
  EWLConfig cfg{n, kPi / 2, FlipConvention::SigmaX, minority_table(n), StrategyBox::FullSU2};
  const auto psi = ewl_final_state(cfg, moves, apply_disentangler);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < psi.size(); ++k)
    for (std::size_t p = 0; p < n; ++p) out[p] += std::norm(psi[k]) * cfg.payoffs[k][p];
  return out;
}

std::array<double, 3> minority3_classical(double theta1, double theta2, double theta3) {
  const double c[3] = {std::pow(std::cos(theta1), 2), std::pow(std::cos(theta2), 2), std::pow(std::cos(theta3), 2)};
  const double s[3] = {1 - c[0], 1 - c[1], 1 - c[2]};
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    const int x = (k + 1) % 3, y = (k + 2) % 3;
    out[k] = c[k] * s[x] * s[y] + s[k] * c[x] * c[y];
  }
  return out;
}

ComplexMatrix minority4_strategy(bool as_printed) {
  const double a = std::cos(kPi / 16) / std::sqrt(2.0), b = std::sin(kPi / 16) / std::sqrt(2.0);
  const ComplexMatrix base = Complex(a) * (pauli::identity() + kI * pauli::x());
  if (as_printed) return base + Complex(b) * (kI * pauli::y() - kI * pauli::z());
  return base - Complex(b) * (kI * pauli::y() + kI * pauli::z());
}

std::vector<std::vector<std::size_t>> discrete_pauli_equilibria(const EWLConfig& cfg) {
  validate(cfg);
  const ComplexMatrix moves[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  const std::size_t n = cfg.players;
  std::size_t profiles = 1;
  for (std::size_t p = 0; p < n; ++p) profiles *= 4;

  auto payoffs = [&](const std::vector<std::size_t>& pick) {
    std::vector<ComplexMatrix> m;
    for (auto k : pick) m.push_back(moves[k]);
    const auto psi = ewl_final_state(cfg, m);
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < psi.size(); ++k)
      for (std::size_t p = 0; p < n; ++p) out[p] += std::norm(psi[k]) * cfg.payoffs[k][p];
    return out;
  };

  std::vector<std::vector<std::size_t>> equilibria;
  for (std::size_t code = 0; code < profiles; ++code) {
    std::vector<std::size_t> pick(n);
    for (std::size_t p = n, c = code; p-- > 0; c /= 4) pick[p] = c % 4;
    const auto base = payoffs(pick);
    bool stable = true;
    for (std::size_t p = 0; p < n && stable; ++p) {
      auto alt = pick;
      for (std::size_t k = 0; k < 4 && stable; ++k) {
        alt[p] = k;
        if (payoffs(alt)[p] > base[p] + 1e-9) stable = false;
      }
    }
    if (stable) equilibria.push_back(std::move(pick));
  }
  return equilibria;
}

}  // namespace qgames
