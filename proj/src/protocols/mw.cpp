#include <cmath>
#include <string>
#include <tuple>

#include "qgames/errors.hpp"
#include "qgames/protocols.hpp"

namespace qgames {

namespace {

const std::vector<std::string> kLabels{"00", "01", "10", "11"};

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError(std::string("mw: ") + name + " must lie in [0, 1]");
}

// Amplitudes the referee actually prepares.
std::array<Complex, 4> initial_amplitudes(const MWConfig& cfg) {
  if (cfg.accept_entangled) return cfg.amplitudes;
  return {1.0, 0.0, 0.0, 0.0};
}

// |c_{ij}|^2 with i, j in {0, 1}.
double weight(const std::array<Complex, 4>& c, std::size_t i, std::size_t j) { return std::norm(c[2 * i + j]); }

}  // namespace

void validate(const MWConfig& cfg) {
  double s = 0.0;
  for (const auto& z : cfg.amplitudes) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw PreconditionError("mw: non-finite amplitude");
    s += std::norm(z);
  }
  if (std::abs(s - 1.0) > kDefaultTolerance) throw PreconditionError("mw: initial amplitudes are not normalized");
  for (const auto* t : {&cfg.alpha, &cfg.beta})
    for (const auto& row : *t)
      for (double x : row)
        if (!std::isfinite(x)) throw PreconditionError("mw: non-finite payoff");
}

OutcomeDistribution mw_final_probabilities(const MWConfig& cfg, double p, double q) {
  validate(cfg);
  require_probability(p, "p");
  require_probability(q, "q");
  const auto c = initial_amplitudes(cfg);
  OutcomeDistribution out{kLabels, {}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out.probabilities.push_back(p * q * weight(c, i, j) + (1 - p) * q * weight(c, 1 - i, j) +
                                  p * (1 - q) * weight(c, i, 1 - j) + (1 - p) * (1 - q) * weight(c, 1 - i, 1 - j));
  return out;
}

OutcomeDistribution mw_pipeline_probabilities(const MWConfig& cfg, double p, double q) {
  validate(cfg);
  require_probability(p, "p");
  require_probability(q, "q");
  const auto c = initial_amplitudes(cfg);
  const DensityMatrix rho = density_from_pure(PureState({c.begin(), c.end()}, {2, 2}));
  const ComplexMatrix id = pauli::identity(), f = pauli::x();
  const DensityMatrix fin = sample_mixed_unitary(
      {p * q, p * (1 - q), (1 - p) * q, (1 - p) * (1 - q)},
      {tensor_product(id, id), tensor_product(id, f), tensor_product(f, id), tensor_product(f, f)}, rho);
  auto dist = probabilities(fin, computational_povm({2, 2}));
  return dist;
}

std::array<double, 2> mw_payoffs(const MWConfig& cfg, double p, double q) {
  const auto dist = mw_final_probabilities(cfg, p, q);
  std::array<double, 2> out{0.0, 0.0};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      out[0] += cfg.alpha[i][j] * dist.probabilities[2 * i + j];
      out[1] += cfg.beta[i][j] * dist.probabilities[2 * i + j];
    }
  return out;
}

std::pair<Table2x2, Table2x2> mw_transformed_tables(const MWConfig& cfg) {
  validate(cfg);
  const auto c = initial_amplitudes(cfg);
  // Entry [a][b]: Alice plays a (0 = identity, 1 = flip), Bob plays b. The
  // outcome ij then arises from the initial component c_{i^a, j^b}.
  Table2x2 at{}, bt{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          const double w = weight(c, i ^ a, j ^ b);
          at[a][b] += cfg.alpha[i][j] * w;
          bt[a][b] += cfg.beta[i][j] * w;
        }
  return {at, bt};
}

QuantumGameSpec mw_spec(const MWConfig& cfg) {
  validate(cfg);
  const auto c = initial_amplitudes(cfg);
  std::vector<PayoffMap> payoffs(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      payoffs[0][kLabels[2 * i + j]] = cfg.alpha[i][j];
      payoffs[1][kLabels[2 * i + j]] = cfg.beta[i][j];
    }
  const auto space = StrategySpace::mixture({"I", "F"}, {pauli::identity(), pauli::x()});
  return QuantumGameSpec({2, 2}, PureState({c.begin(), c.end()}, {2, 2}), computational_povm({2, 2}),
                         std::move(payoffs), {space, space});
}

std::pair<Table2x2, Table2x2> battle_of_sexes_tables(double alpha, double beta, double gamma) {
  return {Table2x2{{{alpha, gamma}, {gamma, beta}}}, Table2x2{{{beta, gamma}, {gamma, alpha}}}};
}

MWConfig battle_of_sexes(double alpha, double beta, double gamma, Complex a, Complex b) {
  MWConfig cfg;
  cfg.amplitudes = {a, 0.0, 0.0, b};
  std::tie(cfg.alpha, cfg.beta) = battle_of_sexes_tables(alpha, beta, gamma);
  validate(cfg);
  return cfg;
}

MWConfig ultimatum_spec(Complex a, Complex b) {
  MWConfig cfg;
  cfg.amplitudes = {a, 0.0, 0.0, b};
  cfg.alpha = Table2x2{{{99, 0}, {50, 0}}};
  cfg.beta = Table2x2{{{1, 0}, {50, 0}}};
  validate(cfg);
  return cfg;
}

}  // namespace qgames
