#include "qgames/games.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qgames/errors.hpp"
#include "qgames/unitaries.hpp"

namespace qgames {

namespace {

constexpr double kTieEpsilon = 1e-12;

void check_simplex(const std::vector<double>& w, std::size_t size, const std::string& what) {
  if (w.size() != size)
    throw PreconditionError(what + ": expected " + std::to_string(size) + " weights, got " + std::to_string(w.size()));
  double s = 0.0;
  for (double x : w) {
    if (!(x >= -1e-9)) throw PreconditionError(what + ": negative weight");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-9) throw PreconditionError(what + ": weights sum to " + std::to_string(s));
}

// One term of a player's (possibly mixed) strategy.
struct Component {
  double weight;
  std::optional<ComplexMatrix> unitary;
  std::optional<KrausChannel> channel;
};

std::vector<Component> components(const StrategySpace& space, const Strategy& s) {
  if (const auto* pt = std::get_if<ParameterPoint>(&s)) return {{1.0, space.unitary(pt->values), std::nullopt}};
  if (const auto* ch = std::get_if<KrausChannel>(&s)) {
    if (ch->operators().size() == 1 && is_unitary(ch->operators().front()))
      return {{1.0, ch->operators().front(), std::nullopt}};
    return {{1.0, std::nullopt, *ch}};
  }
  const auto& w = std::get<MixtureWeights>(s).weights;
  std::vector<Component> out;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] > 0.0) out.push_back({w[k], space.mixture_set()[k], std::nullopt});
  return out;
}

KrausChannel as_channel(const Component& c) { return c.channel ? *c.channel : KrausChannel({*c.unitary}); }

std::vector<double> distribution_unchecked(const QuantumGameSpec& spec, const StrategyProfile& profile) {
  const std::size_t n = spec.player_count();
  std::vector<std::vector<Component>> comps(n);
  for (std::size_t j = 0; j < n; ++j) comps[j] = components(spec.spaces()[j], profile[j]);

  std::vector<double> probs(spec.povm().size(), 0.0);
  std::vector<std::size_t> idx(n, 0);
  // Convexity: sum over the product of every player's mixture components.
  while (true) {
    double w = 1.0;
    bool all_unitary = true;
    for (std::size_t j = 0; j < n; ++j) {
      w *= comps[j][idx[j]].weight;
      all_unitary = all_unitary && comps[j][idx[j]].unitary.has_value();
    }
    if (all_unitary && spec.initial_pure()) {
      ComplexMatrix u = ComplexMatrix::identity(1);
      for (std::size_t j = 0; j < n; ++j) u = tensor_product(u, *comps[j][idx[j]].unitary);
      const auto psi = u * std::span<const Complex>(spec.initial_pure()->amplitudes());
      for (std::size_t k = 0; k < probs.size(); ++k)
        probs[k] += w * inner(psi, spec.povm().effects()[k] * std::span<const Complex>(psi)).real();
    } else {
      KrausChannel ch = as_channel(comps[0][idx[0]]);
      for (std::size_t j = 1; j < n; ++j) ch = tensor_product(ch, as_channel(comps[j][idx[j]]));
      const ComplexMatrix out = apply(ch, spec.initial_state().matrix());
      for (std::size_t k = 0; k < probs.size(); ++k) {
        const auto& e = spec.povm().effects()[k];
        Complex t{};
        for (std::size_t r = 0; r < out.rows(); ++r)
          for (std::size_t c = 0; c < out.cols(); ++c) t += out(r, c) * e(c, r);
        probs[k] += w * t.real();
      }
    }
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < comps[j].size()) break;
      idx[j] = 0;
      if (j == 0) return probs;
    }
    if (n == 0) return probs;
  }
}

double player_payoff(const QuantumGameSpec& spec, const StrategyProfile& profile, std::size_t player) {
  const auto probs = distribution_unchecked(spec, profile);
  const auto& f = spec.payoff_vector(player);
  double s = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) s += f[k] * probs[k];
  return s;
}

// Golden-section maximization of f on [lo, hi].
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// All weight vectors with entries k/(n-1) summing to one, in lexicographic order.
void simplex_grid(std::size_t parts, std::size_t steps, std::vector<std::vector<double>>& out) {
  std::vector<std::size_t> c(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos + 1 == parts) {
      c[pos] = left;
      std::vector<double> w(parts);
      for (std::size_t i = 0; i < parts; ++i)
        w[i] = steps == 0 ? 1.0 / static_cast<double>(parts) : static_cast<double>(c[i]) / static_cast<double>(steps);
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t k = left + 1; k-- > 0;) {
      c[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, steps);
}

}  // namespace

bool ParameterBox::contains(std::span<const double> x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] >= lower[i] - tol && x[i] <= upper[i] + tol)) return false;
  return true;
}

StrategySpace StrategySpace::parametric(std::string factory_id, ParameterBox box, UnitaryFactory factory) {
  if (box.lower.size() != box.upper.size()) throw PreconditionError("parameter box: bound lengths differ");
  for (std::size_t i = 0; i < box.size(); ++i)
    if (!std::isfinite(box.lower[i]) || !std::isfinite(box.upper[i]) || box.lower[i] > box.upper[i])
      throw PreconditionError("parameter box: bounds must be finite and ordered");
  StrategySpace s;
  s.kind_ = Kind::UnitaryParametric;
  s.factory_id_ = std::move(factory_id);
  s.box_ = std::move(box);
  s.factory_ = std::move(factory);
  std::vector<double> mid(s.box_.size());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (s.box_.lower[i] + s.box_.upper[i]);
  s.dim_ = s.factory_(mid).rows();
  return s;
}

StrategySpace StrategySpace::full_unitary(std::size_t dim) {
  if (dim != 2) throw PreconditionError("full_unitary: only qubit spaces have a finite parametrization here");
  const double pi = std::numbers::pi;
  StrategySpace s = parametric("su2", {{0.0, -pi, -pi}, {pi / 2, pi, pi}},
                               [](std::span<const double> x) { return su2(x[0], x[1], x[2]); });
  s.kind_ = Kind::FullUnitary;
  return s;
}

StrategySpace StrategySpace::channel(std::size_t dim) {
  StrategySpace s;
  s.kind_ = Kind::Channel;
  s.dim_ = dim;
  return s;
}

StrategySpace StrategySpace::mixture(std::vector<std::string> names, std::vector<ComplexMatrix> unitaries) {
  if (unitaries.empty()) throw PreconditionError("mixture space: empty unitary set");
  if (names.size() != unitaries.size()) throw PreconditionError("mixture space: name count differs from set size");
  for (const auto& u : unitaries)
    if (!is_unitary(u) || u.rows() != unitaries.front().rows())
      throw PreconditionError("mixture space: members must be unitaries of equal size");
  StrategySpace s;
  s.kind_ = Kind::ClassicalMixture;
  s.dim_ = unitaries.front().rows();
  s.names_ = std::move(names);
  s.set_ = std::move(unitaries);
  return s;
}

StrategySpace StrategySpace::trivial(std::size_t dim) {
  return parametric("identity", {}, [dim](std::span<const double>) { return ComplexMatrix::identity(dim); });
}

ComplexMatrix StrategySpace::unitary(std::span<const double> params) const {
  if (!factory_) throw PreconditionError("strategy space has no unitary parametrization");
  if (params.size() != box_.size())
    throw PreconditionError("expected " + std::to_string(box_.size()) + " parameters, got " + std::to_string(params.size()));
  return factory_(params);
}

const char* to_string(StrategySpace::Kind kind) {
  switch (kind) {
    case StrategySpace::Kind::UnitaryParametric: return "unitary-parametric";
    case StrategySpace::Kind::FullUnitary: return "full-unitary";
    case StrategySpace::Kind::Channel: return "channel";
    case StrategySpace::Kind::ClassicalMixture: return "classical-mixture";
  }
  return "unknown";
}

QuantumGameSpec::QuantumGameSpec(std::vector<std::size_t> player_dims, DensityMatrix initial_state, POVM povm,
                                 std::vector<PayoffMap> payoffs, std::vector<StrategySpace> spaces)
    : player_dims_(std::move(player_dims)),
      initial_state_(std::move(initial_state)),
      povm_(std::move(povm)),
      payoffs_(std::move(payoffs)),
      spaces_(std::move(spaces)) {
  validate();
}

QuantumGameSpec::QuantumGameSpec(std::vector<std::size_t> player_dims, const PureState& initial_state, POVM povm,
                                 std::vector<PayoffMap> payoffs, std::vector<StrategySpace> spaces)
    : QuantumGameSpec(std::move(player_dims), density_from_pure(initial_state), std::move(povm), std::move(payoffs),
                      std::move(spaces)) {
  initial_pure_ = initial_state;
}

void QuantumGameSpec::validate() {
  const std::size_t total =
      std::accumulate(player_dims_.begin(), player_dims_.end(), std::size_t{1}, std::multiplies<>());
  if (player_dims_.empty()) throw PreconditionError("game spec: no players");
  if (initial_state_.dimension() != total)
    throw DimensionError("game spec: initial state dimension " + std::to_string(initial_state_.dimension()) +
                         " differs from the product of player dimensions " + std::to_string(total));
  if (povm_.dimension() != total) throw DimensionError("game spec: POVM dimension differs from the state");
  if (payoffs_.size() != player_dims_.size() || spaces_.size() != player_dims_.size())
    throw PreconditionError("game spec: need one payoff map and one strategy space per player");
  payoff_vectors_.clear();
  for (std::size_t j = 0; j < payoffs_.size(); ++j) {
    if (spaces_[j].dim() != player_dims_[j])
      throw DimensionError("game spec: strategy space of player " + std::to_string(j) + " has the wrong dimension");
    std::vector<double> v;
    for (const auto& label : povm_.labels()) {
      const auto it = payoffs_[j].find(label);
      if (it == payoffs_[j].end())
        throw PreconditionError("game spec: player " + std::to_string(j) + " has no payoff for outcome '" + label + "'");
      v.push_back(it->second);
    }
    payoff_vectors_.push_back(std::move(v));
  }
}

void check_profile(const QuantumGameSpec& spec, const StrategyProfile& profile) {
  if (profile.size() != spec.player_count())
    throw PreconditionError("profile has " + std::to_string(profile.size()) + " strategies for " +
                            std::to_string(spec.player_count()) + " players");
  for (std::size_t j = 0; j < profile.size(); ++j) {
    const auto& space = spec.spaces()[j];
    const std::string who = "player " + std::to_string(j);
    switch (space.kind()) {
      case StrategySpace::Kind::UnitaryParametric:
      case StrategySpace::Kind::FullUnitary: {
        const auto* pt = std::get_if<ParameterPoint>(&profile[j]);
        if (!pt) throw PreconditionError(who + ": expected a parameter point");
        if (!space.box().contains(pt->values)) throw PreconditionError(who + ": parameters outside the strategy box");
        break;
      }
      case StrategySpace::Kind::Channel: {
        const auto* ch = std::get_if<KrausChannel>(&profile[j]);
        if (!ch) throw PreconditionError(who + ": expected a channel");
        if (ch->input_dim() != space.dim() || ch->output_dim() != space.dim() || !ch->is_trace_preserving())
          throw PreconditionError(who + ": channel must be trace preserving on the player's space");
        break;
      }
      case StrategySpace::Kind::ClassicalMixture: {
        const auto* w = std::get_if<MixtureWeights>(&profile[j]);
        if (!w) throw PreconditionError(who + ": expected mixture weights");
        check_simplex(w->weights, space.mixture_set().size(), who);
        break;
      }
    }
  }
}

OutcomeDistribution outcome_distribution(const QuantumGameSpec& spec, const StrategyProfile& profile) {
  check_profile(spec, profile);
  return {spec.povm().labels(), distribution_unchecked(spec, profile)};
}

std::vector<double> evaluate(const QuantumGameSpec& spec, const StrategyProfile& profile) {
  check_profile(spec, profile);
  const auto probs = distribution_unchecked(spec, profile);
  std::vector<double> out(spec.player_count(), 0.0);
  for (std::size_t j = 0; j < out.size(); ++j)
    for (std::size_t k = 0; k < probs.size(); ++k) out[j] += spec.payoff_vector(j)[k] * probs[k];
  return out;
}

std::size_t default_grid(std::size_t parameter_count) { return parameter_count <= 2 ? 60 : 24; }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) v[0] = lo;
  for (std::size_t i = 0; i < n && n > 1; ++i)
    v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

BestResponse best_response(const QuantumGameSpec& spec, const StrategyProfile& profile, std::size_t player,
                           const SearchOptions& options) {
  if (player >= spec.player_count()) throw PreconditionError("best_response: player index out of range");
  check_profile(spec, profile);
  const auto& space = spec.spaces()[player];
  if (space.kind() == StrategySpace::Kind::Channel)
    throw UnsupportedSearchError("best_response: channel strategy spaces have no finite parametrization");

  BestResponse out{profile[player], 0.0, player_payoff(spec, profile, player), 0.0, 1};
  StrategyProfile trial = profile;
  auto payoff_of = [&](Strategy s) {
    trial[player] = std::move(s);
    ++out.evaluations;
    return player_payoff(spec, trial, player);
  };

  bool found = false;
  Strategy best;
  double best_payoff = 0.0;
  auto consider = [&](Strategy s) {
    const double v = payoff_of(s);
    if (!found || v > best_payoff + kTieEpsilon) {
      found = true;
      best = std::move(s);
      best_payoff = v;
    }
  };

  if (space.kind() == StrategySpace::Kind::ClassicalMixture) {
    // The payoff is affine in the player's own weights, so the grid (which
    // contains every vertex) already holds a maximizer.
    const std::size_t n = options.points_per_axis ? options.points_per_axis : default_grid(1);
    std::vector<std::vector<double>> grid;
    simplex_grid(space.mixture_set().size(), n > 0 ? n - 1 : 0, grid);
    for (auto& w : grid) consider(MixtureWeights{std::move(w)});
  } else {
    const auto& box = space.box();
    const std::size_t k = box.size();
    const std::size_t n = options.points_per_axis ? options.points_per_axis : default_grid(k);
    std::vector<std::vector<double>> axes(k);
    for (std::size_t i = 0; i < k; ++i)
      axes[i] = box.lower[i] == box.upper[i] ? std::vector<double>{box.lower[i]} : linspace(box.lower[i], box.upper[i], n);
    std::vector<std::size_t> idx(k, 0);
    std::vector<double> x(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) x[i] = axes[i][idx[i]];
      consider(ParameterPoint{x});
      std::size_t i = k;
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < axes[i].size()) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) break;
    }

    if (options.refine && k > 0) {
      std::vector<double> pt = std::get<ParameterPoint>(best).values;
      std::vector<double> h(k);
      for (std::size_t i = 0; i < k; ++i) h[i] = axes[i].size() > 1 ? axes[i][1] - axes[i][0] : 0.0;
      // Coordinate sweeps, each a golden-section search within one grid
      // spacing, repeated until a sweep stops improving.
      for (int sweep = 0; sweep < 200; ++sweep) {
        const double before = best_payoff;
        for (std::size_t i = 0; i < k; ++i) {
          if (h[i] == 0.0) continue;
          const double lo = std::max(box.lower[i], pt[i] - h[i]), hi = std::min(box.upper[i], pt[i] + h[i]);
          auto f = [&](double t) {
            std::vector<double> y = pt;
            y[i] = t;
            return payoff_of(ParameterPoint{std::move(y)});
          };
          const auto [t, v] = golden_max(f, lo, hi, 48);
          if (v > best_payoff) {
            pt[i] = t;
            best_payoff = v;
          }
        }
        if (best_payoff - before < 1e-14) break;
      }
      best = ParameterPoint{pt};
    }
  }

  if (best_payoff > out.current_payoff) {
    out.strategy = std::move(best);
    out.payoff = best_payoff;
  } else {
    out.payoff = out.current_payoff;
  }
  out.gain = out.payoff - out.current_payoff;
  return out;
}

EquilibriumReport verify_epsilon_nash(const QuantumGameSpec& spec, const StrategyProfile& profile,
                                      const SearchOptions& options, double threshold) {
  EquilibriumReport r;
  r.profile = profile;
  r.payoffs = evaluate(spec, profile);
  r.threshold = threshold;
  r.method = options.refine ? "grid+coordinate-descent" : "grid";
  for (std::size_t j = 0; j < spec.player_count(); ++j) {
    auto br = best_response(spec, profile, j, options);
    r.gains.push_back(br.gain);
    r.epsilon = std::max(r.epsilon, br.gain);
    const auto& space = spec.spaces()[j];
    const std::size_t params =
        space.kind() == StrategySpace::Kind::ClassicalMixture ? 1 : space.box().size();
    r.grid_resolution.push_back(params == 0 ? 1 : (options.points_per_axis ? options.points_per_axis : default_grid(params)));
    r.deviations.push_back(std::move(br));
  }
  r.is_epsilon_nash = r.epsilon <= threshold;
  return r;
}

EquilibriumReport search_equilibrium(const QuantumGameSpec& spec, StrategyProfile start, const SearchOptions& options,
                                     double threshold, std::size_t max_rounds) {
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool moved = false;
    for (std::size_t j = 0; j < spec.player_count(); ++j) {
      auto br = best_response(spec, start, j, options);
      if (br.gain > threshold) {
        start[j] = br.strategy;
        moved = true;
      }
    }
    if (!moved) break;
  }
  auto report = verify_epsilon_nash(spec, start, options, threshold);
  report.method = "iterated-best-response+" + report.method;
  return report;
}

std::optional<MixedEquilibrium> mixed_equilibrium_2x2(const Table2x2& alpha, const Table2x2& beta) {
  const double dp = beta[0][0] - beta[1][0] - beta[0][1] + beta[1][1];
  const double dq = alpha[0][0] - alpha[0][1] - alpha[1][0] + alpha[1][1];
  if (std::abs(dp) < 1e-12 || std::abs(dq) < 1e-12) return std::nullopt;
  const double p = (beta[1][1] - beta[1][0]) / dp;
  const double q = (alpha[1][1] - alpha[0][1]) / dq;
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) return std::nullopt;
  const auto pay = mixed_payoffs_2x2(alpha, beta, p, q);
  return MixedEquilibrium{p, q, pay[0], pay[1]};
}

std::array<double, 2> mixed_payoffs_2x2(const Table2x2& alpha, const Table2x2& beta, double p, double q) {
  const double w[2][2] = {{p * q, p * (1 - q)}, {(1 - p) * q, (1 - p) * (1 - q)}};
  std::array<double, 2> out{0.0, 0.0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out[0] += w[i][j] * alpha[i][j];
      out[1] += w[i][j] * beta[i][j];
    }
  return out;
}

std::vector<std::array<std::size_t, 2>> pure_equilibria_2x2(const Table2x2& alpha, const Table2x2& beta) {
  std::vector<std::array<std::size_t, 2>> out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (alpha[i][j] >= alpha[1 - i][j] && beta[i][j] >= beta[i][1 - j]) out.push_back({i, j});
  return out;
}

DensityMatrix sample_mixed_unitary(const std::vector<double>& weights, const std::vector<ComplexMatrix>& unitaries,
                                   const DensityMatrix& rho) {
  check_simplex(weights, unitaries.size(), "sample_mixed_unitary");
  ComplexMatrix out(rho.dimension(), rho.dimension());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!is_unitary(unitaries[k]) || unitaries[k].rows() != rho.dimension())
      throw PreconditionError("sample_mixed_unitary: members must be unitaries on the state space");
    out += Complex(weights[k]) * (unitaries[k] * rho.matrix() * unitaries[k].adjoint());
  }
  return DensityMatrix(std::move(out), rho.dims());
}

DensityMatrix haar_twirl(const DensityMatrix& rho, std::size_t samples, std::uint64_t seed) {
  if (rho.dimension() != 2) throw DimensionError("haar_twirl: qubit states only");
  if (samples == 0) throw PreconditionError("haar_twirl: need at least one sample");
  ComplexMatrix out(2, 2);
  for (std::size_t k = 0; k < samples; ++k) {
    const ComplexMatrix u = haar_random_su2(seed + k);
    out += u * rho.matrix() * u.adjoint();
  }
  return DensityMatrix(Complex(1.0 / static_cast<double>(samples)) * out, rho.dims());
}

}  // namespace qgames
