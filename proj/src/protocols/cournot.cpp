#include <algorithm>
#include <cmath>
#include <string>

#include "qgames/errors.hpp"
#include "qgames/protocols.hpp"

namespace qgames {

namespace {

double margin(const CournotConfig& cfg) { return cfg.a - cfg.c; }

void require_price_region(const CournotConfig& cfg, const std::array<double, 2>& q, const char* who) {
  const double total = q[0] + q[1];
  if (total > cfg.a + 1e-12)
    throw PreconditionError(std::string(who) + ": total quantity " + std::to_string(total) +
                            " exceeds the price intercept a");
}

}  // namespace

void validate(const CournotConfig& cfg) {
  if (!std::isfinite(cfg.a) || !std::isfinite(cfg.c) || !std::isfinite(cfg.gamma) || !std::isfinite(cfg.h))
    throw PreconditionError("cournot: parameters must be finite");
  if (!(cfg.c >= 0.0)) throw PreconditionError("cournot: cost c must be non-negative");
  if (!(cfg.a > cfg.c)) throw PreconditionError("cournot: need a > c");
  if (!(cfg.gamma >= 0.0)) throw PreconditionError("cournot: gamma must be non-negative");
  if (!(cfg.h > 0.0)) throw PreconditionError("cournot: h must be positive");
}

std::array<double, 2> cournot_quantities(const CournotConfig& cfg, double y1, double y2) {
  const double ch = std::cosh(cfg.gamma), sh = std::sinh(cfg.gamma);
  return {y1 * ch + y2 * sh, y1 * sh + y2 * ch};
}

std::array<double, 2> cournot_payoffs(const CournotConfig& cfg, double y1, double y2) {
  const auto q = cournot_quantities(cfg, y1, y2);
  const double price_margin = margin(cfg) - (q[0] + q[1]);
  return {q[0] * price_margin, q[1] * price_margin};
}

std::array<double, 2> cournot_gaussian_payoffs(const CournotConfig& cfg, double y1, double y2) {
  // Independent coordinates with means q_j and variance h/2:
  // E[x_j^2] = q_j^2 + h/2, E[x_1 x_2] = q_1 q_2.
  const auto q = cournot_quantities(cfg, y1, y2);
  const double second[2] = {q[0] * q[0] + cfg.h / 2, q[1] * q[1] + cfg.h / 2};
  const double cross = q[0] * q[1];
  return {margin(cfg) * q[0] - second[0] - cross, margin(cfg) * q[1] - second[1] - cross};
}

std::array<double, 2> cournot_gradient(const CournotConfig& cfg, double y1, double y2) {
  const double ch = std::cosh(cfg.gamma), eg = std::exp(cfg.gamma);
  const auto q = cournot_quantities(cfg, y1, y2);
  const double rest = margin(cfg) - eg * (y1 + y2);
  return {ch * rest - eg * q[0], ch * rest - eg * q[1]};
}

CournotSolution cournot_closed_form(const CournotConfig& cfg) {
  validate(cfg);
  const double y = margin(cfg) * std::cosh(cfg.gamma) / (1.0 + 2.0 * std::exp(2.0 * cfg.gamma));
  CournotSolution s;
  s.y_star = {y, y};
  s.quantities = cournot_quantities(cfg, y, y);
  require_price_region(cfg, s.quantities, "cournot");
  s.profit_star = cournot_payoffs(cfg, y, y);
  return s;
}

double cournot_grid_epsilon(const CournotConfig& cfg, std::array<double, 2> y, std::size_t points, double lo,
                            double hi) {
  validate(cfg);
  const auto base = cournot_payoffs(cfg, y[0], y[1]);
  double eps = 0.0;
  for (std::size_t j = 0; j < 2; ++j)
    for (double t : linspace(lo, hi, points)) {
      auto trial = y;
      trial[j] = t;
      eps = std::max(eps, cournot_payoffs(cfg, trial[0], trial[1])[j] - base[j]);
    }
  return eps;
}

double stackelberg_follower(const CournotConfig& cfg, double y1) {
  const double e2 = std::exp(2.0 * cfg.gamma);
  return (margin(cfg) * std::cosh(cfg.gamma) - y1 * e2) / (1.0 + e2);
}

StackelbergSolution stackelberg_solve(const CournotConfig& cfg) {
  validate(cfg);
  // The leader's payoff along the follower's reaction is quadratic in y1;
  // recover it from three samples and take the vertex.
  auto leader = [&](double y1) { return cournot_payoffs(cfg, y1, stackelberg_follower(cfg, y1))[0]; };
  const double s = margin(cfg);
  const double f0 = leader(0.0), fp = leader(s), fm = leader(-s);
  const double curvature = (fp + fm - 2.0 * f0) / (2.0 * s * s);
  const double slope = (fp - fm) / (2.0 * s);
  if (!(curvature < 0.0)) throw PreconditionError("stackelberg: leader payoff is not concave");
  StackelbergSolution out;
  out.y1_star = -slope / (2.0 * curvature);
  out.y2_star = stackelberg_follower(cfg, out.y1_star);
  require_price_region(cfg, cournot_quantities(cfg, out.y1_star, out.y2_star), "stackelberg");
  out.profits = cournot_payoffs(cfg, out.y1_star, out.y2_star);
  return out;
}

}  // namespace qgames
