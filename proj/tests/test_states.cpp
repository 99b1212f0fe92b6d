#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "qgames/errors.hpp"
#include "qgames/states.hpp"
#include "qgames/unitaries.hpp"
#include "support.hpp"

using namespace qgames;
namespace t = qgames::testing;

namespace {

// Trace over the second factor of an (n*m)-dimensional operator.
ComplexMatrix trace_out_second(const ComplexMatrix& a, std::size_t n, std::size_t m) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k) out(i, j) += a(i * m + k, j * m + k);
  return out;
}

ComplexMatrix projector(const std::vector<Complex>& v) { return ComplexMatrix::outer(v, v); }

}  // namespace

TEST_CASE("state constructors validate") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0, 0.0}, {2, 3}), DimensionError);
  CHECK_THROWS_AS(DensityMatrix(pauli::z()), PreconditionError);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{2.0, 0.0}, {0.0, -1.0}}), PreconditionError);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{0.5, 0.5}, {0.0, 0.5}}), PreconditionError);
  CHECK(DensityMatrix::maximally_mixed(3).matrix()(1, 1) == Complex(1.0 / 3));
  CHECK(PureState::basis({2, 2}, 3).amplitudes() == std::vector<Complex>{0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("density from pure") {
  CHECK(density_from_pure(PureState({1.0, 0.0})).matrix() == ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  const double r = 1.0 / std::sqrt(2.0);
  const auto plus = density_from_pure(PureState({r, r})).matrix();
  for (auto z : plus.data()) CHECK(std::abs(z - 0.5) < 1e-15);

  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = density_from_pure(PureState(t::random_unit_vector(rng, 1 + trial % 5))).matrix();
    CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
    CHECK(max_abs_diff(rho * rho, rho) < 1e-10);
  }
}

TEST_CASE("stokes coordinates") {
  const auto zero = stokes(DensityMatrix::maximally_mixed(2));
  CHECK(std::abs(zero.x1) + std::abs(zero.x2) + std::abs(zero.x3) < 1e-15);
  const auto up = stokes(density_from_pure(PureState({1.0, 0.0})));
  CHECK(up.x3 == doctest::Approx(1.0));
  CHECK_THROWS_AS(stokes(DensityMatrix::maximally_mixed(3)), DimensionError);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pure = stokes(density_from_pure(PureState(t::random_unit_vector(rng, 2))));
    CHECK(std::abs(pure.x1 * pure.x1 + pure.x2 * pure.x2 + pure.x3 * pure.x3 - 1.0) < 1e-10);

    const DensityMatrix rho(t::random_density(rng, 2));
    const auto x = stokes(rho);
    CHECK(x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3 <= 1 + 1e-12);
    // x_i = tr(rho sigma_i)
    CHECK(std::abs(x.x2 - (rho.matrix() * pauli::y()).trace().real()) < 1e-12);
    CHECK(max_abs_diff(density_from_stokes(x).matrix(), rho.matrix()) < 1e-10);
  }
  CHECK_THROWS_AS(density_from_stokes({1.0, 1.0, 0.0}), PreconditionError);
}

TEST_CASE("entropy and purity") {
  const auto pure = density_from_pure(PureState({0.6, Complex(0, 0.8)}));
  CHECK(std::abs(entropy(pure)) < 1e-12);
  CHECK(purity(pure) == doctest::Approx(1.0));
  const auto mixed = DensityMatrix::maximally_mixed(2);
  CHECK(entropy(mixed) == doctest::Approx(std::log(2.0)));
  CHECK(purity(mixed) == doctest::Approx(0.5));
  const DensityMatrix d(ComplexMatrix{{0.25, 0.0}, {0.0, 0.75}});
  CHECK(entropy(d) == doctest::Approx(-0.25 * std::log(0.25) - 0.75 * std::log(0.75)));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const DensityMatrix rho(t::random_density(rng, n));
    CHECK(entropy(rho) >= 0.0);
    CHECK(purity(rho) >= 1.0 / n - 1e-12);
    CHECK(purity(rho) <= 1.0 + 1e-12);
  }
}

TEST_CASE("schmidt decomposition") {
  const auto product = tensor_product(PureState({0.6, 0.8}), PureState({0.0, 1.0}));
  const auto ps = schmidt(product, 2, 2);
  CHECK(ps.coefficients[0] == doctest::Approx(1.0));
  CHECK(ps.rank() == 1);
  CHECK_FALSE(is_entangled(product, 2, 2));

  const auto bell = bell_basis()[0];
  const auto bs = schmidt(bell, 2, 2);
  CHECK(bs.coefficients[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(bs.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(is_entangled(bell, 2, 2));
  CHECK_THROWS_AS(schmidt(bell, 3, 2), DimensionError);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3, m = 1 + (trial / 3) % 4;
    const PureState psi(t::random_unit_vector(rng, n * m), {n, m});
    const auto s = schmidt(psi, n, m);
    std::vector<Complex> sum(n * m);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < s.coefficients.size(); ++j) {
      norm2 += s.coefficients[j] * s.coefficients[j];
      if (j) CHECK(s.coefficients[j - 1] >= s.coefficients[j]);
      const auto term = tensor_product(s.left_basis[j], s.right_basis[j]);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += s.coefficients[j] * term[i];
      for (std::size_t k = 0; k < j; ++k) {
        CHECK(std::abs(inner(s.left_basis[k].amplitudes(), s.left_basis[j].amplitudes())) < 1e-10);
        CHECK(std::abs(inner(s.right_basis[k].amplitudes(), s.right_basis[j].amplitudes())) < 1e-10);
      }
      // Measuring the first factor along xi_j leaves a product state.
      CHECK_FALSE(is_entangled(tensor_product(s.left_basis[j], s.right_basis[j]), n, m));
    }
    CHECK(std::abs(norm2 - 1.0) < 1e-10);
    CHECK(t::max_abs(sum, psi.amplitudes()) < 1e-10);

    // Swapping the factors keeps the coefficients.
    std::vector<Complex> swapped(n * m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < m; ++k) swapped[k * n + i] = psi[i * m + k];
    const auto s2 = schmidt(PureState(swapped, {m, n}), m, n);
    for (std::size_t j = 0; j < s.coefficients.size(); ++j) CHECK(std::abs(s.coefficients[j] - s2.coefficients[j]) < 1e-10);
  }
}

TEST_CASE("two-qubit product test agrees with schmidt rank") {
  CHECK(is_product_two_qubit(PureState::basis({2, 2}, 1)));
  for (const auto& b : bell_basis()) CHECK_FALSE(is_product_two_qubit(b));
  CHECK_THROWS_AS(is_product_two_qubit(PureState({1.0, 0.0})), DimensionError);

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const PureState u(t::random_unit_vector(rng, 2)), v(t::random_unit_vector(rng, 2));
    CHECK(is_product_two_qubit(tensor_product(u, v)));
    const PureState w(t::random_unit_vector(rng, 4), {2, 2});
    CHECK(is_product_two_qubit(w) == !is_entangled(w, 2, 2));
  }
}

TEST_CASE("qubit bases and spin directions") {
  const auto [e0, e1] = qubit_basis(0.0, 0.0);
  CHECK(e0.amplitudes() == std::vector<Complex>{1.0, 0.0});
  CHECK(e1.amplitudes() == std::vector<Complex>{0.0, 1.0});

  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> beta(0.0, std::numbers::pi), phi(0.0, 2 * std::numbers::pi);
  const double r = 1.0 / std::sqrt(2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double b = beta(rng), f = phi(rng);
    const auto [a0, a1] = qubit_basis(b, f);
    CHECK(std::abs(inner(a0.amplitudes(), a1.amplitudes())) < 1e-12);
    const ComplexMatrix s = Complex(std::sin(b) * std::cos(f)) * pauli::x() + Complex(std::sin(b) * std::sin(f)) * pauli::y() +
                            Complex(std::cos(b)) * pauli::z();
    CHECK(max_abs_diff(spin_along(b, f), s) < 1e-12);
    CHECK(t::max_abs(s * std::span<const Complex>(a0.amplitudes()), a0.amplitudes()) < 1e-12);
    const auto minus = s * std::span<const Complex>(a1.amplitudes());
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(minus[i] + a1[i]) < 1e-12);

    // (e0 (x) conj e0 + e1 (x) conj e1)/sqrt 2 does not depend on the basis.
    std::vector<Complex> sum(4);
    for (const auto* e : {&a0, &a1})
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) sum[2 * i + k] += r * (*e)[i] * std::conj((*e)[k]);
    CHECK(t::max_abs(sum, {r, 0.0, 0.0, r}) < 1e-10);
  }
}

TEST_CASE("singlet invariance") {
  CHECK(singlet_invariance_check(ComplexMatrix::identity(2)) == doctest::Approx(0.0));
  const double b = 0.7;
  const ComplexMatrix ez{{std::exp(Complex(0, b)), 0.0}, {0.0, std::exp(Complex(0, -b))}};
  CHECK(singlet_invariance_check(ez) <= 1e-12);
  // A U(2) element with det != 1 picks up det(u) exactly.
  CHECK(singlet_invariance_check(Complex(0, 1) * pauli::x()) <= 1e-12);
  CHECK_THROWS_AS(singlet_invariance_check(Complex(2.0) * pauli::x()), PreconditionError);

  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto u = haar_random_su2(seed);
    // direct 4x4 application oracle
    const auto s = singlet().amplitudes();
    const auto moved = t::kron(u, u) * std::span<const Complex>(s);
    worst = std::max(worst, t::max_abs(moved, s));
    worst = std::max(worst, singlet_invariance_check(u));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("purification") {
  const PureState psi({0.6, Complex(0, 0.8)});
  const auto pp = purify(density_from_pure(psi));
  CHECK(pp.dimension() == 2);
  CHECK(std::abs(std::abs(inner(pp.amplitudes(), psi.amplitudes())) - 1.0) < 1e-12);
  // first nonzero amplitude real and non-negative
  CHECK(std::abs(pp[0].imag()) < 1e-12);
  CHECK(pp[0].real() >= 0);

  const auto mixed = purify(DensityMatrix::maximally_mixed(2));
  CHECK(mixed.dimension() == 4);
  CHECK(schmidt(mixed, 2, 2).coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

  std::mt19937_64 rng(16);
  for (std::size_t n = 1; n <= 8; ++n) {
    const DensityMatrix rho(t::random_density(rng, n));
    const auto p = purify(rho);
    const std::size_t r = p.dimension() / n;
    CHECK(r == n);  // full rank almost surely
    CHECK(max_abs_diff(trace_out_second(projector(p.amplitudes()), n, r), rho.matrix()) < 1e-9);
  }
  // rank-deficient input gets a smaller ancilla
  const auto v = t::random_unit_vector(rng, 3), w = t::random_unit_vector(rng, 3);
  const DensityMatrix low(Complex(0.3) * projector(v) + Complex(0.7) * projector(w));
  const auto pl = purify(low);
  CHECK(pl.dimension() == 6);
  CHECK(max_abs_diff(trace_out_second(projector(pl.amplitudes()), 3, 2), low.matrix()) < 1e-10);
}

TEST_CASE("fidelity") {
  std::mt19937_64 rng(17);
  const DensityMatrix rho(t::random_density(rng, 3));
  CHECK(std::abs(fidelity(rho, rho) - 1.0) < 1e-9);
  const auto up = density_from_pure(PureState({1.0, 0.0})), down = density_from_pure(PureState({0.0, 1.0}));
  CHECK(std::abs(fidelity(up, down)) < 1e-12);
  CHECK_THROWS_AS(fidelity(up, rho), DimensionError);

  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix a(t::random_density(rng, 2)), b(t::random_density(rng, 2));
    const double f = fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    CHECK(std::abs(f - fidelity(b, a)) < 1e-10);

    // Brute force: fix the library's purifications (ancilla C^2) and scan
    // |<xi|(1 (x) U) eta>| over an equal-area Hopf grid of about 10^4 ancilla
    // SU(2) elements. -U gives the same modulus, so phi only needs [0, pi).
    const auto xi = purify(a).amplitudes(), eta = purify(b).amplitudes();
    const int nt = 16;
    const double step = (std::numbers::pi / 2) / nt;
    auto value = [&](double th, double ph, double ps) {
      const auto u = t::kron(ComplexMatrix::identity(2), su2(th, ph, ps));
      return std::abs(inner(xi, u * std::span<const Complex>(eta)));
    };
    double best = 0.0;
    std::array<double, 3> at{};
    int points = 0;
    for (int i = 0; i < nt; ++i) {
      const double th = step * (i + 0.5);
      const int nf = std::max(1, int(std::lround(std::numbers::pi * std::cos(th) / step)));
      const int ns = std::max(1, int(std::lround(2 * std::numbers::pi * std::sin(th) / step)));
      for (int j = 0; j < nf; ++j)
        for (int k = 0; k < ns; ++k, ++points) {
          const double ph = std::numbers::pi * j / nf, ps = 2 * std::numbers::pi * k / ns;
          if (const double v = value(th, ph, ps); v > best) best = v, at = {th, ph, ps};
        }
    }
    CHECK(points >= 9000);
    CHECK(points <= 11000);
    CHECK(best <= f + 1e-9);
    // Covering radius of the grid is about 0.085 rad, so the raw maximum can
    // sit up to ~d^2/2 below the optimum.
    CHECK(best >= f - 4e-3);

    // Compass search from the best grid point closes the gap.
    for (double h = step; h > 1e-9;) {
      bool moved = false;
      for (int c = 0; c < 3; ++c)
        for (double sgn : {-1.0, 1.0}) {
          auto x = at;
          x[c] += sgn * h;
          if (const double v = value(x[0], x[1], x[2]); v > best) best = v, at = x, moved = true;
        }
      if (!moved) h /= 2;
    }
    CHECK(best <= f + 1e-9);
    CHECK(best >= f - 1e-6);
  }

  // Pure states: F = |<u|v>|.
  const PureState u(t::random_unit_vector(rng, 3)), v(t::random_unit_vector(rng, 3));
  CHECK(fidelity(density_from_pure(u), density_from_pure(v)) ==
        doctest::Approx(std::abs(inner(u.amplitudes(), v.amplitudes()))));
  CHECK(fidelity_distance(rho, rho) < 1e-4);
}
