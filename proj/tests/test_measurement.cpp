#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "qgames/channels.hpp"
#include "qgames/errors.hpp"
#include "qgames/measurement.hpp"
#include "support.hpp"

using namespace qgames;
namespace t = qgames::testing;

namespace {

double sum_defect(const POVM& m) {
  ComplexMatrix s(m.dimension(), m.dimension());
  for (const auto& e : m.effects()) s += e;
  return max_abs_diff(s, ComplexMatrix::identity(m.dimension()));
}

double total(const OutcomeDistribution& d) {
  double s = 0.0;
  for (double p : d.probabilities) s += p;
  return s;
}

}  // namespace

TEST_CASE("povm validation") {
  const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}}, p1{{0.0, 0.0}, {0.0, 1.0}};
  CHECK_NOTHROW(POVM({"a", "b"}, {p0, p1}));
  CHECK_THROWS_AS(POVM({"a"}, {p0}), PreconditionError);
  CHECK_THROWS_AS(POVM({"a", "a"}, {p0, p1}), PreconditionError);
  CHECK_THROWS_AS(POVM({"a", "b"}, {pauli::z() + p1, p1 - pauli::z()}), PreconditionError);
  CHECK_THROWS_AS(Observable(kI * pauli::x()), PreconditionError);

  // Unsharp qubit POVM: not projective but valid.
  const POVM trine({"0", "1", "2"}, [] {
    std::vector<ComplexMatrix> e;
    for (int k = 0; k < 3; ++k) {
      const double a = 2 * std::numbers::pi * k / 3;
      const std::vector<Complex> v{std::cos(a / 2), std::sin(a / 2)};
      e.push_back(Complex(2.0 / 3) * ComplexMatrix::outer(v, v));
    }
    return e;
  }());
  CHECK_FALSE(trine.is_projective());
  CHECK(sum_defect(trine) < 1e-10);
}

TEST_CASE("pvm from observable") {
  const auto z = pvm_from_observable(Observable(pauli::z()));
  REQUIRE(z.size() == 2);
  CHECK(z.labels() == std::vector<std::string>{"1", "-1"});
  CHECK(max_abs_diff(z.effects()[0], ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}) < 1e-12);

  const auto id = pvm_from_observable(Observable(ComplexMatrix::identity(3)));
  CHECK(id.size() == 1);
  CHECK(max_abs_diff(id.effects()[0], ComplexMatrix::identity(3)) < 1e-12);

  // Near-degenerate eigenvalues within the relative gap merge.
  const auto merged = pvm_from_observable(Observable(ComplexMatrix::diagonal(std::vector<Complex>{2.0, 2.0 + 1e-9, -1.0})));
  CHECK(merged.size() == 2);

  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> beta(0.0, std::numbers::pi), phi(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    const double b = beta(rng), f = phi(rng);
    const auto m = pvm_from_observable(Observable(spin_along(b, f)));
    const auto [e0, e1] = qubit_basis(b, f);
    REQUIRE(m.size() == 2);
    CHECK(max_abs_diff(m.effects()[0], ComplexMatrix::outer(e0.amplitudes(), e0.amplitudes())) < 1e-10);
    CHECK(max_abs_diff(m.effects()[1], ComplexMatrix::outer(e1.amplitudes(), e1.amplitudes())) < 1e-10);
  }

  for (int trial = 0; trial < 20; ++trial) {
    const auto m = pvm_from_observable(Observable(t::random_hermitian(rng, 1 + trial % 5)));
    CHECK(m.is_projective());
    CHECK(sum_defect(m) < 1e-10);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        const auto prod = m.effects()[i] * m.effects()[j];
        CHECK(max_abs_diff(prod, i == j ? m.effects()[i] : ComplexMatrix(m.dimension(), m.dimension())) < 1e-9);
      }
  }
}

TEST_CASE("outcome probabilities") {
  std::mt19937_64 rng(21);
  const DensityMatrix rho(t::random_density(rng, 2));
  const auto d = probabilities(rho, computational_povm({2}));
  CHECK(d.probabilities[0] == doctest::Approx(rho.matrix()(0, 0).real()));
  CHECK(d.probabilities[1] == doctest::Approx(rho.matrix()(1, 1).real()));

  const auto a = t::random_density(rng, 2), b = t::random_density(rng, 3);
  const auto prod = probabilities(DensityMatrix(tensor_product(a, b), {2, 3}), computational_povm({2, 3}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(prod.probability(std::to_string(i) + std::to_string(j)) ==
            doctest::Approx((a(i, i) * b(j, j)).real()).epsilon(1e-12));

  const PureState psi(t::random_unit_vector(rng, 6), {3, 2});
  const auto pd = probabilities(psi, computational_povm({3, 2}));
  const auto rd = probabilities(density_from_pure(psi), computational_povm({3, 2}));
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(pd.probabilities[k] == doctest::Approx(std::norm(psi[k])));
    CHECK(std::abs(pd.probabilities[k] - rd.probabilities[k]) < 1e-12);
  }
  CHECK_THROWS_AS(probabilities(rho, computational_povm({3})), DimensionError);

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const DensityMatrix r(t::random_density(rng, n));
    CHECK(std::abs(total(probabilities(r, pvm_from_observable(Observable(t::random_hermitian(rng, n))))) - 1.0) < 1e-10);
  }
}

TEST_CASE("labels for multi-index outcomes") {
  CHECK(basis_label(5, {2, 2, 2}) == "101");
  CHECK(basis_label(3, {2, 3}) == "10");
  CHECK(basis_label(11, {12}) == "11");
  CHECK(basis_label(13, {12, 2}) == "6,1");
}

TEST_CASE("collapse") {
  const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}}, p1{{0.0, 0.0}, {0.0, 1.0}};
  const auto c = collapse(DensityMatrix(p0), p0);
  CHECK(c.probability == doctest::Approx(1.0));
  CHECK(max_abs_diff(c.state.matrix(), p0) < 1e-15);
  const auto m = collapse(DensityMatrix::maximally_mixed(2), p1);
  CHECK(m.probability == doctest::Approx(0.5));
  CHECK(max_abs_diff(m.state.matrix(), p1) < 1e-15);
  CHECK_THROWS_AS(collapse(DensityMatrix(p0), p1), UndefinedCollapseError);
  CHECK_THROWS_AS(collapse(DensityMatrix(p0), pauli::x()), PreconditionError);

  // EPR: filtering the first half of |00> + |11> along e0 leaves e0 (x) conj(e0).
  const auto bell = density_from_pure(bell_basis()[0]);
  for (double beta : {0.0, 0.4, 1.3, 2.9}) {
    const auto [e0, e1] = qubit_basis(beta, 0.0);
    const auto proj = embed(ComplexMatrix::outer(e0.amplitudes(), e0.amplitudes()), 0, {2, 2});
    const auto after = collapse(bell, proj);
    CHECK(after.probability == doctest::Approx(0.5));
    std::vector<Complex> conj0{std::conj(e0[0]), std::conj(e0[1])};
    const auto expect = tensor_product(std::span<const Complex>(e0.amplitudes()), std::span<const Complex>(conj0));
    CHECK(max_abs_diff(after.state.matrix(), ComplexMatrix::outer(expect, expect)) < 1e-12);
    CHECK(purity(after.state) == doctest::Approx(1.0));

    // Same filter on both halves: outcomes agree with probability one (real basis).
    const auto joint = tensor_product(pvm_from_observable(Observable(spin_along(beta, 0.0))).effects()[0],
                                      pvm_from_observable(Observable(spin_along(beta, 0.0))).effects()[1]);
    CHECK(std::abs((bell.matrix() * joint).trace()) < 1e-12);
  }
}

TEST_CASE("pinching") {
  std::mt19937_64 rng(22);
  const auto comp = computational_povm({2});
  const auto rho = t::random_density(rng, 2);
  const auto p = pinch(rho, comp);
  CHECK(p(0, 1) == Complex(0.0));
  CHECK(p(0, 0) == rho(0, 0));
  CHECK_THROWS_AS(pinch(rho, POVM({"a", "b"}, {Complex(0.5) * ComplexMatrix::identity(2), Complex(0.5) * ComplexMatrix::identity(2)})),
                  PreconditionError);

  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto m = pvm_from_observable(Observable(t::random_hermitian(rng, n)));
    const auto b = t::random_matrix(rng, n, n);
    const auto e = pinch(b, m);
    CHECK(max_abs_diff(pinch(e, m), e) < 1e-10);
    CHECK(max_abs_diff(pinch(b.adjoint(), m), e.adjoint()) < 1e-10);
    const auto r = t::random_density(rng, n);
    CHECK(is_psd(pinch(r, m), 1e-9));
    CHECK(std::abs(pinch(r, m).trace() - 1.0) < 1e-10);

    // X in the commutant: any function of the measured observable.
    ComplexMatrix x1(n, n), x2(n, n);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (const auto& proj : m.effects()) {
      x1 += Complex(c(rng), c(rng)) * proj;
      x2 += Complex(c(rng), c(rng)) * proj;
    }
    CHECK(max_abs_diff(pinch(x1, m), x1) < 1e-10);
    CHECK(max_abs_diff(pinch(x1 * b * x2, m), x1 * e * x2) < 1e-9);
  }
}

TEST_CASE("sampling") {
  const OutcomeDistribution point{{"H", "T"}, {1.0, 0.0}};
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(sample(point, s) == "H");

  const OutcomeDistribution fair{{"H", "T"}, {0.5, 0.5}};
  CHECK(sample(fair, 42) == sample(fair, 42));
  CHECK(sample_many(fair, 9, 50) == sample_many(fair, 9, 50));

  const OutcomeDistribution skew{{"a", "b"}, {0.25, 0.75}};
  std::map<std::string, int> counts;
  const int n = 100000;
  for (const auto& l : sample_many(skew, 123, n)) ++counts[l];
  CHECK(std::abs(counts["a"] / double(n) - 0.25) < 0.01);
  CHECK(std::abs(counts["b"] / double(n) - 0.75) < 0.01);
}
