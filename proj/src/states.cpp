#include "qgames/states.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qgames/errors.hpp"

namespace qgames {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> resolve_dims(std::vector<std::size_t> dims, std::size_t total) {
  if (dims.empty()) return {total};
  if (product(dims) != total)
    throw DimensionError("factor dimensions multiply to " + std::to_string(product(dims)) +
                         ", expected " + std::to_string(total));
  return dims;
}

// Multiply by a unit phase so the first entry above 1e-12 is real non-negative.
Complex canonical_phase(const std::vector<Complex>& v) {
  for (const auto& z : v)
    if (std::abs(z) > 1e-12) return std::conj(z) / std::abs(z);
  return 1.0;
}

void rephase(std::vector<Complex>& v, Complex phase) {
  for (auto& z : v) z *= phase;
}

// Columns sqrt(lambda_j) v_j: the amplitude matrix of a purification with a
// d-dimensional ancilla.
ComplexMatrix purification_matrix(const DensityMatrix& rho) {
  const auto eig = hermitian_eig(rho.matrix());
  const std::size_t d = rho.dimension();
  ComplexMatrix x(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double s = std::sqrt(std::max(eig.eigenvalues[j], 0.0));
    for (std::size_t i = 0; i < d; ++i) x(i, j) = eig.eigenvectors(i, j) * s;
  }
  return x;
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> dims, double tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw PreconditionError("PureState: empty amplitude vector");
  dims_ = resolve_dims(std::move(dims), amplitudes_.size());
  const double n = norm(amplitudes_);
  if (!std::isfinite(n) || std::abs(n * n - 1.0) > tol)
    throw PreconditionError("PureState: squared norm " + std::to_string(n * n) + " is not 1");
}

PureState PureState::basis(std::vector<std::size_t> dims, std::size_t index) {
  const std::size_t total = product(dims);
  if (index >= total) throw DimensionError("basis index out of range");
  std::vector<Complex> v(total);
  v[index] = 1.0;
  return PureState(std::move(v), std::move(dims));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims, double tol)
    : matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || matrix_.rows() == 0)
    throw PreconditionError("DensityMatrix: matrix must be square and non-empty");
  dims_ = resolve_dims(std::move(dims), matrix_.rows());
  if (!is_hermitian(matrix_, tol)) throw PreconditionError("DensityMatrix: not Hermitian");
  if (std::abs(matrix_.trace() - 1.0) > tol)
    throw PreconditionError("DensityMatrix: trace " + std::to_string(matrix_.trace().real()) + " is not 1");
  const auto eig = hermitian_eig(matrix_, tol);
  if (eig.eigenvalues.back() < -tol)
    throw PreconditionError("DensityMatrix: negative eigenvalue " + std::to_string(eig.eigenvalues.back()));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  return DensityMatrix(Complex(1.0 / static_cast<double>(n)) * ComplexMatrix::identity(n));
}

std::size_t SchmidtForm::rank(double threshold) const {
  std::size_t r = 0;
  for (double c : coefficients)
    if (c > threshold) ++r;
  return r;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return PureState(tensor_product(std::span<const Complex>(a.amplitudes()), std::span<const Complex>(b.amplitudes())),
                   std::move(dims));
}

PureState apply(const ComplexMatrix& u, const PureState& psi, double tol) {
  return PureState(u * std::span<const Complex>(psi.amplitudes()), psi.dims(), tol);
}

DensityMatrix density_from_pure(const PureState& psi) {
  return DensityMatrix(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()), psi.dims());
}

StokesVector stokes(const DensityMatrix& rho) {
  if (rho.dimension() != 2) throw DimensionError("stokes: expected a qubit density matrix");
  const auto& m = rho.matrix();
  return {(m * pauli::x()).trace().real(), (m * pauli::y()).trace().real(), (m * pauli::z()).trace().real()};
}

DensityMatrix density_from_stokes(const StokesVector& x) {
  ComplexMatrix m = pauli::identity() + Complex(x.x1) * pauli::x() + Complex(x.x2) * pauli::y() +
                    Complex(x.x3) * pauli::z();
  return DensityMatrix(Complex(0.5) * m);
}

double entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : hermitian_eig(rho.matrix()).eigenvalues)
    if (l > 0.0) s -= l * std::log(l);
  return std::max(s, 0.0);
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

SchmidtForm schmidt(const PureState& psi, std::size_t n, std::size_t m) {
  if (psi.dimension() != n * m)
    throw DimensionError("schmidt: " + std::to_string(psi.dimension()) + " amplitudes cannot split as " +
                         std::to_string(n) + "x" + std::to_string(m));
  const ComplexMatrix c(n, m, psi.amplitudes());
  const auto d = svd(c);
  SchmidtForm out;
  out.coefficients = d.singulars;
  for (std::size_t j = 0; j < d.singulars.size(); ++j) {
    // psi = sum_j s_j U[:,j] (x) V[:,j] in the A = U D V^T convention.
    auto xi = d.u.column_vector(j);
    auto eta = d.v.column_vector(j);
    const Complex phase = canonical_phase(xi);
    rephase(xi, phase);
    rephase(eta, std::conj(phase));
    out.left_basis.emplace_back(std::move(xi));
    out.right_basis.emplace_back(std::move(eta));
  }
  return out;
}

bool is_entangled(const PureState& psi, std::size_t n, std::size_t m) {
  return schmidt(psi, n, m).rank() > 1;
}

bool is_product_two_qubit(const PureState& psi, double tol) {
  if (psi.dimension() != 4) throw DimensionError("is_product_two_qubit: expected 4 amplitudes");
  return std::abs(psi[0] * psi[3] - psi[2] * psi[1]) <= tol;
}

std::pair<PureState, PureState> qubit_basis(double beta, double phi) {
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  const Complex e = std::polar(1.0, phi);
  return {PureState({c, s * e}), PureState({-s * std::conj(e), c})};
}

ComplexMatrix spin_along(double beta, double phi) {
  return Complex(std::sin(beta) * std::cos(phi)) * pauli::x() + Complex(std::sin(beta) * std::sin(phi)) * pauli::y() +
         Complex(std::cos(beta)) * pauli::z();
}

std::vector<PureState> bell_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  return {PureState({r, 0, 0, r}, {2, 2}), PureState({r, 0, 0, -r}, {2, 2}), PureState({0, r, r, 0}, {2, 2}),
          PureState({0, r, -r, 0}, {2, 2})};
}

PureState singlet() { return bell_basis()[3]; }

double singlet_invariance_check(const ComplexMatrix& u, double tol) {
  if (u.rows() != 2 || !is_unitary(u, tol)) throw PreconditionError("singlet_invariance_check: u must be a 2x2 unitary");
  const auto s = singlet().amplitudes();
  auto moved = tensor_product(u, u) * std::span<const Complex>(s);
  const Complex det = determinant(u);
  for (std::size_t i = 0; i < 4; ++i) moved[i] -= det * s[i];
  return norm(moved);
}

PureState purify(const DensityMatrix& rho) {
  const auto eig = hermitian_eig(rho.matrix());
  const std::size_t d = rho.dimension();
  std::size_t r = 0;
  for (double l : eig.eigenvalues)
    if (l > kRankThreshold) ++r;
  std::vector<Complex> psi(d * r);
  double kept = 0.0;
  for (std::size_t j = 0; j < r; ++j) kept += eig.eigenvalues[j];
  // Renormalize over the kept spectrum so sub-threshold weight does not break the norm.
  for (std::size_t j = 0; j < r; ++j) {
    const double s = std::sqrt(eig.eigenvalues[j] / kept);
    for (std::size_t i = 0; i < d; ++i) psi[i * r + j] = eig.eigenvectors(i, j) * s;
  }
  rephase(psi, canonical_phase(psi));
  std::vector<std::size_t> dims = rho.dims();
  dims.push_back(r);
  return PureState(std::move(psi), std::move(dims));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& gamma) {
  if (rho.dimension() != gamma.dimension()) throw DimensionError("fidelity: dimension mismatch");
  // With purifications X, Y (system rows, ancilla columns) the overlap under an
  // ancilla unitary U is tr(U M^T), M = X* Y. Aligning U with the polar factor
  // of M attains the maximum, the sum of singular values, in a single step.
  const ComplexMatrix x = purification_matrix(rho);
  const ComplexMatrix y = purification_matrix(gamma);
  const auto d = svd(x.adjoint() * y);
  double f = 0.0;
  for (double s : d.singulars) f += s;
  return std::min(f, 1.0);
}

double fidelity_distance(const DensityMatrix& rho, const DensityMatrix& gamma) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * fidelity(rho, gamma)));
}

}  // namespace qgames
