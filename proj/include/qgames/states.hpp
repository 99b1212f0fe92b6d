#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qgames/linalg.hpp"

namespace qgames {

// Schmidt coefficients and eigenvalues above this count as nonzero.
inline constexpr double kRankThreshold = 1e-7;

class PureState {
 public:
  // dims defaults to a single factor of size amplitudes.size().
  // Throws PreconditionError unless the vector is normalized within tol.
  explicit PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> dims = {},
                     double tol = kDefaultTolerance);

  static PureState basis(std::vector<std::size_t> dims, std::size_t index);

  const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  std::vector<Complex> amplitudes_;
  std::vector<std::size_t> dims_;
};

class DensityMatrix {
 public:
  // Throws PreconditionError unless Hermitian, PSD and trace one within tol.
  explicit DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims = {},
                         double tol = kDefaultTolerance);

  static DensityMatrix maximally_mixed(std::size_t n);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

struct StokesVector {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

struct SchmidtForm {
  std::vector<double> coefficients;  // descending, all min(n, m) of them
  std::vector<PureState> left_basis;
  std::vector<PureState> right_basis;

  std::size_t rank(double threshold = kRankThreshold) const;
};

PureState tensor_product(const PureState& a, const PureState& b);
PureState apply(const ComplexMatrix& u, const PureState& psi, double tol = kDefaultTolerance);

DensityMatrix density_from_pure(const PureState& psi);

StokesVector stokes(const DensityMatrix& rho);
DensityMatrix density_from_stokes(const StokesVector& x);

double entropy(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);

SchmidtForm schmidt(const PureState& psi, std::size_t n, std::size_t m);
bool is_entangled(const PureState& psi, std::size_t n, std::size_t m);
bool is_product_two_qubit(const PureState& psi, double tol = kDefaultTolerance);

// (e0, e1): eigenvectors of spin_along(beta, phi) for +1 and -1.
std::pair<PureState, PureState> qubit_basis(double beta, double phi);
ComplexMatrix spin_along(double beta, double phi);

// Phi+, Phi-, Psi+, Psi- in that order.
std::vector<PureState> bell_basis();
PureState singlet();

// ||(u (x) u) s - det(u) s|| for the singlet s.
double singlet_invariance_check(const ComplexMatrix& u, double tol = kDefaultTolerance);

// Pure state on H (x) C^r, r = rank(rho); ancilla is the right factor.
PureState purify(const DensityMatrix& rho);

double fidelity(const DensityMatrix& rho, const DensityMatrix& gamma);
// Experimental: min ||xi - eta|| over purifications, sqrt(2 - 2F).
double fidelity_distance(const DensityMatrix& rho, const DensityMatrix& gamma);

}  // namespace qgames
