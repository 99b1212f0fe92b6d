#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "qgames/linalg.hpp"
#include "qgames/states.hpp"

namespace qgames {

// T(X) = sum_k V_k X V_k*, each V_k of shape output_dim x input_dim.
class KrausChannel {
 public:
  // Throws PreconditionError if the operators are empty, ragged, or
  // sum V_k* V_k exceeds the identity.
  explicit KrausChannel(std::vector<ComplexMatrix> operators, double tol = kDefaultTolerance);

  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
  std::size_t input_dim() const noexcept { return ops_.front().cols(); }
  std::size_t output_dim() const noexcept { return ops_.front().rows(); }
  bool is_trace_preserving(double tol = kDefaultTolerance) const;

 private:
  std::vector<ComplexMatrix> ops_;
};

KrausChannel unitary_channel(const ComplexMatrix& u);
KrausChannel identity_channel(std::size_t n);
// second after first.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
// Independent action on each factor of a product space.
KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b);

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& x);
// Requires a trace-preserving channel.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// Trace out every factor except `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& a, std::size_t keep, const std::vector<std::size_t>& dims);
// Trace out the factors not listed in `keep` (kept in their original order).
ComplexMatrix reduce(const ComplexMatrix& a, const std::vector<std::size_t>& keep, const std::vector<std::size_t>& dims);
// E_rho(A) = tr_2[A (1 (x) rho)] for A on H (x) K and rho on K.
ComplexMatrix partial_expectation(const ComplexMatrix& a, const ComplexMatrix& rho);
// op acting on factor `factor` of the product space, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t factor, const std::vector<std::size_t>& dims);

// Entry ((j,l),(i,k)) = [T(|i><j|)]_{k,l}, rows indexed j*m + l; no 1/d factor.
struct ChoiMatrix {
  ComplexMatrix matrix;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
};

ChoiMatrix choi(const KrausChannel& ch);
ChoiMatrix choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& t, std::size_t n, std::size_t m);
bool is_cp(const ChoiMatrix& c, double tol = kDefaultTolerance);
// Throws PreconditionError if c is not CP.
KrausChannel kraus_from_choi(const ChoiMatrix& c, double tol = kDefaultTolerance);

struct Dilation {
  ComplexMatrix unitary;  // on H (x) C^K, system factor first
  DensityMatrix omega;    // |0><0| on the ancilla
  std::size_t ancilla_dim;
};
// U's ancilla-0 block column stacks the Kraus operators. Throws for non-TP channels.
Dilation stinespring(const KrausChannel& ch, double tol = kDefaultTolerance);
DensityMatrix apply(const Dilation& d, const DensityMatrix& rho);

// v -> U conj(v).
class AntiUnitaryOp {
 public:
  explicit AntiUnitaryOp(ComplexMatrix linear_part, double tol = kDefaultTolerance);
  const ComplexMatrix& linear_part() const noexcept { return u_; }

 private:
  ComplexMatrix u_;
};

// U conj(X) U*, i.e. X composed with the anti-unitary on both sides.
ComplexMatrix antiunitary_dress(const AntiUnitaryOp& a, const ComplexMatrix& x);
DensityMatrix antiunitary_dress(const AntiUnitaryOp& a, const DensityMatrix& rho);

// x -> offset + linear x on Stokes vectors of a trace-preserving qubit map.
struct StokesAffineMap {
  std::array<std::array<double, 3>, 3> linear{};
  std::array<double, 3> offset{};

  double determinant() const;
  // max |L L^T - I|
  double orthogonality_defect() const;
};
StokesAffineMap stokes_affine_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& t);

// rho -> tr(rho B) |psi><psi| for B >= 0; trace preserving iff B = I.
KrausChannel collapsing_channel(const ComplexMatrix& b, const PureState& psi, double tol = kDefaultTolerance);

// sum_j p_j sigma_j rho sigma_j with sigma_0 = I.
KrausChannel pauli_channel(const std::array<double, 4>& p, double tol = kDefaultTolerance);

// X e_j = e_{j-1 mod d}, Z e_j = exp(-2 pi i j / d) e_j.
ComplexMatrix generalized_pauli_x(std::size_t d);
ComplexMatrix generalized_pauli_z(std::size_t d);
// rho -> sum_{k,j} p[k][j] (X^k Z^j)^* rho (X^k Z^j); p is d x d row-major.
KrausChannel generalized_pauli(std::size_t d, const std::vector<double>& p, double tol = kDefaultTolerance);

}  // namespace qgames
