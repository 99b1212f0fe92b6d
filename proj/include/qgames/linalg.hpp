#pragma once

// Dense complex linear algebra for the small (<= 2^10) dimensions used by the
// quantum game protocols. Storage is row-major; tensor products put the LEFT
// factor at the most significant index, so |jk> of two qubits is row 2j+k.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace qgames {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr Complex kI{0.0, 1.0};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Throws PreconditionError if data.size() != rows*cols or an entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix column(std::span<const Complex> v);
  // |v><w|
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  std::vector<Complex> column_vector(std::size_t c) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

// Kronecker product; row index of the result is i*b.rows() + k.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);
std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

double hs_norm(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTolerance);
bool is_unitary(const ComplexMatrix& a, double tol = kDefaultTolerance);
bool is_psd(const ComplexMatrix& a, double tol = kDefaultTolerance);
bool is_projector(const ComplexMatrix& a, double tol = kDefaultTolerance);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column j pairs with eigenvalues[j]
};

// Throws PreconditionError for non-Hermitian input. Each eigenvector is
// phase-normalized so its first nonzero entry is real positive.
SpectralDecomposition hermitian_eig(const ComplexMatrix& a, double tol = kDefaultTolerance);

// A = U * D * V^T (transpose, not adjoint). U and V are full unitaries,
// singulars are the min(rows, cols) diagonal entries of D, descending.
struct SingularValueDecomposition {
  ComplexMatrix u;
  std::vector<double> singulars;
  ComplexMatrix v;
};
SingularValueDecomposition svd(const ComplexMatrix& a);

double trace_norm(const ComplexMatrix& a, double tol = kDefaultTolerance);
double operator_norm(const ComplexMatrix& a);

// f(A) = V f(D) V* for Hermitian A.
template <class F>
ComplexMatrix hermitian_function(const ComplexMatrix& a, F&& f, double tol = kDefaultTolerance) {
  const auto eig = hermitian_eig(a, tol);
  const std::size_t n = a.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

Complex determinant(const ComplexMatrix& a);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

// Uniform sample on the unit 3-sphere mapped to u0*I + i(u1 X + u2 Y + u3 Z).
ComplexMatrix haar_random_su2(std::uint64_t seed);

}  // namespace qgames
