#pragma once

// Shared helpers for the unit and acceptance suites. Anything used as an
// oracle here is written against plain std::complex arithmetic, not the
// library's own decompositions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qgames/linalg.hpp"

namespace qgames::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  return Complex(0.5) * (g + g.adjoint());
}

inline std::vector<Complex> random_unit_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  double s = 0.0;
  for (auto& z : v) {
    z = Complex(g(rng), g(rng));
    s += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(s);
  return v;
}

inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  ComplexMatrix rho = g * g.adjoint();
  return Complex(1.0 / rho.trace().real()) * rho;
}

// Orthonormal columns by modified Gram-Schmidt.
inline ComplexMatrix orthonormalize_columns(ComplexMatrix m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t k = 0; k < c; ++k) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) dot += std::conj(m(r, k)) * m(r, c);
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) -= dot * m(r, k);
    }
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += std::norm(m(r, c));
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) /= std::sqrt(s);
  }
  return m;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  return orthonormalize_columns(random_matrix(rng, n, n));
}

// Kraus operators n -> m from a random isometry C^n -> C^{m k}.
inline std::vector<ComplexMatrix> random_kraus(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t k) {
  const ComplexMatrix iso = orthonormalize_columns(random_matrix(rng, m * k, n));
  std::vector<ComplexMatrix> ops(k, ComplexMatrix(m, n));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) ops[a](r, c) = iso(a * m + r, c);
  return ops;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on its real
// 2n x 2n embedding [[Re, -Im], [Im, Re]], whose spectrum is A's, doubled.
inline std::vector<double> jacobi_eigenvalues(const ComplexMatrix& a) {
  const std::size_t n = a.rows(), m = 2 * n;
  std::vector<double> s(m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s[i * m + j] = s[(i + n) * m + j + n] = a(i, j).real();
      s[i * m + j + n] = -a(i, j).imag();
      s[(i + n) * m + j] = a(i, j).imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += s[p * m + q] * s[p * m + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = s[p * m + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (s[q * m + q] - s[p * m + p]) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), sn = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double kp = s[k * m + p], kq = s[k * m + q];
          s[k * m + p] = c * kp - sn * kq;
          s[k * m + q] = sn * kp + c * kq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double pk = s[p * m + k], qk = s[q * m + k];
          s[p * m + k] = c * pk - sn * qk;
          s[q * m + k] = sn * pk + c * qk;
        }
      }
  }
  std::vector<double> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = s[i * m + i];
  std::sort(all.begin(), all.end(), std::greater<>());
  std::vector<double> out;
  for (std::size_t i = 0; i < m; i += 2) out.push_back(all[i]);
  return out;
}

inline double max_abs(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace qgames::testing
