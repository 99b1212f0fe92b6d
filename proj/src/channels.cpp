#include "qgames/channels.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qgames/errors.hpp"

namespace qgames {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    d[f] = index % dims[f];
    index /= dims[f];
  }
  return d;
}

void check_distribution(const std::vector<double>& p, double tol, const char* what) {
  double s = 0.0;
  for (double x : p) {
    if (!(x >= -tol)) throw PreconditionError(std::string(what) + ": negative probability");
    s += x;
  }
  if (std::abs(s - 1.0) > tol) throw PreconditionError(std::string(what) + ": probabilities sum to " + std::to_string(s));
}

ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t k) {
  ComplexMatrix out = ComplexMatrix::identity(a.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * a;
  return out;
}

double stokes_component(const ComplexMatrix& x, const ComplexMatrix& sigma) { return (x * sigma).trace().real(); }

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, double tol) : ops_(std::move(operators)) {
  if (ops_.empty()) throw PreconditionError("KrausChannel: no operators");
  const std::size_t m = ops_.front().rows(), n = ops_.front().cols();
  ComplexMatrix sum(n, n);
  for (const auto& v : ops_) {
    if (v.rows() != m || v.cols() != n) throw DimensionError("KrausChannel: operator shapes differ");
    sum += v.adjoint() * v;
  }
  if (hermitian_eig(sum, tol).eigenvalues.front() > 1.0 + tol)
    throw PreconditionError("KrausChannel: sum of V*V exceeds the identity");
}

bool KrausChannel::is_trace_preserving(double tol) const {
  ComplexMatrix sum(input_dim(), input_dim());
  for (const auto& v : ops_) sum += v.adjoint() * v;
  return max_abs_diff(sum, ComplexMatrix::identity(input_dim())) <= tol;
}

KrausChannel unitary_channel(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw PreconditionError("unitary_channel: matrix is not unitary");
  return KrausChannel({u});
}

KrausChannel identity_channel(std::size_t n) { return KrausChannel({ComplexMatrix::identity(n)}); }

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.input_dim() != first.output_dim()) throw DimensionError("compose: dimension mismatch");
  std::vector<ComplexMatrix> ops;
  for (const auto& a : second.operators())
    for (const auto& b : first.operators()) ops.push_back(a * b);
  return KrausChannel(std::move(ops));
}

KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  for (const auto& x : a.operators())
    for (const auto& y : b.operators()) ops.push_back(tensor_product(x, y));
  return KrausChannel(std::move(ops));
}

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.input_dim() || x.cols() != ch.input_dim())
    throw DimensionError("apply: operator is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         ", channel input dimension is " + std::to_string(ch.input_dim()));
  ComplexMatrix out(ch.output_dim(), ch.output_dim());
  for (const auto& v : ch.operators()) out += v * x * v.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (!ch.is_trace_preserving())
    throw PreconditionError("apply: channel is not trace preserving; use the operator overload");
  const ComplexMatrix out = apply(ch, rho.matrix());
  std::vector<std::size_t> dims = ch.output_dim() == ch.input_dim() ? rho.dims() : std::vector<std::size_t>{};
  return DensityMatrix(out, dims);
}

ComplexMatrix reduce(const ComplexMatrix& a, const std::vector<std::size_t>& keep, const std::vector<std::size_t>& dims) {
  const std::size_t n = product(dims);
  if (!a.is_square() || a.rows() != n) throw DimensionError("partial trace: dims do not match the matrix size");
  std::vector<bool> kept(dims.size(), false);
  std::vector<std::size_t> kept_dims;
  for (std::size_t f : keep) {
    if (f >= dims.size() || kept[f]) throw DimensionError("partial trace: invalid factor index");
    kept[f] = true;
  }
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (kept[f]) kept_dims.push_back(dims[f]);

  const std::size_t k = product(kept_dims);
  std::vector<std::size_t> kept_index(n), traced_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = digits_of(i, dims);
    std::size_t ki = 0, ti = 0;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      if (kept[f])
        ki = ki * dims[f] + d[f];
      else
        ti = ti * dims[f] + d[f];
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }
  ComplexMatrix out(k, k);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (traced_index[r] == traced_index[c]) out(kept_index[r], kept_index[c]) += a(r, c);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, std::size_t keep, const std::vector<std::size_t>& dims) {
  return reduce(a, {keep}, dims);
}

ComplexMatrix partial_expectation(const ComplexMatrix& a, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() == 0 || a.rows() % rho.rows() != 0)
    throw DimensionError("partial_expectation: dimension mismatch");
  const std::size_t n = a.rows() / rho.rows();
  return partial_trace(a * tensor_product(ComplexMatrix::identity(n), rho), 0, {n, rho.rows()});
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t factor, const std::vector<std::size_t>& dims) {
  if (factor >= dims.size() || op.rows() != dims[factor] || !op.is_square())
    throw DimensionError("embed: operator does not match the factor dimension");
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t f = 0; f < dims.size(); ++f)
    out = tensor_product(out, f == factor ? op : ComplexMatrix::identity(dims[f]));
  return out;
}

ChoiMatrix choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& t, std::size_t n, std::size_t m) {
  ChoiMatrix c{ComplexMatrix(n * m, n * m), n, m};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix eij(n, n);
      eij(i, j) = 1.0;
      const ComplexMatrix img = t(eij);
      if (img.rows() != m || img.cols() != m) throw DimensionError("choi_of_map: image has the wrong dimension");
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) c.matrix(j * m + l, i * m + k) = img(k, l);
    }
  return c;
}

ChoiMatrix choi(const KrausChannel& ch) {
  return choi_of_map([&ch](const ComplexMatrix& x) { return apply(ch, x); }, ch.input_dim(), ch.output_dim());
}

bool is_cp(const ChoiMatrix& c, double tol) {
  if (!is_hermitian(c.matrix, tol)) return false;
  return hermitian_eig(c.matrix, tol).eigenvalues.back() >= -tol;
}

KrausChannel kraus_from_choi(const ChoiMatrix& c, double tol) {
  if (!is_cp(c, tol)) throw PreconditionError("kraus_from_choi: Choi matrix is not positive");
  const std::size_t n = c.input_dim, m = c.output_dim;
  const auto eig = hermitian_eig(c.matrix, tol);
  std::vector<ComplexMatrix> ops;
  // Each eigenvector w gives V[l][j] = sqrt(lambda) conj(w[j*m + l]).
  for (std::size_t e = 0; e < n * m; ++e) {
    const double lambda = eig.eigenvalues[e];
    if (lambda <= tol) break;
    const double s = std::sqrt(lambda);
    ComplexMatrix v(m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < m; ++l) v(l, j) = s * std::conj(eig.eigenvectors(j * m + l, e));
    ops.push_back(std::move(v));
  }
  if (ops.empty()) throw PreconditionError("kraus_from_choi: zero map");
  return KrausChannel(std::move(ops), std::max(tol, 1e-8));
}

Dilation stinespring(const KrausChannel& ch, double tol) {
  if (ch.input_dim() != ch.output_dim()) throw DimensionError("stinespring: input and output dimensions differ");
  if (!ch.is_trace_preserving(tol)) throw PreconditionError("stinespring: channel is not trace preserving");
  const std::size_t n = ch.input_dim(), k = ch.operators().size(), dim = n * k;

  // Column h*k + a of U is the image of |h>|a>; the a = 0 columns are fixed.
  std::vector<std::vector<Complex>> columns;
  for (std::size_t h = 0; h < n; ++h) {
    std::vector<Complex> col(dim);
    for (std::size_t o = 0; o < n; ++o)
      for (std::size_t a = 0; a < k; ++a) col[o * k + a] = ch.operators()[a](o, h);
    columns.push_back(std::move(col));
  }
  // Orthonormal extension by Gram-Schmidt over standard basis candidates.
  std::vector<std::vector<Complex>> extra;
  for (std::size_t e = 0; e < dim && columns.size() + extra.size() < dim; ++e) {
    std::vector<Complex> v(dim);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto* set : {&columns, &extra})
        for (const auto& q : *set) {
          const Complex proj = inner(q, v);
          for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * q[i];
        }
    }
    const double len = norm(v);
    if (len < 1e-6) continue;
    for (auto& z : v) z /= len;
    extra.push_back(std::move(v));
  }
  ComplexMatrix u(dim, dim);
  std::size_t next = 0;
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t a = 0; a < k; ++a) {
      const auto& col = a == 0 ? columns[h] : extra[next++];
      for (std::size_t i = 0; i < dim; ++i) u(i, h * k + a) = col[i];
    }
  ComplexMatrix omega(k, k);
  omega(0, 0) = 1.0;
  return {std::move(u), DensityMatrix(std::move(omega)), k};
}

DensityMatrix apply(const Dilation& d, const DensityMatrix& rho) {
  const ComplexMatrix big = d.unitary * tensor_product(rho.matrix(), d.omega.matrix()) * d.unitary.adjoint();
  return DensityMatrix(partial_trace(big, 0, {rho.dimension(), d.ancilla_dim}), rho.dims());
}

AntiUnitaryOp::AntiUnitaryOp(ComplexMatrix linear_part, double tol) : u_(std::move(linear_part)) {
  if (!is_unitary(u_, tol)) throw PreconditionError("AntiUnitaryOp: linear part is not unitary");
}

ComplexMatrix antiunitary_dress(const AntiUnitaryOp& a, const ComplexMatrix& x) {
  return a.linear_part() * x.conjugate() * a.linear_part().adjoint();
}

DensityMatrix antiunitary_dress(const AntiUnitaryOp& a, const DensityMatrix& rho) {
  return DensityMatrix(antiunitary_dress(a, rho.matrix()), rho.dims());
}

double StokesAffineMap::determinant() const {
  const auto& m = linear;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double StokesAffineMap::orthogonality_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += linear[i][k] * linear[j][k];
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

StokesAffineMap stokes_affine_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& t) {
  const ComplexMatrix sig[3] = {pauli::x(), pauli::y(), pauli::z()};
  StokesAffineMap out;
  const ComplexMatrix center = t(Complex(0.5) * pauli::identity());
  for (int i = 0; i < 3; ++i) out.offset[i] = stokes_component(center, sig[i]);
  for (int j = 0; j < 3; ++j) {
    const ComplexMatrix img = t(Complex(0.5) * (pauli::identity() + sig[j]));
    for (int i = 0; i < 3; ++i) out.linear[i][j] = stokes_component(img, sig[i]) - out.offset[i];
  }
  return out;
}

KrausChannel collapsing_channel(const ComplexMatrix& b, const PureState& psi, double tol) {
  if (b.rows() != b.cols() || !is_psd(b, tol)) throw PreconditionError("collapsing_channel: B must be positive");
  const auto eig = hermitian_eig(b, tol);
  std::vector<ComplexMatrix> ops;
  const auto col = ComplexMatrix::column(psi.amplitudes());
  for (std::size_t k = 0; k < b.rows(); ++k) {
    if (eig.eigenvalues[k] <= tol) continue;
    const auto w = eig.eigenvectors.column_vector(k);
    ops.push_back(Complex(std::sqrt(eig.eigenvalues[k])) * (col * ComplexMatrix::column(w).adjoint()));
  }
  if (ops.empty()) ops.push_back(ComplexMatrix(psi.dimension(), b.rows()));
  return KrausChannel(std::move(ops), tol);
}

KrausChannel pauli_channel(const std::array<double, 4>& p, double tol) {
  check_distribution({p.begin(), p.end()}, tol, "pauli_channel");
  const ComplexMatrix sig[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  std::vector<ComplexMatrix> ops;
  for (int j = 0; j < 4; ++j)
    if (p[j] > 0.0) ops.push_back(Complex(std::sqrt(p[j])) * sig[j]);
  return KrausChannel(std::move(ops));
}

ComplexMatrix generalized_pauli_x(std::size_t d) {
  ComplexMatrix x(d, d);
  for (std::size_t j = 0; j < d; ++j) x((j + d - 1) % d, j) = 1.0;
  return x;
}

ComplexMatrix generalized_pauli_z(std::size_t d) {
  ComplexMatrix z(d, d);
  for (std::size_t j = 0; j < d; ++j)
    z(j, j) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
  return z;
}

KrausChannel generalized_pauli(std::size_t d, const std::vector<double>& p, double tol) {
  if (d == 0 || p.size() != d * d) throw PreconditionError("generalized_pauli: need d*d probabilities");
  check_distribution(p, tol, "generalized_pauli");
  const ComplexMatrix x = generalized_pauli_x(d), z = generalized_pauli_z(d);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) {
      const double pk = p[k * d + j];
      if (pk <= 0.0) continue;
      ops.push_back(Complex(std::sqrt(pk)) * (matrix_power(x, k) * matrix_power(z, j)).adjoint());
    }
  return KrausChannel(std::move(ops));
}

}  // namespace qgames
