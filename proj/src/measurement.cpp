#include "qgames/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qgames/errors.hpp"

namespace qgames {

namespace {

std::string format_eigenvalue(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw_index(const OutcomeDistribution& dist, double u) {
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    if (dist.probabilities[i] <= 0.0) continue;
    acc += dist.probabilities[i];
    last = i;
    if (u < acc) return i;
  }
  return last;  // rounding left u above the accumulated total
}

}  // namespace

Observable::Observable(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
  if (!is_hermitian(matrix_, tol)) throw PreconditionError("Observable: matrix is not Hermitian");
}

POVM::POVM(std::vector<std::string> labels, std::vector<ComplexMatrix> effects, double tol)
    : labels_(std::move(labels)), effects_(std::move(effects)) {
  if (effects_.empty()) throw PreconditionError("POVM: no effects");
  if (labels_.size() != effects_.size()) throw PreconditionError("POVM: label count differs from effect count");
  const std::size_t n = effects_.front().rows();
  ComplexMatrix sum(n, n);
  for (std::size_t k = 0; k < effects_.size(); ++k) {
    if (effects_[k].rows() != n || effects_[k].cols() != n) throw DimensionError("POVM: effect shapes differ");
    if (!is_psd(effects_[k], tol)) throw PreconditionError("POVM: effect '" + labels_[k] + "' is not positive");
    sum += effects_[k];
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(n)) > tol)
    throw PreconditionError("POVM: effects do not sum to the identity");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j]) throw PreconditionError("POVM: duplicate label '" + labels_[i] + "'");
}

bool POVM::is_projective(double tol) const {
  return std::all_of(effects_.begin(), effects_.end(), [tol](const auto& e) { return is_projector(e, tol); });
}

POVM POVM::conjugated(const ComplexMatrix& u) const {
  std::vector<ComplexMatrix> out;
  out.reserve(effects_.size());
  const ComplexMatrix ud = u.adjoint();
  for (const auto& e : effects_) out.push_back(u * e * ud);
  return POVM(labels_, std::move(out));
}

double OutcomeDistribution::probability(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return probabilities[i];
  throw PreconditionError("unknown outcome label '" + label + "'");
}

std::string basis_label(std::size_t index, const std::vector<std::size_t>& dims) {
  const bool short_digits = std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d <= 10; });
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    digits[f] = index % dims[f];
    index /= dims[f];
  }
  std::string s;
  for (std::size_t f = 0; f < digits.size(); ++f) {
    if (!short_digits && f > 0) s += ',';
    s += std::to_string(digits[f]);
  }
  return s;
}

POVM computational_povm(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> effects;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(basis_label(i, dims));
    ComplexMatrix p(n, n);
    p(i, i) = 1.0;
    effects.push_back(std::move(p));
  }
  return POVM(std::move(labels), std::move(effects));
}

POVM pvm_from_observable(const Observable& a) {
  const auto eig = hermitian_eig(a.matrix());
  const std::size_t n = a.matrix().rows();
  double scale = 0.0;
  for (double l : eig.eigenvalues) scale = std::max(scale, std::abs(l));
  const double gap = kDegeneracyGap * std::max(scale, 1e-300);

  std::vector<std::string> labels;
  std::vector<ComplexMatrix> effects;
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n && eig.eigenvalues[k] - eig.eigenvalues[end] <= gap) ++end;
    ComplexMatrix p(n, n);
    double mean = 0.0;
    for (std::size_t j = k; j < end; ++j) {
      mean += eig.eigenvalues[j];
      const auto v = eig.eigenvectors.column_vector(j);
      p += ComplexMatrix::outer(v, v);
    }
    mean /= static_cast<double>(end - k);
    if (std::abs(mean) <= gap) mean = 0.0;
    labels.push_back(format_eigenvalue(mean));
    effects.push_back(std::move(p));
    k = end;
  }
  return POVM(std::move(labels), std::move(effects));
}

OutcomeDistribution probabilities(const DensityMatrix& rho, const POVM& m) {
  if (rho.dimension() != m.dimension()) throw DimensionError("probabilities: state and POVM dimensions differ");
  OutcomeDistribution out{m.labels(), {}};
  const auto& r = rho.matrix();
  const std::size_t n = r.rows();
  for (const auto& e : m.effects()) {
    // tr(rho M) without forming the product.
    Complex t{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t += r(i, j) * e(j, i);
    out.probabilities.push_back(t.real());
  }
  return out;
}

OutcomeDistribution probabilities(const PureState& psi, const POVM& m) {
  if (psi.dimension() != m.dimension()) throw DimensionError("probabilities: state and POVM dimensions differ");
  OutcomeDistribution out{m.labels(), {}};
  const std::span<const Complex> v(psi.amplitudes());
  for (const auto& e : m.effects()) out.probabilities.push_back(inner(v, e * v).real());
  return out;
}

Collapse collapse(const DensityMatrix& rho, const ComplexMatrix& projector, double tol) {
  if (projector.rows() != rho.dimension() || !projector.is_square())
    throw DimensionError("collapse: projector dimension differs from the state");
  if (!is_projector(projector, tol)) throw PreconditionError("collapse: effect is not a projector");
  const ComplexMatrix prp = projector * rho.matrix() * projector;
  const double p = prp.trace().real();
  if (p < kCollapseThreshold)
    throw UndefinedCollapseError("collapse: branch probability " + std::to_string(p) + " is below threshold");
  return {DensityMatrix(Complex(1.0 / p) * prp, rho.dims()), p};
}

ComplexMatrix pinch(const ComplexMatrix& b, const POVM& m, double tol) {
  if (!m.is_projective(tol)) throw PreconditionError("pinch: POVM is not projection-valued");
  if (b.rows() != m.dimension() || !b.is_square()) throw DimensionError("pinch: dimension mismatch");
  ComplexMatrix out(b.rows(), b.cols());
  for (const auto& p : m.effects()) out += p * b * p;
  return out;
}

std::string sample(const OutcomeDistribution& dist, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return dist.labels.at(draw_index(dist, unit_uniform(rng)));
}

std::vector<std::string> sample_many(const OutcomeDistribution& dist, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(dist.labels.at(draw_index(dist, unit_uniform(rng))));
  return out;
}

}  // namespace qgames
