#include "qgames/unitaries.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qgames/errors.hpp"

namespace qgames {

ComplexMatrix su2(double theta, double phi, double psi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  return Complex(std::cos(phi) * ct) * pauli::identity() + Complex(0.0, std::sin(psi) * st) * pauli::x() +
         Complex(0.0, std::cos(psi) * st) * pauli::y() + Complex(0.0, std::sin(phi) * ct) * pauli::z();
}

SU2Coordinates su2_coordinates(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u) || std::abs(determinant(u) - 1.0) > 1e-9)
    throw PreconditionError("su2_coordinates: matrix is not in SU(2)");
  // u = u0 I + i(u1 X + u2 Y + u3 Z)
  const double u0 = u(0, 0).real(), u3 = u(0, 0).imag(), u2 = u(0, 1).real(), u1 = u(0, 1).imag();
  return {std::atan2(std::hypot(u1, u2), std::hypot(u0, u3)), std::atan2(u3, u0), std::atan2(u1, u2)};
}

ComplexMatrix su2_phase_form(double theta, double phi, double psi) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {{std::polar(c, phi), std::polar(s, psi)}, {-std::polar(s, -psi), std::polar(c, -phi)}};
}

ComplexMatrix cartan(double b, double c, double d) {
  return exp_involution(pauli::z(), b) * exp_involution(pauli::y(), c) * exp_involution(pauli::z(), d);
}

ComplexMatrix ewl_strategy(double theta, double phi) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {{std::polar(c, phi), s}, {-s, std::polar(c, -phi)}};
}

ComplexMatrix ewl_cooperate() { return ewl_strategy(0.0, 0.0); }
ComplexMatrix ewl_defect() { return ewl_strategy(std::numbers::pi, 0.0); }
ComplexMatrix ewl_quantum() { return ewl_strategy(0.0, std::numbers::pi / 2); }

ComplexMatrix restricted_su2(double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {{c, std::polar(s, phi)}, {-std::polar(s, -phi), c}};
}

ComplexMatrix meyer_unitary(Complex u, Complex v) {
  if (std::abs(std::norm(u) + std::norm(v) - 1.0) > kDefaultTolerance)
    throw PreconditionError("meyer_unitary: |u|^2 + |v|^2 must be 1");
  return {{u, std::conj(v)}, {v, -std::conj(u)}};
}

ComplexMatrix beam_splitter() { return Complex(1.0 / std::sqrt(2.0)) * (pauli::identity() + kI * pauli::x()); }

ComplexMatrix mirror() { return -kI * pauli::x(); }

ComplexMatrix phase_shifter_r(double phi) { return {{std::polar(1.0, phi), 0.0}, {0.0, 1.0}}; }

ComplexMatrix phase_shifter_l(double phi) { return {{1.0, 0.0}, {0.0, std::polar(1.0, phi)}}; }

ComplexMatrix mach_zender(double theta1, double theta2, double phi1, double phi2) {
  return phase_shifter_r(theta2) * beam_splitter() * phase_shifter_r(phi1) * phase_shifter_l(phi2) * mirror() *
         beam_splitter() * phase_shifter_r(theta1);
}

ComplexMatrix qwp(double theta) {
  const ComplexMatrix r = exp_involution(pauli::y(), -theta);
  return r * exp_involution(pauli::z(), -std::numbers::pi / 4) * r;
}

ComplexMatrix hwp(double theta) {
  const ComplexMatrix r = exp_involution(pauli::y(), -theta);
  return r * exp_involution(pauli::z(), -std::numbers::pi / 2) * r;
}

ComplexMatrix walsh() { return {{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}}; }

ComplexMatrix walsh_power(std::size_t n) {
  // Entry (x, y) is (-1)^{x.y} / 2^{n/2}.
  const std::size_t dim = std::size_t{1} << n;
  const double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
  ComplexMatrix w(dim, dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) w(x, y) = (std::popcount(x & y) % 2 == 0) ? scale : -scale;
  return w;
}

ComplexMatrix exp_involution(const ComplexMatrix& p, double t) {
  return Complex(std::cos(t)) * ComplexMatrix::identity(p.rows()) + Complex(0.0, std::sin(t)) * p;
}

}  // namespace qgames
