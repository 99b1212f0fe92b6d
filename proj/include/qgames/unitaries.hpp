#pragma once

#include <cstddef>

#include "qgames/linalg.hpp"

namespace qgames {

// cos(phi)cos(theta) I + i sin(psi)sin(theta) X + i cos(psi)sin(theta) Y + i sin(phi)cos(theta) Z
ComplexMatrix su2(double theta, double phi, double psi);

// [[e^{i phi} cos t, e^{i psi} sin t], [-e^{-i psi} sin t, e^{-i phi} cos t]]
ComplexMatrix su2_phase_form(double theta, double phi, double psi);

// Inverse of su2 for det-one 2x2 unitaries: theta in [0, pi/2], phi, psi in (-pi, pi].
struct SU2Coordinates {
  double theta;
  double phi;
  double psi;
};
SU2Coordinates su2_coordinates(const ComplexMatrix& u);

// e^{ibZ} e^{icY} e^{idZ}, equal to su2_phase_form(c, b + d, b - d).
ComplexMatrix cartan(double b, double c, double d);

// [[e^{i phi} cos(theta/2), sin(theta/2)], [-sin(theta/2), e^{-i phi} cos(theta/2)]],
// theta in [0, pi], phi in [0, pi/2].
ComplexMatrix ewl_strategy(double theta, double phi);
ComplexMatrix ewl_cooperate();  // U(0, 0) = I
ComplexMatrix ewl_defect();     // U(pi, 0)
ComplexMatrix ewl_quantum();    // U(0, pi/2) = i sigma_z

// [[cos t, e^{i phi} sin t], [-e^{-i phi} sin t, cos t]], t, phi in [0, pi/2].
ComplexMatrix restricted_su2(double theta, double phi);

// [[u, conj(v)], [v, -conj(u)]], |u|^2 + |v|^2 = 1.
ComplexMatrix meyer_unitary(Complex u, Complex v);

// Optical elements on the (|R>, |L>) basis.
ComplexMatrix beam_splitter();                // (I + iX)/sqrt 2
ComplexMatrix mirror();                       // -iX
ComplexMatrix phase_shifter_r(double phi);    // diag(e^{i phi}, 1)
ComplexMatrix phase_shifter_l(double phi);    // diag(1, e^{i phi})
ComplexMatrix mach_zender(double theta1, double theta2, double phi1, double phi2);

ComplexMatrix qwp(double theta);  // e^{-i theta Y} e^{-i pi Z/4} e^{-i theta Y}
ComplexMatrix hwp(double theta);  // e^{-i theta Y} e^{-i pi Z/2} e^{-i theta Y}

ComplexMatrix walsh();              // [[1, 1], [1, -1]]/sqrt 2
ComplexMatrix walsh_power(std::size_t n);

// exp(i t P) for P with P^2 = I: cos t I + i sin t P.
ComplexMatrix exp_involution(const ComplexMatrix& p, double t);

}  // namespace qgames
