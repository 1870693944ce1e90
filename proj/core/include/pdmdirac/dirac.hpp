#pragma once

// (1+1)-dimensional Dirac problem with position-dependent mass m(x), local
// Fermi velocity v_f(x) and pseudoscalar potential W(x):
//
//   H_D = [ m v_f^2                       -i sqrt(v_f) d sqrt(v_f) - i W ]
//         [ -i sqrt(v_f) d sqrt(v_f) + i W   -m v_f^2                    ]
//
// Spinor components are complex. The electrostatic term is not modelled.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "pdmdirac/algebra.hpp"
#include "pdmdirac/profiles.hpp"
#include "pdmdirac/residual.hpp"

namespace pdm::dirac {

using Complex = std::complex<double>;

struct DiracModel {
  ScalarProfile v_f;
  ScalarProfile m;
  ScalarProfile W;
  double A = 1.0;
  double k = 0.5;
};

struct Spinor {
  ComplexField psi_plus;
  ComplexField psi_minus;
  double E = 0.0;
  // Relative residuals of both rows of H_D psi = E psi, filled by
  // build_eigen_spinor.
  double residual_upper = 0.0;
  double residual_lower = 0.0;
};

struct SpectrumEntry {
  double k = 0.0;
  double E_squared = 0.0;
  std::optional<double> E;  // +sqrt(E^2) when real
  bool real = false;
};

/// Model with m = A / v_f^2 (constancy condition engaged).
DiracModel make_model(const ScalarProfile& v_f, const ScalarProfile& W, double A, double k);

/// m = A / v_f^2.
ScalarProfile mustafa_mass(const ScalarProfile& v_f, double A);

/// v_f = 1 / sqrt(M).
ScalarProfile fermi_from_mass(const ScalarProfile& M);

/// E^2 = A^2 - (k - 1/2)^2 per k; complex levels are flagged, not thrown.
std::vector<SpectrumEntry> spectrum(double A, const std::vector<double>& k_values);

/// psi_- = [-i sqrt(v_f) (sqrt(v_f) psi_+)' + i W psi_+] / (E + A).
ComplexField lower_from_upper(const ComplexField& psi_plus, const ScalarProfile& W, const ScalarProfile& v_f,
                              double E, double A);

/// Row residuals r1 = (-i sqrt(v) d sqrt(v) - iW) psi_- - D_- psi_+ and
/// r2 = (-i sqrt(v) d sqrt(v) + iW) psi_+ - D_+ psi_-, D_+- = E +- m v^2.
std::pair<Residual<Complex>, Residual<Complex>> coupled_residuals(const Spinor& sp, const DiracModel& model);

/// Upper-component equation after eliminating psi_-, with position-dependent
/// D_+ = E + m v_f^2; each of its five terms is evaluated separately.
Residual<Complex> decoupled_residual(const ComplexField& psi_plus, const DiracModel& model, double E);

/// [-(v_f^2 psi')' + (W^2 - v_f'^2/4 - v_f v_f''/2 + v_f W') psi] - (E^2 - A^2) psi.
Residual<Complex> reduced_residual(const ComplexField& psi_plus, const ScalarProfile& W, const ScalarProfile& v_f,
                                   double A, double E);

/// H_D applied to a spinor given as two complex fields.
std::pair<ComplexField, ComplexField> hamiltonian_apply(const DiracModel& model, const ComplexField& psi_plus,
                                                        const ComplexField& psi_minus);

/// psi_+ = M^{1/4} chi with E = sign sqrt(A^2 - (k - 1/2)^2) and psi_- from
/// lower_from_upper. When E = -A the lower-from-upper route is singular; for a
/// zero mode (L_+ psi_+ = 0) the spinor (0, 1 / (v_f psi_+)) is returned.
Spinor build_eigen_spinor(const algebra::LadderState& st, const algebra::GeneratorPair& gp, double A, int sign);

ComplexField to_complex(const RealField& field);

}  // namespace pdm::dirac
