#pragma once

// Potentials of the PDM problem: the von Roos effective potential for a given
// ordering, the so(2,1) family V_s, the pseudoscalar W linked to V_s by the
// Riccati relation, and residuals of the governing equations.

#include <optional>
#include <string_view>

#include "pdmdirac/algebra.hpp"
#include "pdmdirac/profiles.hpp"
#include "pdmdirac/residual.hpp"

namespace pdm::potentials {

/// von Roos ambiguity exponents; eta + beta + gamma = -1 for hermiticity.
struct OrderingParams {
  double eta = 0.0;
  double beta = -1.0;
  double gamma = 0.0;

  /// Throws OrderingViolation unless |eta + beta + gamma + 1| <= 1e-12.
  void validate() const;
};

enum class OrderingPreset { BenDanielDuke, ZhuKroemer, MustafaMazharimousavi };

OrderingParams ordering(OrderingPreset preset);
std::string_view to_string(OrderingPreset preset);

struct PotentialBundle {
  ScalarProfile V_s;
  std::optional<ScalarProfile> W;  // present only at k = 1/2
  ScalarProfile v_f;
  ScalarProfile M;
  double s = 0.5;
  double k = 0.5;
};

/// V_eff = V + (beta+1) M'' / (2 M^2) - (eta (eta+beta+1) + beta + 1) M'^2 / M^3.
ScalarProfile veff(const ScalarProfile& M, const ScalarProfile& V, const OrderingParams& ord);

/// V_s = (1/sigma) [(1/4 - s^2) F' + 2 s G'] + G^2.
ScalarProfile vs_family(const algebra::GeneratorPair& gp, double s);

/// W = theta G, the pseudoscalar potential whose Riccati partner is V_{1/2}.
ScalarProfile pseudoscalar(const algebra::GeneratorPair& gp);

/// M = sigma^2 and v_f = 1/|sigma| together with V_s; W only when k = 1/2.
PotentialBundle bundle(const algebra::GeneratorPair& gp, double k, double s);

/// Throws LinkViolation when |v_f^2 M - 1| > 1e-8 at a node.
void check_link(const ScalarProfile& M, const ScalarProfile& v_f, const Grid& g);

/// [-(1/sqrt M) d/dx (1/sqrt M) d/dx + V_s - E_k] chi, scaled by
/// max(|V_s chi|_inf, |chi''/M|_inf, 1e-30).
Residual<double> chi_equation_residual(const ScalarProfile& M, const ScalarProfile& V_s,
                                       const algebra::LadderState& st, double k);

/// [-d/dx (1/M) d/dx + M''/(4M^2) - 7M'^2/(16M^3) + V_s - E_k] psi, same scaling.
Residual<double> psi_equation_residual(const ScalarProfile& M, const ScalarProfile& V_s, const RealField& psi,
                                       double k);

/// psi = M^{1/4} chi.
RealField psi_from_chi(const ScalarProfile& M, const RealField& chi);

/// [M''/(4M^2) - 7M'^2/(16M^3)] - [-v_f'^2/4 - v_f v_f''/2] (absolute).
Residual<double> curvature_identity_residual(const ScalarProfile& M, const ScalarProfile& v_f, const Grid& g);

/// W^2 + v_f W' - V_s (absolute).
Residual<double> riccati_residual(const ScalarProfile& W, const ScalarProfile& v_f, const ScalarProfile& V_s,
                                  const Grid& g);

/// Integrates W' = (V_s - W^2) / v_f outward from (x0, W0) in both directions
/// with an adaptive Dormand-Prince 5(4) stepper. Throws BlowUp if |W| exceeds
/// `bound`.
RealField riccati_solve(const ScalarProfile& V_s, const ScalarProfile& v_f, double x0, double W0, const Grid& g,
                        double bound = 1e8);

}  // namespace pdm::potentials
