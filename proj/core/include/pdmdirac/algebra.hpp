#pragma once

// so(2,1) generator families induced by a point canonical transformation u(x),
// the ladder operators J_+-, the Casimir, and the ground-state chain.
//
// Sign convention: sigma(x) = u'(x) is carried with its sign wherever the
// generators need sqrt(M); M = sigma^2. The family amplitude is oriented,
// G = theta * b * shape(u - c) with theta = sign(sigma), so that decreasing
// maps (arccoth) reproduce the closed forms with the conventional sign of b.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pdmdirac/profiles.hpp"

namespace pdm::algebra {

enum class FamilyClass {
  OmegaNegative,   // F = tanh(u - c),  G = b sech(u - c)
  OmegaZeroPlus,   // F = +1,           G = b e^{-(u - c)}
  OmegaZeroMinus,  // F = -1,           G = b e^{+(u - c)}
  OmegaPositive,   // F = coth(u - c),  G = b cosech(u - c)
};

std::string_view to_string(FamilyClass cls);

struct FamilySpec {
  FamilyClass cls = FamilyClass::OmegaNegative;
  double b = 1.0;
  double c = 0.0;
  ScalarProfile u;  // strictly monotone PCT map
  double k = 0.5;
  double s = 0.5;
};

struct GeneratorPair {
  ScalarProfile F;
  ScalarProfile G;
  ScalarProfile sigma;  // u'(x), signed
  FamilyClass cls = FamilyClass::OmegaNegative;
  double b = 0.0;
  double c = 0.0;
  double orientation = 1.0;  // sign of sigma on the domain
  ScalarProfile u;
};

struct LadderState {
  RealField chi;
  double k = 0.5;
  double s = 0.5;
  bool below_bottom = false;  // produced by J_- acting on s = k
};

struct PctMass {
  ScalarProfile M;
  ScalarProfile sigma;
};

struct OmegaEstimate {
  double mean = 0.0;
  double max_deviation = 0.0;
};

enum class CasimirVariant { Upper, Lower };

/// F, G and sigma for a family. Throws InvalidParam for b = 0 when omega != 0
/// and for label sets outside the D_k^+ ladder.
GeneratorPair build_family(const FamilySpec& spec);

/// sigma = u', M = sigma^2; throws DegenerateMap if |u'| < 1e-12 on the grid.
PctMass pct_mass(const ScalarProfile& u, double c, const Grid& g);

/// r_F = F' - sigma (1 - F^2), r_G = G' + sigma F G.
std::pair<RealField, RealField> constraint_residuals(const GeneratorPair& gp, const Grid& g);

/// Mean and spread of (F^2 - 1) / G^2 over the grid.
OmegaEstimate omega_invariant(const GeneratorPair& gp, const Grid& g);

/// (J_+- chi)(x) = +-(1/sigma) chi' - (s +- 1/2) F chi + G chi, with s -> s +- 1.
LadderState ladder_apply(int direction, const LadderState& st, const GeneratorPair& gp);

/// (J_0^2 -+ J_0 - J_+- J_-+) chi.
RealField casimir_apply(const LadderState& st, const GeneratorPair& gp, CasimirVariant variant);

/// chi_0 = G^{k-1/2} exp(int sigma G dx), the integral anchored to zero at
/// the grid midpoint. Optionally scaled to unit sup-norm.
LadderState ground_state(const GeneratorPair& gp, double k, const Grid& g, bool normalize = false);

/// chi_0 jets on an arbitrary increasing node list, anchored at `anchor`.
std::vector<RealJet> ground_state_jets(const GeneratorPair& gp, double k, std::span<const double> nodes,
                                       double anchor);

/// Closed form of J_+ chi_0 = 2 (G - k F) chi_0, sampled alongside chi_0.
RealField first_excited_closed_form(const GeneratorPair& gp, const LadderState& ground);

/// Algebraic level E_k = -(k - 1/2)^2.
inline double algebraic_level(double k) { return 0.0 - (k - 0.5) * (k - 0.5); }

/// True when F and G are finite on the whole grid (no cosech/coth pole).
bool regular_on(const GeneratorPair& gp, const Grid& g);

}  // namespace pdm::algebra
