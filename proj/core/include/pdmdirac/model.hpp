#pragma once

// A complete solvable model assembled from family parameters, plus the
// built-in presets (constant mass, and the two local-mass examples on |x| < 1
// and |x| > 1).

#include <optional>
#include <string_view>

#include "pdmdirac/algebra.hpp"
#include "pdmdirac/potentials.hpp"

namespace pdm::model {

enum class UMap { Identity, Artanh, Arccoth };

std::string_view to_string(UMap map);

/// The bare map u(x) (x, artanh x or arccoth x); the shift c enters the
/// generators as u - c. The arccoth map lives on x > 1 or x < -1 and
/// `branch` picks the side (+1 or -1).
ScalarProfile pct_map(UMap map, int branch = 1);

/// Domain on which the map is admissible.
Interval map_domain(UMap map, int branch = 1);

struct ModelSpec {
  algebra::FamilyClass cls = algebra::FamilyClass::OmegaNegative;
  UMap map = UMap::Identity;
  double b = 1.0;
  double c = 0.0;
  double k = 0.5;
  double s = 0.5;
  double A = 1.0;
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n = 2001;
  double margin = Grid::kDefaultMargin;
  potentials::OrderingParams ordering{};
};

struct ModelBundle {
  ModelSpec spec;
  algebra::GeneratorPair gp;
  ScalarProfile M;
  ScalarProfile v_f;
  ScalarProfile V_s;
  std::optional<ScalarProfile> W;
  Grid grid;
};

/// Throws DomainError when [x_min, x_max] does not fit the map's domain.
ModelBundle build(const ModelSpec& spec);

/// Interval the grid spans; endpoints on the map's singular boundary are
/// marked open so the grid margin keeps nodes off them.
Interval grid_interval(const ModelSpec& spec);

ModelSpec constant_mass(double b = 0.5, double k = 1.0);
/// F = x, G = sqrt(1 - x^2), M = 1/(1 - x^2)^2 on |x| < 1.
ModelSpec bounded_local(double b = 1.0, double A = 2.0);
/// u - c = arccoth x on 1 < x <= 10, M = 1/(x^2 - 1)^2.
ModelSpec exterior_local(double b = -1.0, double A = 1.0);

}  // namespace pdm::model
