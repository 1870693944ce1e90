#include "pdmdirac/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pdm::model {

std::string_view to_string(UMap map) {
  switch (map) {
    case UMap::Identity: return "identity";
    case UMap::Artanh: return "artanh";
    case UMap::Arccoth: return "arccoth";
  }
  return "unknown";
}

Interval map_domain(UMap map, int branch) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (map) {
    case UMap::Identity: return Interval::real_line();
    case UMap::Artanh: return Interval::open(-1.0, 1.0);
    case UMap::Arccoth: return branch >= 0 ? Interval::open(1.0, inf) : Interval::open(-inf, -1.0);
  }
  return Interval::real_line();
}

ScalarProfile pct_map(UMap map, int branch) {
  const ScalarProfile x = profile::identity(map_domain(map, branch));
  switch (map) {
    case UMap::Identity: return x.with_label("u(x)");
    case UMap::Artanh: return profile::atanh(x).with_label("u(x)");
    case UMap::Arccoth: return profile::acoth(x).with_label("u(x)");
  }
  return x;
}

namespace {

int branch_of(const ModelSpec& spec) { return spec.map == UMap::Arccoth && spec.x_max <= -1.0 ? -1 : 1; }

}  // namespace

Interval grid_interval(const ModelSpec& spec) {
  if (!(spec.x_max > spec.x_min)) throw Error(ErrorKind::DomainError, "grid.max must exceed grid.min");
  const Interval dom = map_domain(spec.map, branch_of(spec));
  const Interval span{spec.x_min, spec.x_max, spec.x_min == dom.lo, spec.x_max == dom.hi};
  if (!dom.contains(span))
    throw Error(ErrorKind::DomainError, "grid [" + std::to_string(spec.x_min) + ", " + std::to_string(spec.x_max) +
                                            "] is not inside the domain of u = " + std::string(to_string(spec.map)));
  return span;
}

ModelBundle build(const ModelSpec& spec) {
  spec.ordering.validate();
  const Interval span = grid_interval(spec);
  const ScalarProfile u = pct_map(spec.map, branch_of(spec));
  algebra::FamilySpec fs{spec.cls, spec.b, spec.c, u, spec.k, spec.s};
  algebra::GeneratorPair gp = algebra::build_family(fs);
  const potentials::PotentialBundle pb = potentials::bundle(gp, spec.k, spec.s);
  Grid g(span, spec.n, spec.margin);
  algebra::pct_mass(u, spec.c, g);
  return ModelBundle{spec, std::move(gp), pb.M, pb.v_f, pb.V_s, pb.W, std::move(g)};
}

ModelSpec constant_mass(double b, double k) {
  ModelSpec s;
  s.cls = algebra::FamilyClass::OmegaNegative;
  s.map = UMap::Identity;
  s.b = b;
  s.k = k;
  s.s = k;
  s.A = 1.0;
  s.x_min = -20.0;
  s.x_max = 20.0;
  return s;
}

ModelSpec bounded_local(double b, double A) {
  ModelSpec s;
  s.cls = algebra::FamilyClass::OmegaNegative;
  s.map = UMap::Artanh;
  s.b = b;
  s.A = A;
  s.x_min = -1.0;
  s.x_max = 1.0;
  return s;
}

ModelSpec exterior_local(double b, double A) {
  ModelSpec s;
  s.cls = algebra::FamilyClass::OmegaPositive;
  s.map = UMap::Arccoth;
  s.b = b;
  s.A = A;
  s.x_min = 1.0;
  s.x_max = 10.0;
  return s;
}

}  // namespace pdm::model
