#include "imq/geometry.hpp"

#include <stdexcept>

namespace imq {

static void require_positive_t(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("shape parameter t must be positive");
}

LiftedPair lift_pair(Point2 x, Point2 y, double t) {
  require_positive_t(t);
  return {{x.x1, x.x2, 0.5 * t}, {y.x1, y.x2, -0.5 * t}};
}

Point3 lift_center(Point2 z, double t) {
  require_positive_t(t);
  return {z.x1, z.x2, -0.5 * t};
}

SphericalCoord to_spherical(Point3 v) {
  double rho = norm(v);
  if (rho == 0.0) return {0.0, 2.0 * std::atan(1.0), 0.0};  // convention: theta = pi/2
  double c = v.X3 / rho;
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  double theta = std::acos(c);
  double omega = std::atan2(v.X2, v.X1);
  if (omega < 0.0) omega += 8.0 * std::atan(1.0);
  if (omega < 0.0) omega = 0.0;  // guard: -eps + 2*pi cannot exceed 2*pi, but keep range exact
  return {rho, theta, omega};
}

Point3 from_spherical(SphericalCoord s) {
  double st = std::sin(s.theta);
  return {s.rho * st * std::cos(s.omega), s.rho * st * std::sin(s.omega), s.rho * std::cos(s.theta)};
}

}  // namespace imq
