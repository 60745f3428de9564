#pragma once

#include <cmath>

namespace imq {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Point3 {
  double X1 = 0.0;
  double X2 = 0.0;
  double X3 = 0.0;
};

// rho >= 0, theta in [0, pi], omega in [0, 2*pi)
struct SphericalCoord {
  double rho = 0.0;
  double theta = 0.0;
  double omega = 0.0;
};

struct LiftedPair {
  Point3 X;
  Point3 Y;
};

inline Point3 operator-(Point3 a, Point3 b) { return {a.X1 - b.X1, a.X2 - b.X2, a.X3 - b.X3}; }

inline double norm(Point3 v) { return std::sqrt(v.X1 * v.X1 + v.X2 * v.X2 + v.X3 * v.X3); }

inline double dist2(Point2 a, Point2 b) {
  double dx = a.x1 - b.x1, dy = a.x2 - b.x2;
  return dx * dx + dy * dy;
}

// Lift a target/source pair into R^3: X = (x1, x2, t/2), Y = (y1, y2, -t/2),
// so that ||X - Y||^2 = ||x - y||^2 + t^2. Throws on t <= 0.
LiftedPair lift_pair(Point2 x, Point2 y, double t);

// Lift an expansion center onto the source plane: Z = (z1, z2, -t/2).
// (Y - Z) then has zero third component and (X - Z) has third component t.
Point3 lift_center(Point2 z, double t);

// Total function; rho = 0 maps to (0, pi/2, 0) by convention.
SphericalCoord to_spherical(Point3 v);

Point3 from_spherical(SphericalCoord s);

}  // namespace imq
