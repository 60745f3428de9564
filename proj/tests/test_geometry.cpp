#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "imq/geometry.hpp"
#include "imq/reference.hpp"

using namespace imq;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("lift_pair places the planes at +-t/2") {
  LiftedPair lp = lift_pair({0, 0}, {0, 0}, 1.0);
  CHECK(lp.X.X3 == 0.5);
  CHECK(lp.Y.X3 == -0.5);
  CHECK(norm(lp.X - lp.Y) == doctest::Approx(1.0).epsilon(1e-15));

  lp = lift_pair({1, 1}, {0, 0}, 1.0);
  CHECK(norm(lp.X - lp.Y) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

  lp = lift_pair({0.3, 0.7}, {0.1, 0.2}, 0.5);
  Point3 d = lp.X - lp.Y;
  CHECK(d.X1 * d.X1 + d.X2 * d.X2 + d.X3 * d.X3 == doctest::Approx(0.54).epsilon(1e-14));

  CHECK_THROWS_AS(lift_pair({0, 0}, {1, 1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lift_pair({0, 0}, {1, 1}, -2.0), std::invalid_argument);
}

TEST_CASE("lift_center shares the source plane") {
  Point3 z = lift_center({0.125, 0.125}, 1.0);
  CHECK(z.X1 == 0.125);
  CHECK(z.X2 == 0.125);
  CHECK(z.X3 == -0.5);

  LiftedPair lp = lift_pair({0.9, 0.4}, {0.2, 0.6}, 0.7);
  Point3 zc = lift_center({0.5, 0.5}, 0.7);
  CHECK((lp.Y - zc).X3 == 0.0);
  CHECK((lp.X - zc).X3 == 0.7);

  CHECK_THROWS_AS(lift_center({0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("to_spherical fixed values and zero convention") {
  SphericalCoord s = to_spherical({0, 0, 1});
  CHECK(s.rho == doctest::Approx(1.0));
  CHECK(s.theta == doctest::Approx(0.0));
  CHECK(s.omega == doctest::Approx(0.0));

  s = to_spherical({1, 0, 0});
  CHECK(s.rho == doctest::Approx(1.0));
  CHECK(s.theta == doctest::Approx(kPi / 2));
  CHECK(s.omega == doctest::Approx(0.0));

  s = to_spherical({1, 1, 0});
  CHECK(s.rho == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.theta == doctest::Approx(kPi / 2));
  CHECK(s.omega == doctest::Approx(kPi / 4).epsilon(1e-15));

  s = to_spherical({0, 0, 0});
  CHECK(s.rho == 0.0);
  CHECK(s.theta == kPi / 2);
  CHECK(s.omega == 0.0);
}

TEST_CASE("spherical round trip within 1e-12") {
  std::vector<double> u = random_vector(300, 11);
  for (int i = 0; i + 2 < 300; i += 3) {
    Point3 v{2 * u[i], 2 * u[i + 1], 2 * u[i + 2]};
    if (norm(v) < 1e-6) continue;
    SphericalCoord s = to_spherical(v);
    CHECK(s.rho >= 0.0);
    CHECK(s.theta >= 0.0);
    CHECK(s.theta <= kPi);
    CHECK(s.omega >= 0.0);
    CHECK(s.omega < 2 * kPi);
    Point3 w = from_spherical(s);
    CHECK(norm(w - v) <= 1e-12 * s.rho);
  }
}

TEST_CASE("lift preserves squared distance up to t^2") {
  std::vector<double> u = random_vector(200, 5);
  for (int i = 0; i + 4 < 200; i += 5) {
    Point2 x{u[i], u[i + 1]}, y{u[i + 2], u[i + 3]};
    double t = 0.25 + std::fabs(u[i + 4]);
    LiftedPair lp = lift_pair(x, y, t);
    Point3 d = lp.X - lp.Y;
    double n3 = d.X1 * d.X1 + d.X2 * d.X2 + d.X3 * d.X3;
    CHECK(std::fabs(n3 - dist2(x, y) - t * t) <= 4.0 * 2.22e-16 * n3);
  }
}

TEST_CASE("lifted source-center difference sits on the equator") {
  std::vector<double> u = random_vector(120, 9);
  for (int i = 0; i + 3 < 120; i += 4) {
    Point2 y{u[i], u[i + 1]}, z{u[i + 2], u[i + 3]};
    if (dist2(y, z) < 1e-20) continue;
    LiftedPair lp = lift_pair({0, 0}, y, 0.8);
    Point3 yz = lp.Y - lift_center(z, 0.8);
    CHECK(to_spherical(yz).theta == doctest::Approx(kPi / 2).epsilon(1e-14));
  }
}
