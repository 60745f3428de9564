#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "imq/expansion.hpp"
#include "imq/geometry.hpp"
#include "imq/reference.hpp"
#include "imq/specfun.hpp"

using namespace imq;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("IMQ kernel fixed values") {
  KernelParams t1(1.0);
  CHECK(phi_imq({0.4, -0.2}, {0.4, -0.2}, t1) == doctest::Approx(1.0));
  CHECK(phi_imq({std::sqrt(3.0), 0}, {0, 0}, t1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi_imq({1, 1}, {0, 0}, KernelParams(2.0)) ==
        doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));
  CHECK_THROWS_AS(KernelParams(0.0), std::invalid_argument);
}

TEST_CASE("exact Green function") {
  CHECK(green_exact({1, 0, 0}, {0, 0, 0}) == doctest::Approx(1.0));
  CHECK(green_exact({3, 4, 0}, {0, 0, 0}) == doctest::Approx(0.2).epsilon(1e-15));
  LiftedPair lp = lift_pair({std::sqrt(3.0), 0}, {0, 0}, 1.0);
  CHECK(green_exact(lp.X, lp.Y) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(green_exact({1, 2, 3}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("lift identity: phi equals the Green function of the lifted pair") {
  std::vector<double> u = random_vector(100, 3);
  for (int i = 0; i + 4 < 100; i += 5) {
    Point2 x{u[i], u[i + 1]}, y{u[i + 2], u[i + 3]};
    double t = 0.3 + std::fabs(u[i + 4]);
    LiftedPair lp = lift_pair(x, y, t);
    KernelParams kp(t);
    CHECK(phi_imq(x, y, kp) == doctest::Approx(green_exact(lp.X, lp.Y)).epsilon(1e-15));
  }
}

TEST_CASE("truncated Green function: leading term and collinear tail") {
  // M = 0 keeps only 1/rho_major
  CHECK(green_truncated({0, 0, 2}, {0.3, 0.1, 0.4}, 0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // collinear same direction: every term positive, the tail is exactly the
  // geometric remainder r^{M+1}/(rho_x (1-r)) = 2^-21
  double g = green_truncated({0, 0, 2}, {0, 0, 1}, 20);
  double e = std::fabs(g - 1.0);
  CHECK(e <= 9.6e-7);
  CHECK(e == doctest::Approx(std::pow(0.5, 21)).epsilon(1e-9));
  CHECK_THROWS_AS(green_truncated({0, 0, 1}, {1, 0, 0}, 5), std::invalid_argument);
}

TEST_CASE("truncated Green function is symmetric in its arguments") {
  std::vector<double> u = random_vector(60, 19);
  for (int i = 0; i + 5 < 60; i += 6) {
    Point3 X{1.5 + u[i], u[i + 1], u[i + 2]};
    Point3 Y{0.2 * u[i + 3], 0.2 * u[i + 4], 0.2 * u[i + 5]};
    if (to_spherical(Y).rho == 0.0) continue;
    double a = green_truncated(X, Y, 12);
    double b = green_truncated(Y, X, 12);
    CHECK(std::fabs(a - b) <= 1e-13 * std::fabs(a));
  }
}

TEST_CASE("error trend along the Fig.-1 style ray (same-angle case)") {
  double th = kPi / 3, om = kPi / 3;
  auto at = [&](double rho) {
    return from_spherical({rho, th, om});
  };
  Point3 Y = at(1.0);
  for (int M : {5, 10}) {
    double prev = 1e300;
    for (double rx : {1.5, 3.0, 6.0, 12.0}) {
      Point3 X = at(rx);
      double E = std::fabs(green_exact(X, Y) - green_truncated(X, Y, M));
      double bound = truncation_error_bound(rx, 1.0 / rx, M);
      // equal angles give cos(gamma) = 1, where the tail bound is attained
      // with equality; E carries the cancellation noise of two O(1/rho)
      // values, an absolute floor independent of the tail size
      CHECK(E <= bound + 1e-15);
      CHECK(E < prev);
      prev = E;
    }
  }
}

TEST_CASE("Theorem-1 bound arithmetic") {
  CHECK(truncation_error_bound(1.0, 0.5, 10) == doctest::Approx(9.765625e-4).epsilon(1e-15));
  // paper's level-1 unit-square constants: the exact value of the bound at
  // r = sqrt(2)/sqrt(73) is 2.8668e-9 (the quoted 2.86e-9 is its display
  // rounding); the error criterion is checked on corner configurations in
  // the acceptance gate
  double b = truncation_error_bound(std::sqrt(73.0) / 8.0, std::sqrt(2.0 / 73.0), 10);
  CHECK(b == doctest::Approx(2.8668e-9).epsilon(1e-4));
  CHECK(b < 2.87e-9);
  // geometric decay in M
  double prev = 1e300;
  for (int M : {2, 6, 10, 14}) {
    double v = truncation_error_bound(2.0, 0.7, M);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(truncation_error_bound(1.0, 0.0, 7) == 0.0);
  CHECK_THROWS_AS(truncation_error_bound(1.0, 1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(truncation_error_bound(0.0, 0.5, 7), std::invalid_argument);
}

TEST_CASE("Theorem-1 bound holds exactly on random pairs") {
  std::vector<double> u = random_vector(7 * 200, 2024);
  int idx = 0;
  for (int trial = 0; trial < 200; ++trial) {
    double rx = 0.5 + std::fabs(u[idx++]) * 2.0;
    double r = 0.3 + 0.3 * (u[idx++] + 1.0);  // in [0.3, 0.9]
    double thx = std::acos(u[idx++]);
    double thy = std::acos(u[idx++]);
    double omx = (u[idx++] + 1.0) * kPi;
    double omy = (u[idx++] + 1.0) * kPi;
    (void)u[idx++];
    Point3 X = from_spherical({rx, thx, omx});
    Point3 Y = from_spherical({r * rx, thy, omy});
    for (int M : {5, 10, 20}) {
      double E = std::fabs(green_exact(X, Y) - green_truncated(X, Y, M));
      CHECK(E <= truncation_error_bound(rx, r, M));
    }
  }
}

TEST_CASE("factor pair values") {
  FactorPair fp = factor_pair(0, 0, {0, 0, 2}, {0.1, 0.2, 0.0});
  CHECK(fp.h == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fp.j == doctest::Approx(1.0));

  fp = factor_pair(2, 1, {1, 0, 0}, {0, 0, 0});
  CHECK(fp.j == 0.0);
  fp = factor_pair(0, 0, {1, 0, 0}, {0, 0, 0});
  CHECK(fp.j == 1.0);

  // planar source side: cos(theta) = 0, so j vanishes iff n - m is odd
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= n; ++m) {
      fp = factor_pair(n, m, {0, 0, 1}, {0.4, 0.3, 0.0});
      if ((n - m) % 2 == 1)
        CHECK(fp.j == 0.0);
      else
        CHECK(fp.j != 0.0);
    }

  CHECK_THROWS_AS(factor_pair(1, 0, {0, 0, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("translated kernel: source at the center is exact") {
  KernelParams kp(0.9);
  Point2 z{0.35, 0.6};
  for (double off : {0.9, 1.7, 2.4}) {
    Point2 x{z.x1 + off, z.x2 - 0.5 * off};
    double approx = translated_kernel_approx(x, z, z, kp, 14);
    CHECK(approx == doctest::Approx(phi_imq(x, z, kp)).epsilon(1e-15));
  }
}

TEST_CASE("translated kernel equals the origin-centered expansion of the shifted pair") {
  // the sin/cos split form and the cos(m(w_x - w_y)) form are the same sum
  KernelParams kp(1.0);
  std::vector<double> u = random_vector(60, 404);
  for (int i = 0; i + 5 < 60; i += 6) {
    Point2 z{u[i], u[i + 1]};
    Point2 y{z.x1 + 0.05 * u[i + 2], z.x2 + 0.05 * u[i + 3]};
    Point2 x{z.x1 + 1.5 + 0.3 * u[i + 4], z.x2 + 1.2 + 0.3 * u[i + 5]};
    LiftedPair lp = lift_pair(x, y, kp.t);
    Point3 Z = lift_center(z, kp.t);
    double split = translated_kernel_approx(x, y, z, kp, 12);
    double cosform = green_truncated(lp.X - Z, lp.Y - Z, 12);
    CHECK(std::fabs(split - cosform) <= 1e-13 * std::fabs(cosform));
  }
}

TEST_CASE("translated kernel meets the level-1 paper tolerance at M = 10") {
  // one representative level-1 pair on the unit square: source block corner
  // farthest from its center, target at the nearest corner of a block two
  // cells away
  KernelParams kp(1.0);
  Point2 z{0.125, 0.125};
  Point2 y{0.25, 0.25};
  Point2 x{0.625, 0.25};
  double err = std::fabs(translated_kernel_approx(x, y, z, kp, 10) - phi_imq(x, y, kp));
  CHECK(err < 2.86e-9);
  // x on top of the center puts rho_{x-z} = t below rho_{y-z}: order violated
  KernelParams thin(0.1);
  CHECK_THROWS_AS(translated_kernel_approx({0.1, 0.1}, {0.9, 0.9}, {0.1, 0.1}, thin, 5),
                  std::invalid_argument);
}
