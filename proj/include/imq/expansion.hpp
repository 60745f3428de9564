#pragma once

#include "imq/geometry.hpp"

namespace imq {

struct KernelParams {
  double t;
  explicit KernelParams(double t_);
};

// Target/source factor pair of the translated degenerate kernel:
//   h_{n,m}(X-Z) = P_n^m(cos theta)/rho^{n+1},  j_{n,m}(Y-Z) = P_n^m(cos theta) rho^n.
struct FactorPair {
  double h;
  double j;
};

// phi(||x-y||) = 1/sqrt(t^2 + ||x-y||^2); in (0, 1/t], equal to 1/t iff x = y.
double phi_imq(Point2 x, Point2 y, const KernelParams& params);

// 1/||X-Y||. Throws when X = Y.
double green_exact(Point3 X, Point3 Y);

// Truncated spherical-harmonic expansion of 1/||X-Y||:
//   sum_{n<=M} sum_{m<=n} d_{n,m} P_n^m(cos th_y) P_n^m(cos th_x)
//                         cos(m(om_x - om_y)) rho_<^n / rho_>^{n+1}.
// Throws when ||X|| = ||Y|| (the two-branch form needs strict radius ordering).
double green_truncated(Point3 X, Point3 Y, int M);

// Theorem-1 tail bound r^{M+1}/(rho_major (1 - r)), r = rho_minor/rho_major.
// r = 0 (coincident-with-origin minor radius) yields 0; r >= 1 is rejected.
double truncation_error_bound(double rho_major, double r, int M);

// h and j factors of the relative vectors. ||X_rel|| must be positive;
// j at ||Y_rel|| = 0 is the continuity limit (1 for n = m = 0, else 0).
FactorPair factor_pair(int n, int m, Point3 X_rel, Point3 Y_rel);

// Translated expansion of phi around center z, sine/cosine split form:
//   sum d_{n,m} h_{n,m}(X-Z) j_{n,m}(Y-Z) [sin(m om_x)sin(m om_y) + cos(m om_x)cos(m om_y)].
// Requires the lifted radius of (Y-Z) strictly below that of (X-Z).
double translated_kernel_approx(Point2 x, Point2 y, Point2 z, const KernelParams& params, int M);

}  // namespace imq
