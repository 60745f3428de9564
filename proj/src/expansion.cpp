#include "imq/expansion.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "imq/specfun.hpp"

namespace imq {

KernelParams::KernelParams(double t_) : t(t_) {
  if (!(t_ > 0.0) || !std::isfinite(t_)) throw std::invalid_argument("shape parameter t must be positive and finite");
}

double phi_imq(Point2 x, Point2 y, const KernelParams& params) {
  return 1.0 / std::sqrt(params.t * params.t + dist2(x, y));
}

double green_exact(Point3 X, Point3 Y) {
  double r = norm(X - Y);
  if (r == 0.0) throw std::invalid_argument("green_exact: X = Y is singular");
  return 1.0 / r;
}

double green_truncated(Point3 X, Point3 Y, int M) {
  if (M < 0) throw std::invalid_argument("green_truncated: M < 0");
  SphericalCoord sx = to_spherical(X), sy = to_spherical(Y);
  if (sx.rho == sy.rho) throw std::invalid_argument("green_truncated: expansion undefined for ||X|| = ||Y||");
  double rho_min = sx.rho, rho_max = sy.rho;
  if (rho_min > rho_max) std::swap(rho_min, rho_max);
  ExpansionOrder ord(M);
  std::vector<double> px(ord.K), py(ord.K);
  assoc_legendre_table(M, std::cos(sx.theta), std::sin(sx.theta), px.data());
  assoc_legendre_table(M, std::cos(sy.theta), std::sin(sy.theta), py.data());
  double dom = sx.omega - sy.omega;
  double sum = 0.0;
  double ratio_pow = 1.0;  // rho_<^n / rho_>^n
  double inv_major = 1.0 / rho_max;
  for (int n = 0; n <= M; ++n) {
    double radial = ratio_pow * inv_major;  // rho_<^n / rho_>^{n+1}
    for (int m = 0; m <= n; ++m) {
      int k = flat_index(n, m);
      sum += coeff_d(n, m) * py[k] * px[k] * std::cos(m * dom) * radial;
    }
    ratio_pow *= rho_min * inv_major;
  }
  return sum;
}

double truncation_error_bound(double rho_major, double r, int M) {
  if (M < 0) throw std::invalid_argument("truncation_error_bound: M < 0");
  if (!(rho_major > 0.0)) throw std::invalid_argument("truncation_error_bound: rho_major must be positive");
  if (r == 0.0) return 0.0;
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("truncation_error_bound: need 0 <= r < 1");
  return std::pow(r, M + 1) / (rho_major * (1.0 - r));
}

// Polar cosine straight from the coordinate ratio: a planar vector yields an
// exact 0, which the Legendre recurrence propagates to exact parity zeros.
static double polar_cos(Point3 v, double rho) {
  return std::min(1.0, std::max(-1.0, v.X3 / rho));
}

FactorPair factor_pair(int n, int m, Point3 X_rel, Point3 Y_rel) {
  if (n < 0 || m < 0 || m > n) throw std::invalid_argument("factor_pair: need 0 <= m <= n");
  double rx = norm(X_rel);
  if (rx == 0.0) throw std::invalid_argument("factor_pair: h undefined at ||X_rel|| = 0");
  double h = assoc_legendre(n, m, polar_cos(X_rel, rx)) / std::pow(rx, n + 1);
  double ry = norm(Y_rel);
  double j;
  if (ry == 0.0) {
    j = (n == 0) ? 1.0 : 0.0;  // continuity limit of rho^n P_n^m
  } else {
    j = assoc_legendre(n, m, polar_cos(Y_rel, ry)) * std::pow(ry, n);
  }
  return {h, j};
}

double translated_kernel_approx(Point2 x, Point2 y, Point2 z, const KernelParams& params, int M) {
  if (M < 0) throw std::invalid_argument("translated_kernel_approx: M < 0");
  LiftedPair XY = lift_pair(x, y, params.t);
  Point3 Z = lift_center(z, params.t);
  SphericalCoord sx = to_spherical(XY.X - Z), sy = to_spherical(XY.Y - Z);
  if (sy.rho >= sx.rho) throw std::invalid_argument("translated_kernel_approx: need rho_{y-z} < rho_{x-z}");
  ExpansionOrder ord(M);
  std::vector<double> px(ord.K), py(ord.K);
  assoc_legendre_table(M, std::cos(sx.theta), std::sin(sx.theta), px.data());
  assoc_legendre_table(M, std::cos(sy.theta), std::sin(sy.theta), py.data());
  double sum = 0.0;
  double rho_y_pow = 1.0;
  double inv_rho_x = 1.0 / sx.rho;
  double rho_x_pow = inv_rho_x;  // 1/rho_x^{n+1}
  for (int n = 0; n <= M; ++n) {
    for (int m = 0; m <= n; ++m) {
      int k = flat_index(n, m);
      double h = px[k] * rho_x_pow;
      double j = py[k] * rho_y_pow;
      double trig = std::sin(m * sx.omega) * std::sin(m * sy.omega) +
                    std::cos(m * sx.omega) * std::cos(m * sy.omega);
      sum += coeff_d(n, m) * h * j * trig;
    }
    rho_y_pow *= sy.rho;
    rho_x_pow *= inv_rho_x;
  }
  return sum;
}

}  // namespace imq
