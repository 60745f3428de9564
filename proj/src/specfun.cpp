#include "imq/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace imq {

ExpansionOrder::ExpansionOrder(int M_) : M(M_), K((M_ + 1) * (M_ + 2) / 2) {
  if (M_ < 0) throw std::invalid_argument("truncation index M must be >= 0");
}

int flat_index(int n, int m) {
  if (n < 0 || m < 0 || m > n) throw std::invalid_argument("flat_index: need 0 <= m <= n");
  return n * (n + 1) / 2 + m;
}

void inv_flat_index(int k, int* n, int* m) {
  if (k < 0) throw std::invalid_argument("inv_flat_index: k < 0");
  int nn = static_cast<int>((std::sqrt(8.0 * k + 1.0) - 1.0) / 2.0);
  while (nn * (nn + 1) / 2 > k) --nn;
  while ((nn + 1) * (nn + 2) / 2 <= k) ++nn;
  *n = nn;
  *m = k - nn * (nn + 1) / 2;
}

double neumann(int m) {
  if (m < 0) throw std::invalid_argument("neumann: m < 0");
  return m == 0 ? 1.0 : 2.0;
}

double coeff_d(int n, int m) {
  if (n < 0 || m < 0 || m > n) throw std::invalid_argument("coeff_d: need 0 <= m <= n");
  // eps_m * (n-m)!/(n+m)! = eps_m * prod_{k=n-m+1}^{n+m} 1/k
  double d = neumann(m);
  for (int k = n - m + 1; k <= n + m; ++k) d /= static_cast<double>(k);
  return d;
}

static void check_x(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("Legendre argument must satisfy |x| <= 1");
}

double assoc_legendre(int n, int m, double x) {
  if (n < 0 || m < 0 || m > n) throw std::invalid_argument("assoc_legendre: need 0 <= m <= n");
  check_x(x);
  double s = std::sqrt((1.0 - x) * (1.0 + x));
  // P_m^m = (-1)^m (2m-1)!! s^m
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= -(2.0 * k - 1.0) * s;
  if (n == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;  // P_{m+1}^m
  for (int nn = m + 2; nn <= n; ++nn) {
    double p = ((2.0 * nn - 1.0) * x * pm1 - (nn + m - 1.0) * pmm) / (nn - m);
    pmm = pm1;
    pm1 = p;
  }
  return pm1;
}

double legendre(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre: n < 0");
  check_x(x);
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p;
  }
  return p1;
}

void assoc_legendre_table(int M, double x, double sin_theta, double* out) {
  if (M < 0) throw std::invalid_argument("assoc_legendre_table: M < 0");
  check_x(x);
  double pmm = 1.0;
  for (int m = 0; m <= M; ++m) {
    if (m > 0) pmm *= -(2.0 * m - 1.0) * sin_theta;
    out[flat_index(m, m)] = pmm;
    if (m == M) break;
    double prev2 = pmm;
    double prev1 = x * (2.0 * m + 1.0) * pmm;
    out[flat_index(m + 1, m)] = prev1;
    for (int n = m + 2; n <= M; ++n) {
      double p = ((2.0 * n - 1.0) * x * prev1 - (n + m - 1.0) * prev2) / (n - m);
      out[flat_index(n, m)] = p;
      prev2 = prev1;
      prev1 = p;
    }
  }
}

void assoc_legendre_table(int M, double x, double* out) {
  assoc_legendre_table(M, x, std::sqrt((1.0 - x) * (1.0 + x)), out);
}

std::vector<double> coeff_d_table(int M) {
  ExpansionOrder ord(M);
  std::vector<double> d(ord.K);
  for (int n = 0; n <= M; ++n)
    for (int m = 0; m <= n; ++m) d[flat_index(n, m)] = coeff_d(n, m);
  return d;
}

}  // namespace imq
