#pragma once

#include <vector>

namespace imq {

// Truncation order M with derived coefficient count K = (M+1)(M+2)/2.
struct ExpansionOrder {
  int M;
  int K;
  explicit ExpansionOrder(int M_);
};

// Flat index of the pair (n, m), 0 <= m <= n: k = n(n+1)/2 + m, zero based,
// bijective onto {0, ..., K-1}.
int flat_index(int n, int m);
void inv_flat_index(int k, int* n, int* m);

// Neumann factor: 1 for m = 0, 2 otherwise.
double neumann(int m);

// d_{n,m} = eps_m (n-m)!/(n+m)!, computed multiplicatively so it stays finite
// for M up to at least 60.
double coeff_d(int n, int m);

// Associated Legendre function P_n^m(x) with the Condon-Shortley phase.
// Upward recurrence in n from P_m^m. Throws on m > n or |x| > 1.
double assoc_legendre(int n, int m, double x);

// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre(int n, double x);

// Fill out[flat_index(n,m)] = P_n^m(x) for all 0 <= m <= n <= M.
// sin_theta = sqrt(1-x^2) is taken from the caller so lifted geometry can pass
// the exact planar/vertical split instead of recomputing it from x.
void assoc_legendre_table(int M, double x, double sin_theta, double* out);
void assoc_legendre_table(int M, double x, double* out);

// d_{n,m} for all retained pairs, flat layout.
std::vector<double> coeff_d_table(int M);

}  // namespace imq
