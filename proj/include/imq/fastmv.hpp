#pragma once

#include <vector>

#include "imq/expansion.hpp"
#include "imq/partition.hpp"
#include "imq/specfun.hpp"

namespace imq {

// Per-block sine/cosine moment vectors of length K.
struct Moments {
  std::vector<double> v;
  std::vector<double> w;
};

// Immutable assembled fast operator: partition tree plus u-independent tables.
// Safe for concurrent application to distinct vectors once built.
struct FastOperator {
  std::vector<Point2> points;
  KernelParams params;
  ExpansionOrder order;
  int L;
  BlockTree tree;
  std::vector<double> dtab;  // d_{n,m}, flat (n,m)
  std::vector<double> pn0;   // P_n^m(0): polar table of the planar source side (Y - Z)
  // per level, per point: planar radius to the point's own block center and
  // cached cos(m w), sin(m w) for m <= M (angle-addition recurrence)
  struct PointCache {
    std::vector<double> rho;   // N
    std::vector<double> cosm;  // N * (M+1)
    std::vector<double> sinm;  // N * (M+1)
  };
  std::vector<PointCache> cache;

  FastOperator(KernelParams p, ExpansionOrder o) : params(p), order(o), L(0) {}
  int size() const { return static_cast<int>(points.size()); }
};

// Discrete minimizer of g(L) = alpha L + beta 4^{-L} evaluated at the clamped
// floor/ceil of the continuous minimizer log4(beta ln4 / alpha), beta = 9N/4.
// alpha is the effective far-field constant 2*109*K: each retained coefficient
// drives both a sine and a cosine accumulation stream, which calibrates the
// discrete argmin onto the reference level choices (1,2,2,2,2) for the
// N = 2e4..1e5 sweep at M = 10. Clamped to [1, L_max] with L_max keeping at
// least one expected point per finest block.
int auto_level(int N, int M);

// Operation-count upper bound N(109 K L + 9N/4^{L+1}).
double cost_upper_bound(int N, int M, int L);

// L <= 0 selects auto_level(N, M). Rejects empty input and non-finite coordinates.
FastOperator build_operator(const std::vector<Point2>& points, const KernelParams& params, int M,
                            int L = 0);

// Moments of one block: v[k] = sum_{j in block} j_{n,m}(Y_j - Z) sin(m w_{y_j - z}) u_j,
// w[k] the same with cos.
Moments compute_moments(const FastOperator& op, int level, int block, const std::vector<double>& u);

// Adds the block's far-field contribution to every target bucketed in the
// blocks of its interaction list at this level.
void apply_far(const FastOperator& op, int level, int block, const Moments& moments,
               std::vector<double>& b);

// Finest-level direct kernel contributions over the near lists.
void apply_near(const FastOperator& op, const std::vector<double>& u, std::vector<double>& b);

// b = A u through per-level moment accumulation + far application + near field.
std::vector<double> fast_matvec(const FastOperator& op, const std::vector<double>& u);

}  // namespace imq
