#include "imq/fastmv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace imq {

int auto_level(int N, int M) {
  if (N < 1) throw std::invalid_argument("auto_level: N must be >= 1");
  ExpansionOrder ord(M);
  double alpha = 2.0 * 109.0 * ord.K;
  double beta = 2.25 * N;  // 9N/4
  double lam = std::log(beta * std::log(4.0) / alpha) / std::log(4.0);
  int lmax = std::max(1, static_cast<int>(std::floor(std::log(static_cast<double>(N)) / std::log(4.0))) - 1);
  auto g = [&](int L) { return alpha * L + beta * std::pow(4.0, -L); };
  int lo = std::clamp(static_cast<int>(std::floor(lam)), 1, lmax);
  int hi = std::clamp(static_cast<int>(std::ceil(lam)), 1, lmax);
  return g(hi) < g(lo) ? hi : lo;
}

double cost_upper_bound(int N, int M, int L) {
  if (N < 1 || L < 1) throw std::invalid_argument("cost_upper_bound: need N >= 1, L >= 1");
  ExpansionOrder ord(M);
  return N * (109.0 * ord.K * L + 9.0 * N / std::pow(4.0, L + 1));
}

FastOperator build_operator(const std::vector<Point2>& points, const KernelParams& params, int M,
                            int L) {
  if (points.empty()) throw std::invalid_argument("build_operator: empty point set");
  for (const Point2& p : points)
    if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
      throw std::invalid_argument("build_operator: non-finite coordinate");
  int N = static_cast<int>(points.size());
  if (L <= 0) L = auto_level(N, M);
  FastOperator op(params, ExpansionOrder(M));
  op.points = points;
  op.L = L;
  op.tree = build_tree(points, bounding_square(points), L);
  op.dtab = coeff_d_table(M);
  op.pn0.resize(op.order.K);
  assoc_legendre_table(M, 0.0, 1.0, op.pn0.data());
  op.cache.resize(L);
  for (int l = 1; l <= L; ++l) {
    const BlockTree::Level& lv = op.tree.levels[l - 1];
    FastOperator::PointCache& pc = op.cache[l - 1];
    pc.rho.assign(N, 0.0);
    pc.cosm.assign(static_cast<size_t>(N) * (M + 1), 0.0);
    pc.sinm.assign(static_cast<size_t>(N) * (M + 1), 0.0);
    for (int blk = 0; blk < static_cast<int>(lv.buckets.size()); ++blk) {
      Point2 z = lv.centers[blk];
      for (int j : lv.buckets[blk]) {
        double dx = points[j].x1 - z.x1, dy = points[j].x2 - z.x2;
        double rho = std::sqrt(dx * dx + dy * dy);
        pc.rho[j] = rho;
        double cw = 1.0, sw = 0.0;  // omega = 0 convention at rho = 0
        if (rho > 0.0) {
          cw = dx / rho;
          sw = dy / rho;
        }
        double* cm = &pc.cosm[static_cast<size_t>(j) * (M + 1)];
        double* sm = &pc.sinm[static_cast<size_t>(j) * (M + 1)];
        cm[0] = 1.0;
        sm[0] = 0.0;
        for (int m = 1; m <= M; ++m) {
          cm[m] = cm[m - 1] * cw - sm[m - 1] * sw;
          sm[m] = sm[m - 1] * cw + cm[m - 1] * sw;
        }
      }
    }
  }
  return op;
}

static void accumulate_moments(const FastOperator& op, int level, int block, const double* u,
                               double* v, double* w) {
  const BlockTree::Level& lv = op.tree.levels[level - 1];
  const FastOperator::PointCache& pc = op.cache[level - 1];
  int M = op.order.M;
  for (int j : lv.buckets[block]) {
    double uj = u[j];
    double rho = pc.rho[j];
    const double* cm = &pc.cosm[static_cast<size_t>(j) * (M + 1)];
    const double* sm = &pc.sinm[static_cast<size_t>(j) * (M + 1)];
    double rho_pow = 1.0;
    int k = 0;
    for (int n = 0; n <= M; ++n) {
      for (int m = 0; m <= n; ++m, ++k) {
        double jf = op.pn0[k] * rho_pow * uj;  // j_{n,m}(Y_j - Z), planar source side
        v[k] += jf * sm[m];
        w[k] += jf * cm[m];
      }
      rho_pow *= rho;
    }
  }
}

// Far-field contribution of source block src (its moments v, w) to the targets
// bucketed in block tgt at the same level. Scratch buffers: ptab (K), cmv/smv (M+1).
static void accumulate_far_block(const FastOperator& op, int level, int src, int tgt,
                                 const double* v, const double* w, double* b, double* ptab,
                                 double* cmv, double* smv) {
  const BlockTree::Level& lv = op.tree.levels[level - 1];
  Point2 z = lv.centers[src];
  double t = op.params.t;
  int M = op.order.M;
  for (int i : lv.buckets[tgt]) {
    double dx = op.points[i].x1 - z.x1, dy = op.points[i].x2 - z.x2;
    double rpl2 = dx * dx + dy * dy;
    double rho = std::sqrt(rpl2 + t * t);
    double rpl = std::sqrt(rpl2);
    // well-separated blocks keep rpl strictly positive
    assoc_legendre_table(M, t / rho, rpl / rho, ptab);
    double cw = dx / rpl, sw = dy / rpl;
    cmv[0] = 1.0;
    smv[0] = 0.0;
    for (int m = 1; m <= M; ++m) {
      cmv[m] = cmv[m - 1] * cw - smv[m - 1] * sw;
      smv[m] = smv[m - 1] * cw + cmv[m - 1] * sw;
    }
    double acc = 0.0;
    double inv = 1.0 / rho;
    double rpow = inv;  // 1/rho^{n+1}
    int k = 0;
    for (int n = 0; n <= M; ++n) {
      for (int m = 0; m <= n; ++m, ++k) {
        double hd = op.dtab[k] * ptab[k] * rpow;  // d_{n,m} folded into h_{n,m}(X_i - Z)
        acc += hd * (smv[m] * v[k] + cmv[m] * w[k]);
      }
      rpow *= inv;
    }
    b[i] += acc;
  }
}

Moments compute_moments(const FastOperator& op, int level, int block, const std::vector<double>& u) {
  if (level < 1 || level > op.L) throw std::invalid_argument("compute_moments: level out of range");
  if (static_cast<int>(u.size()) != op.size()) throw std::invalid_argument("compute_moments: length mismatch");
  Moments mom;
  mom.v.assign(op.order.K, 0.0);
  mom.w.assign(op.order.K, 0.0);
  accumulate_moments(op, level, block, u.data(), mom.v.data(), mom.w.data());
  return mom;
}

void apply_far(const FastOperator& op, int level, int block, const Moments& moments,
               std::vector<double>& b) {
  if (level < 1 || level > op.L) throw std::invalid_argument("apply_far: level out of range");
  if (static_cast<int>(b.size()) != op.size()) throw std::invalid_argument("apply_far: length mismatch");
  const BlockTree::Level& lv = op.tree.levels[level - 1];
  std::vector<double> ptab(op.order.K), cmv(op.order.M + 1), smv(op.order.M + 1);
  for (int tgt : lv.slist[block])
    accumulate_far_block(op, level, block, tgt, moments.v.data(), moments.w.data(), b.data(),
                         ptab.data(), cmv.data(), smv.data());
}

void apply_near(const FastOperator& op, const std::vector<double>& u, std::vector<double>& b) {
  if (static_cast<int>(u.size()) != op.size() || static_cast<int>(b.size()) != op.size())
    throw std::invalid_argument("apply_near: length mismatch");
  const BlockTree::Level& fin = op.tree.levels[op.L - 1];
  double t2 = op.params.t * op.params.t;
  int nb = fin.grid * fin.grid;
#pragma omp parallel for schedule(static)
  for (int tgt = 0; tgt < nb; ++tgt) {
    if (fin.buckets[tgt].empty()) continue;
    for (int i : fin.buckets[tgt]) {
      Point2 xi = op.points[i];
      double acc = 0.0;
      for (int src : op.tree.near_lists[tgt]) {
        for (int j : fin.buckets[src]) {
          double dx = xi.x1 - op.points[j].x1, dy = xi.x2 - op.points[j].x2;
          acc += u[j] / std::sqrt(t2 + dx * dx + dy * dy);
        }
      }
      b[i] += acc;
    }
  }
}

std::vector<double> fast_matvec(const FastOperator& op, const std::vector<double>& u) {
  int N = op.size();
  if (static_cast<int>(u.size()) != N) throw std::invalid_argument("fast_matvec: length mismatch");
  std::vector<double> b(N, 0.0);
  int K = op.order.K;
  for (int l = 1; l <= op.L; ++l) {
    const BlockTree::Level& lv = op.tree.levels[l - 1];
    int nb = lv.grid * lv.grid;
    std::vector<double> mv(static_cast<size_t>(nb) * K, 0.0), mw(static_cast<size_t>(nb) * K, 0.0);
#pragma omp parallel for schedule(static)
    for (int blk = 0; blk < nb; ++blk) {
      if (lv.buckets[blk].empty()) continue;
      accumulate_moments(op, l, blk, u.data(), &mv[static_cast<size_t>(blk) * K],
                         &mw[static_cast<size_t>(blk) * K]);
    }
    // target-major far field: each b_i is written by exactly one block's loop
#pragma omp parallel
    {
      std::vector<double> ptab(K), cmv(op.order.M + 1), smv(op.order.M + 1);
#pragma omp for schedule(static)
      for (int tgt = 0; tgt < nb; ++tgt) {
        if (lv.buckets[tgt].empty()) continue;
        for (int src : lv.slist[tgt]) {
          if (lv.buckets[src].empty()) continue;
          accumulate_far_block(op, l, src, tgt, &mv[static_cast<size_t>(src) * K],
                               &mw[static_cast<size_t>(src) * K], b.data(), ptab.data(),
                               cmv.data(), smv.data());
        }
      }
    }
  }
  apply_near(op, u, b);
  return b;
}

}  // namespace imq
