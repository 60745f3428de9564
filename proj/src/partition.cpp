#include "imq/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imq {

Square bounding_square(const std::vector<Point2>& points) {
  if (points.empty()) throw std::invalid_argument("bounding_square: empty point set");
  double minx = points[0].x1, maxx = minx, miny = points[0].x2, maxy = miny;
  for (const Point2& p : points) {
    minx = std::min(minx, p.x1);
    maxx = std::max(maxx, p.x1);
    miny = std::min(miny, p.x2);
    maxy = std::max(maxy, p.x2);
  }
  double dx = maxx - minx, dy = maxy - miny;
  double side = std::max(dx, dy);
  side = side > 0.0 ? side * (1.0 + 1e-9) : 1e-9;
  // center the shorter axis inside the square
  return {{minx - 0.5 * (side - dx), miny - 0.5 * (side - dy)}, side};
}

int BlockTree::block_of(int level, Point2 p) const {
  const Level& lv = levels[level - 1];
  double cell = square.side / lv.grid;
  int i = static_cast<int>(std::floor((p.x1 - square.origin.x1) / cell));
  int j = static_cast<int>(std::floor((p.x2 - square.origin.x2) / cell));
  i = std::clamp(i, 0, lv.grid - 1);
  j = std::clamp(j, 0, lv.grid - 1);
  return i * lv.grid + j;
}

BlockTree build_tree(const std::vector<Point2>& points, Square square, int L) {
  if (L < 1) throw std::invalid_argument("build_tree: L must be >= 1");
  if (!(square.side > 0.0)) throw std::invalid_argument("build_tree: square side must be positive");
  BlockTree tree;
  tree.square = square;
  tree.L = L;
  tree.levels.resize(L);
  for (int l = 1; l <= L; ++l) {
    BlockTree::Level& lv = tree.levels[l - 1];
    lv.grid = 1 << (l + 1);
    int nb = lv.grid * lv.grid;
    lv.buckets.assign(nb, {});
    lv.centers.resize(nb);
    double cell = square.side / lv.grid;
    for (int i = 0; i < lv.grid; ++i)
      for (int j = 0; j < lv.grid; ++j)
        lv.centers[i * lv.grid + j] = {square.origin.x1 + (i + 0.5) * cell,
                                       square.origin.x2 + (j + 0.5) * cell};
    for (int idx = 0; idx < static_cast<int>(points.size()); ++idx)
      lv.buckets[tree.block_of(l, points[idx])].push_back(idx);
    // interaction lists
    lv.slist.assign(nb, {});
    for (int i = 0; i < lv.grid; ++i) {
      for (int j = 0; j < lv.grid; ++j) {
        std::vector<int>& s = lv.slist[i * lv.grid + j];
        for (int qi = 0; qi < lv.grid; ++qi) {
          for (int qj = 0; qj < lv.grid; ++qj) {
            int cheb = std::max(std::abs(qi - i), std::abs(qj - j));
            if (cheb < 2) continue;
            if (l >= 2) {
              int pcheb = std::max(std::abs(qi / 2 - i / 2), std::abs(qj / 2 - j / 2));
              if (pcheb > 1) continue;  // covered at a coarser level
            }
            s.push_back(qi * lv.grid + qj);
          }
        }
      }
    }
  }
  // near lists at the finest level
  const BlockTree::Level& fin = tree.levels[L - 1];
  tree.near_lists.assign(fin.grid * fin.grid, {});
  for (int i = 0; i < fin.grid; ++i)
    for (int j = 0; j < fin.grid; ++j) {
      std::vector<int>& ns = tree.near_lists[i * fin.grid + j];
      for (int qi = std::max(0, i - 1); qi <= std::min(fin.grid - 1, i + 1); ++qi)
        for (int qj = std::max(0, j - 1); qj <= std::min(fin.grid - 1, j + 1); ++qj)
          ns.push_back(qi * fin.grid + qj);
    }
  return tree;
}

static void check_ref(const BlockTree& tree, BlockRef p, bool finest_only) {
  if (p.level < 1 || p.level > tree.L) throw std::invalid_argument("block level out of range");
  if (finest_only && p.level != tree.L) throw std::invalid_argument("near_list: block must be at the finest level");
  int g = tree.levels[p.level - 1].grid;
  if (p.i < 0 || p.i >= g || p.j < 0 || p.j >= g) throw std::invalid_argument("block index out of range");
}

std::vector<BlockRef> interaction_list(const BlockTree& tree, BlockRef p) {
  check_ref(tree, p, false);
  std::vector<BlockRef> out;
  for (int id : tree.levels[p.level - 1].slist[tree.block_id(p)]) out.push_back(tree.block_ref(p.level, id));
  return out;
}

std::vector<BlockRef> near_list(const BlockTree& tree, BlockRef p) {
  check_ref(tree, p, true);
  std::vector<BlockRef> out;
  for (int id : tree.near_lists[tree.block_id(p)]) out.push_back(tree.block_ref(p.level, id));
  return out;
}

// nearest planar distance from point c to the axis-aligned cell (bi, bj)
static double point_to_block(Point2 c, Square sq, int grid, int bi, int bj) {
  double cell = sq.side / grid;
  double x0 = sq.origin.x1 + bi * cell, y0 = sq.origin.x2 + bj * cell;
  double dx = std::max({x0 - c.x1, 0.0, c.x1 - (x0 + cell)});
  double dy = std::max({y0 - c.x2, 0.0, c.x2 - (y0 + cell)});
  return std::sqrt(dx * dx + dy * dy);
}

SeparationReport verify_separation(const BlockTree& tree, double t) {
  if (t < 0.0) throw std::invalid_argument("verify_separation: t must be >= 0");
  SeparationReport rep{0.0, 0.0, true};
  for (int l = 1; l <= tree.L; ++l) {
    const BlockTree::Level& lv = tree.levels[l - 1];
    double cell = tree.square.side / lv.grid;
    // farthest corner of any block from its own center, lifted onto the source plane
    double rho_yz = cell * std::sqrt(0.5);
    for (int pi = 0; pi < lv.grid; ++pi) {
      for (int pj = 0; pj < lv.grid; ++pj) {
        Point2 z = lv.centers[pi * lv.grid + pj];
        for (int qid : lv.slist[pi * lv.grid + pj]) {
          int qi = qid / lv.grid, qj = qid % lv.grid;
          double planar = point_to_block(z, tree.square, lv.grid, qi, qj);
          double rho_xz = std::sqrt(planar * planar + t * t);
          double ratio = rho_yz / rho_xz;
          rep.max_ratio = std::max(rep.max_ratio, ratio);
          if (l == 1) rep.max_ratio_level1 = std::max(rep.max_ratio_level1, ratio);
        }
      }
    }
  }
  rep.valid = rep.max_ratio < 0.5;
  return rep;
}

SeparationReport verify_separation(const BlockTree& tree, const KernelParams& params) {
  return verify_separation(tree, params.t);
}

}  // namespace imq
