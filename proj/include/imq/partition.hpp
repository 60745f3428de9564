#pragma once

#include <vector>

#include "imq/expansion.hpp"
#include "imq/geometry.hpp"

namespace imq {

struct Square {
  Point2 origin;
  double side;
};

// Block (i, j) of the 2^{level+1} x 2^{level+1} grid, level in [1, L].
struct BlockRef {
  int level;
  int i;
  int j;
};

// Multilevel partition of the bounding square. Level l (1-based) is a
// 2^{l+1} x 2^{l+1} grid; block id = i * grid + j. Every point lands in
// exactly one bucket per level (half-open cells, upper edges to the
// higher-index cell). Interaction lists S_p hold the well-separated blocks
// served at that level; near lists exist at the finest level only.
struct BlockTree {
  Square square;
  int L;
  struct Level {
    int grid;
    std::vector<std::vector<int>> buckets;
    std::vector<Point2> centers;
    std::vector<std::vector<int>> slist;
  };
  std::vector<Level> levels;              // levels[l-1]
  std::vector<std::vector<int>> near_lists;  // finest level, 3x3 clipped, includes self

  int block_of(int level, Point2 p) const;
  int block_id(BlockRef b) const { return b.i * levels[b.level - 1].grid + b.j; }
  BlockRef block_ref(int level, int id) const {
    int g = levels[level - 1].grid;
    return {level, id / g, id % g};
  }
};

// Smallest axis-aligned square containing the points, shorter axis centered,
// side inflated by 1e-9 relative (floor 1e-9) so the max corner stays strictly
// inside the half-open cover. Throws on empty input.
Square bounding_square(const std::vector<Point2>& points);

// Throws on L < 1. Points outside the square are clamped into boundary cells;
// callers are expected to pass a covering square.
BlockTree build_tree(const std::vector<Point2>& points, Square square, int L);

// Level 1: all blocks at Chebyshev index distance >= 2.
// Level >= 2: Chebyshev distance >= 2 with parents at Chebyshev distance <= 1.
std::vector<BlockRef> interaction_list(const BlockTree& tree, BlockRef p);

// Finest level only: the 3x3 Chebyshev neighborhood clipped to the grid.
std::vector<BlockRef> near_list(const BlockTree& tree, BlockRef p);

struct SeparationReport {
  double max_ratio;         // worst lifted rho_{y-z}/rho_{x-z} over all levels and list pairs
  double max_ratio_level1;  // same, level 1 only
  bool valid;               // max_ratio < 1/2
};

// Extremal-configuration ratio check: for each list pair, the farthest corner
// of the source block against the nearest point of the target block, both
// lifted with offset t (t >= 0 admits the planar limiting geometry).
SeparationReport verify_separation(const BlockTree& tree, double t);
SeparationReport verify_separation(const BlockTree& tree, const KernelParams& params);

}  // namespace imq
