#pragma once

#include <cstddef>
#include <vector>

#include "nus/sampler.hpp"
#include "nus/signal.hpp"

namespace nus {

struct TreeNode {
  std::size_t left = 0;   ///< first grid cell
  std::size_t right = 0;  ///< one past the last grid cell
  double mean = 0.0;
  double error = 0.0;     ///< sum of squared deviations times the cell width
  bool leaf = false;
  bool present = true;    ///< false under a pruned ancestor
};

/// Dyadic tree stored level by level: level l holds 2^l nodes, node m of
/// level l has children 2m and 2m + 1 on level l + 1.
struct DyadicTree {
  unsigned depth = 0;
  std::size_t n_u = 0;
  std::vector<std::vector<TreeNode>> levels;

  const TreeNode& root() const { return levels.front().front(); }
  std::size_t leaf_count() const;
  /// Leaves from left to right.
  std::vector<const TreeNode*> leaves() const;
  /// Sum of leaf errors.
  double distortion() const;
};

struct LagrangeParams {
  double mu = 0.0;
};

DyadicTree build_full_tree(const UniformSignal& signal, unsigned depth);

/// Bottom-up: sibling leaves merge into their parent when their combined
/// cost err + mu exceeds the parent's. The sweep climbs one level at a time
/// and stops at the first level where nothing merged.
DyadicTree prune(const DyadicTree& tree, LagrangeParams params);

/// Sum over leaves of err + mu.
double lagrangian_cost(const DyadicTree& tree, double mu);

PiecewiseConstant tree_sample(const DyadicTree& tree);

/// Preorder node flags, 1 for an internal node and 0 for a leaf.
std::vector<bool> tree_structure_bits(const DyadicTree& tree);

/// (2L - 1) structure bits plus L samples of bits_per_sample.
std::size_t tree_rate_bits(const DyadicTree& tree, unsigned bits_per_sample);

/// Log-spaced price grid whose ends give the full tree and the root.
std::vector<double> default_mu_grid(const DyadicTree& full, std::size_t points = 64);

}  // namespace nus
