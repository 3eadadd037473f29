#include "nus/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nus/error.hpp"

namespace nus {

namespace {

double merge_gain(const TreeNode& parent, const TreeNode& l, const TreeNode& r) {
  return parent.error - l.error - r.error;
}

void preorder(const DyadicTree& t, unsigned level, std::size_t m, std::vector<bool>& out) {
  const TreeNode& node = t.levels[level][m];
  out.push_back(!node.leaf);
  if (!node.leaf) {
    preorder(t, level + 1, 2 * m, out);
    preorder(t, level + 1, 2 * m + 1, out);
  }
}

}  // namespace

std::size_t DyadicTree::leaf_count() const {
  std::size_t n = 0;
  for (const auto& level : levels)
    for (const auto& node : level) n += node.present && node.leaf;
  return n;
}

std::vector<const TreeNode*> DyadicTree::leaves() const {
  std::vector<const TreeNode*> out;
  for (const auto& level : levels)
    for (const auto& node : level)
      if (node.present && node.leaf) out.push_back(&node);
  std::sort(out.begin(), out.end(), [](const TreeNode* a, const TreeNode* b) { return a->left < b->left; });
  return out;
}

double DyadicTree::distortion() const {
  double d = 0.0;
  for (const TreeNode* leaf : leaves()) d += leaf->error;
  return d;
}

DyadicTree build_full_tree(const UniformSignal& signal, unsigned depth) {
  const std::size_t n_u = signal.size();
  if (depth > 30 || (std::size_t{1} << depth) > n_u) throw ParameterError("tree depth exceeds the grid");
  const std::size_t cells = std::size_t{1} << depth;
  if (n_u % cells != 0) throw ParameterError("N_U must be divisible by 2^depth");

  DyadicTree t{depth, n_u, std::vector<std::vector<TreeNode>>(depth + 1)};
  const double dt = signal.cell_width();
  const std::size_t width = n_u / cells;
  auto& bottom = t.levels[depth];
  bottom.resize(cells);
  for (std::size_t m = 0; m < cells; ++m) {
    TreeNode& node = bottom[m];
    node.left = m * width;
    node.right = node.left + width;
    node.leaf = true;
    double sum = 0.0;
    for (std::size_t k = node.left; k < node.right; ++k) sum += signal[k];
    node.mean = sum / static_cast<double>(width);
    double sq = 0.0;
    for (std::size_t k = node.left; k < node.right; ++k) sq += (signal[k] - node.mean) * (signal[k] - node.mean);
    node.error = sq * dt;
  }
  // Parents from children via the variance decomposition, which keeps
  // err(parent) >= err(left) + err(right) exact in floating point.
  for (unsigned l = depth; l-- > 0;) {
    auto& level = t.levels[l];
    const auto& below = t.levels[l + 1];
    level.resize(below.size() / 2);
    for (std::size_t m = 0; m < level.size(); ++m) {
      const TreeNode& a = below[2 * m];
      const TreeNode& b = below[2 * m + 1];
      const double na = static_cast<double>(a.right - a.left);
      const double nb = static_cast<double>(b.right - b.left);
      const double gap = a.mean - b.mean;
      TreeNode& p = level[m];
      p.left = a.left;
      p.right = b.right;
      p.mean = (na * a.mean + nb * b.mean) / (na + nb);
      p.error = a.error + b.error + na * nb / (na + nb) * gap * gap * dt;
    }
  }
  return t;
}

DyadicTree prune(const DyadicTree& tree, LagrangeParams params) {
  if (!(params.mu >= 0.0)) throw ParameterError("mu must be non-negative");
  DyadicTree t = tree;
  for (unsigned l = t.depth; l-- > 0;) {
    bool merged = false;
    auto& level = t.levels[l];
    auto& below = t.levels[l + 1];
    for (std::size_t m = 0; m < level.size(); ++m) {
      TreeNode& p = level[m];
      TreeNode& a = below[2 * m];
      TreeNode& b = below[2 * m + 1];
      if (!p.present || p.leaf || !a.leaf || !b.leaf) continue;
      const double children = a.error + b.error + 2.0 * params.mu;
      if (children > p.error + params.mu) {
        p.leaf = true;
        a.present = b.present = false;
        merged = true;
      }
    }
    if (!merged) break;
  }
  // Anything below a removed node is gone too.
  for (unsigned l = 1; l <= t.depth; ++l)
    for (std::size_t m = 0; m < t.levels[l].size(); ++m) {
      const TreeNode& parent = t.levels[l - 1][m / 2];
      if (!parent.present || parent.leaf) t.levels[l][m].present = false;
    }
  return t;
}

double lagrangian_cost(const DyadicTree& tree, double mu) {
  double c = 0.0;
  for (const TreeNode* leaf : tree.leaves()) c += leaf->error + mu;
  return c;
}

PiecewiseConstant tree_sample(const DyadicTree& tree) {
  const auto leaves = tree.leaves();
  std::vector<std::size_t> b{0};
  std::vector<double> samples;
  for (const TreeNode* leaf : leaves) {
    b.push_back(leaf->right);
    samples.push_back(leaf->mean);
  }
  return PiecewiseConstant{Segmentation(std::move(b)), std::move(samples)};
}

std::vector<bool> tree_structure_bits(const DyadicTree& tree) {
  std::vector<bool> out;
  preorder(tree, 0, 0, out);
  return out;
}

std::size_t tree_rate_bits(const DyadicTree& tree, unsigned bits_per_sample) {
  const std::size_t l = tree.leaf_count();
  return (2 * l - 1) + l * bits_per_sample;
}

std::vector<double> default_mu_grid(const DyadicTree& full, std::size_t points) {
  if (points < 2) throw ParameterError("mu grid needs at least two points");
  double min_gain = std::numeric_limits<double>::infinity();
  for (unsigned l = 0; l < full.depth; ++l)
    for (std::size_t m = 0; m < full.levels[l].size(); ++m) {
      const double g =
          merge_gain(full.levels[l][m], full.levels[l + 1][2 * m], full.levels[l + 1][2 * m + 1]);
      if (g > 0.0) min_gain = std::min(min_gain, g);
    }
  const double hi = full.root().error + 1.0;
  double lo = std::isfinite(min_gain) ? 0.5 * min_gain : hi * 1e-12;
  lo = std::max(lo, hi * 1e-12);
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

}  // namespace nus
