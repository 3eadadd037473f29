#include <doctest.h>

#include <cmath>

#include "nus/error.hpp"
#include "nus/tree.hpp"

using namespace nus;

namespace {
UniformSignal make(const char* spec, std::size_t nu) { return generate(AnalyticSignalSpec::parse(spec), nu); }
}  // namespace

TEST_CASE("full tree layout") {
  const auto t = build_full_tree(make("linear:slope=1", 1024), 3);
  REQUIRE(t.levels.size() == 4);
  for (unsigned l = 0; l <= 3; ++l) CHECK(t.levels[l].size() == (std::size_t{1} << l));
  CHECK(t.leaf_count() == 8);
  CHECK(t.root().left == 0);
  CHECK(t.root().right == 1024);
  const auto leaves = t.leaves();
  for (std::size_t m = 0; m < leaves.size(); ++m) CHECK(leaves[m]->left == m * 128);

  const auto zero = build_full_tree(make("linear:slope=1", 1024), 0);
  CHECK(zero.leaf_count() == 1);
  CHECK(tree_structure_bits(zero) == std::vector<bool>{false});

  CHECK_THROWS_AS(build_full_tree(make("linear:slope=1", 1000), 4), ParameterError);
  CHECK_THROWS_AS(build_full_tree(make("linear:slope=1", 8), 4), ParameterError);
}

TEST_CASE("node errors") {
  // Leaf of n points with spacing h on a unit ramp: n * h * h^2 (n^2 - 1) / 12,
  // which tends to (1/2)^3 / 12 for a half-interval.
  const std::size_t nu = 1000;
  const auto t = build_full_tree(make("linear:slope=1", nu), 1);
  const double h = 1.0 / nu, n = 500.0;
  for (const TreeNode* leaf : t.leaves()) {
    CHECK(leaf->error == doctest::Approx(n * h * h * h * (n * n - 1.0) / 12.0).epsilon(1e-9));
    CHECK(leaf->error == doctest::Approx(0.125 / 12.0).epsilon(1e-5));
  }
  // Parent from the decomposition equals the direct whole-interval value.
  CHECK(t.root().error == doctest::Approx(1000.0 * h * h * h * (1e6 - 1.0) / 12.0).epsilon(1e-9));
  CHECK(t.root().mean == doctest::Approx(0.4995));
}

TEST_CASE("pruning") {
  SUBCASE("a constant signal collapses to the root for any positive mu") {
    const auto t = prune(build_full_tree(UniformSignal(std::vector<double>(256, 3.0)), 6), {1e-12});
    CHECK(t.leaf_count() == 1);
    CHECK(t.root().leaf);
    CHECK(tree_structure_bits(t) == std::vector<bool>{false});
  }
  SUBCASE("mu = 0 keeps every leaf") {
    const auto full = build_full_tree(make("cos:alpha=5,scale=255", 4096), 8);
    CHECK(prune(full, {0.0}).leaf_count() == 256);
  }
  SUBCASE("leaf counts fall and costs never rise as mu grows") {
    const auto full = build_full_tree(make("chirp:alpha=5,scale=255", 1 << 14), 10);
    std::size_t prev = full.leaf_count() + 1;
    for (double mu : default_mu_grid(full)) {
      const auto p = prune(full, {mu});
      CHECK(p.leaf_count() <= prev);
      prev = p.leaf_count();
      CHECK(lagrangian_cost(p, mu) <= lagrangian_cost(full, mu) * (1 + 1e-12));
      CHECK(p.distortion() >= full.distortion() * (1 - 1e-12));
      // A second pass finds nothing to merge.
      CHECK(prune(p, {mu}).leaf_count() == p.leaf_count());
    }
    CHECK(prev == 1);
  }
  SUBCASE("the grid reaches the full tree at its lower end") {
    const auto full = build_full_tree(make("cos:alpha=5,scale=255", 4096), 8);
    const auto grid = default_mu_grid(full);
    CHECK(grid.size() == 64);
    CHECK(prune(full, {grid.front()}).leaf_count() == 256);
    CHECK(prune(full, {grid.back()}).leaf_count() == 1);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  }
  CHECK_THROWS_AS(prune(build_full_tree(make("linear:slope=1", 64), 2), {-1.0}), ParameterError);
}

TEST_CASE("structure and rate") {
  const auto full = build_full_tree(make("linear:slope=1", 64), 2);
  CHECK(tree_structure_bits(full) == std::vector<bool>{true, true, false, false, true, false, false});
  CHECK(tree_rate_bits(full, 8) == 7 + 32);
  const auto root = prune(full, {1e9});
  CHECK(tree_rate_bits(root, 8) == 9);
  for (unsigned d = 0; d <= 5; ++d) {
    const auto t = build_full_tree(make("linear:slope=1", 64), d);
    CHECK(tree_structure_bits(t).size() == 2 * t.leaf_count() - 1);
  }
}

TEST_CASE("tree samples are the leaf means") {
  const auto s = make("cos:alpha=5,scale=255", 4096);
  const auto full = build_full_tree(s, 7);
  const auto p = prune(full, {default_mu_grid(full)[40]});
  const auto pc = tree_sample(p);
  CHECK(pc.samples.size() == p.leaf_count());
  const auto direct = optimal_samples(s, pc.segmentation);
  for (std::size_t i = 0; i < pc.samples.size(); ++i)
    CHECK(pc.samples[i] == doctest::Approx(direct.samples[i]).epsilon(1e-9).scale(255.0));
  CHECK(empirical_mse(s, pc) == doctest::Approx(p.distortion()).epsilon(1e-9));
}
