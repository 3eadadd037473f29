#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "nus/codec.hpp"
#include "nus/signal.hpp"
#include "nus/tree.hpp"

namespace nus {

struct TreeSweepRow {
  double mu = 0.0;
  std::size_t leaves = 0;
  std::size_t bits = 0;        ///< structure + quantized samples
  double mse = 0.0;            ///< unquantized leaf means
  double mse_quantized = 0.0;  ///< leaf means through the fixed-rate quantizer
};

struct TreeCodecConfig {
  unsigned bits_per_sample = 8;
  double phi_min = -255.0;
  double phi_max = 255.0;
};

TreeSweepRow tree_point(const UniformSignal& signal, const DyadicTree& pruned, double mu,
                        const TreeCodecConfig& cfg = {});

std::vector<TreeSweepRow> tree_sweep(const UniformSignal& signal, const DyadicTree& full,
                                     const std::vector<double>& mu_grid, const TreeCodecConfig& cfg = {});

/// Pruned tree with the most leaves not above `max_leaves`, found by
/// bisecting mu. Falls back to the root.
DyadicTree tree_for_budget(const DyadicTree& full, std::size_t max_leaves);

/// Distinct leaf counts reached on the grid, ascending. Throws
/// ParameterError on an empty grid.
std::vector<std::size_t> budgets_from_mu_grid(const DyadicTree& full, const std::vector<double>& mu_grid);

struct SamplingRow {
  std::size_t n = 0;
  double mse_opt_empirical = 0.0;  ///< threshold segmentation + segment means
  double mse_opt_theory = 0.0;     ///< high-resolution prediction
  double mse_uniform = 0.0;
  double mse_tree = 0.0;
  std::size_t tree_leaves = 0;
  double energy = 0.0;             ///< for normalised curves
};

SamplingRow sampling_point(const UniformSignal& signal, const DyadicTree& full, std::size_t n);
std::vector<SamplingRow> bench_sampling(const UniformSignal& signal, unsigned depth,
                                        const std::vector<double>& mu_grid);

struct CodecRow {
  std::size_t n = 0;         ///< requested budget
  std::size_t segments = 0;  ///< segments actually produced
  std::size_t extrema = 0;
  std::size_t stream_bits = 0;
  double bits_per_sample = 0.0;
  double payload_bits_per_sample = 0.0;
  double mse = 0.0;          ///< of the reconstruction from the decoded stream
};

CodecRow codec_point(const UniformSignal& signal, std::size_t n, const CodecConfig& cfg = {});
std::vector<CodecRow> bench_codec(const UniformSignal& signal, const std::vector<std::size_t>& budgets,
                                  const CodecConfig& cfg = {});

struct RateComparison {
  double tree_bits_per_sample = 0.0;
  double tree_mse = 0.0;
  bool codec_found = false;   ///< some codec point fits under the tree's rate
  std::size_t codec_n = 0;
  double codec_bits_per_sample = 0.0;
  double codec_mse = 0.0;
};

/// For the `top` highest distinct tree rates: the best codec point (over the
/// same budgets) whose rate does not exceed the tree's.
std::vector<RateComparison> compare_at_top_rates(const std::vector<TreeSweepRow>& tree,
                                                 const std::vector<CodecRow>& codec, std::size_t n_u,
                                                 std::size_t top = 3);

void write_sampling_csv(std::ostream& out, const std::vector<SamplingRow>& rows);
void write_codec_csv(std::ostream& out, const std::vector<CodecRow>& rows);
void write_tree_csv(std::ostream& out, const std::vector<TreeSweepRow>& rows, std::size_t n_u);

/// Tree depth for the bench: as deep as N_U allows, at most 16.
unsigned bench_depth(std::size_t n_u);

}  // namespace nus
