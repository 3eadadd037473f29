#include "nus/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "nus/error.hpp"
#include "nus/reconstructor.hpp"
#include "nus/sampler.hpp"
#include "nus/segmenter.hpp"

namespace nus {

TreeSweepRow tree_point(const UniformSignal& signal, const DyadicTree& pruned, double mu,
                        const TreeCodecConfig& cfg) {
  PiecewiseConstant pc = tree_sample(pruned);
  TreeSweepRow row{mu, pruned.leaf_count(), tree_rate_bits(pruned, cfg.bits_per_sample),
                   empirical_mse(signal, pc), 0.0};
  for (double& v : pc.samples)
    v = dequantize_uniform(quantize_uniform(v, cfg.bits_per_sample, cfg.phi_min, cfg.phi_max),
                           cfg.bits_per_sample, cfg.phi_min, cfg.phi_max);
  row.mse_quantized = empirical_mse(signal, pc);
  return row;
}

std::vector<TreeSweepRow> tree_sweep(const UniformSignal& signal, const DyadicTree& full,
                                     const std::vector<double>& mu_grid, const TreeCodecConfig& cfg) {
  if (mu_grid.empty()) throw ParameterError("mu grid is empty");
  std::vector<TreeSweepRow> rows;
  rows.reserve(mu_grid.size());
  for (double mu : mu_grid) rows.push_back(tree_point(signal, prune(full, {mu}), mu, cfg));
  return rows;
}

DyadicTree tree_for_budget(const DyadicTree& full, std::size_t max_leaves) {
  if (max_leaves < 1) throw ParameterError("leaf budget must be at least 1");
  if (full.leaf_count() <= max_leaves) return full;
  double hi = full.root().error + 1.0;  // always reaches the root
  double lo = hi * 1e-200;
  if (DyadicTree t = prune(full, {lo}); t.leaf_count() <= max_leaves) return t;
  // Leaf count is non-increasing in mu; bisect in log space.
  for (int it = 0; it < 200 && hi > lo * (1.0 + 1e-12); ++it) {
    const double mid = std::exp(0.5 * (std::log(lo) + std::log(hi)));
    if (prune(full, {mid}).leaf_count() <= max_leaves)
      hi = mid;
    else
      lo = mid;
  }
  return prune(full, {hi});
}

std::vector<std::size_t> budgets_from_mu_grid(const DyadicTree& full, const std::vector<double>& mu_grid) {
  if (mu_grid.empty()) throw ParameterError("mu grid is empty");
  std::vector<std::size_t> out;
  for (double mu : mu_grid) out.push_back(prune(full, {mu}).leaf_count());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

SamplingRow sampling_row(const UniformSignal& signal, const DerivativeGrid& deriv, const DyadicTree& tree,
                         std::size_t n) {
  SamplingRow row;
  row.n = n;
  const ThresholdResult opt = segment_by_threshold(deriv, n);
  row.mse_opt_empirical = empirical_mse(signal, optimal_samples(signal, opt.segmentation));
  row.mse_opt_theory = panter_dite_mse(deriv, n);
  row.mse_uniform = empirical_mse(signal, optimal_samples(signal, uniform_segmentation(signal.size(), n)));
  row.mse_tree = empirical_mse(signal, tree_sample(tree));
  row.tree_leaves = tree.leaf_count();
  row.energy = signal_energy(signal);
  return row;
}

}  // namespace

SamplingRow sampling_point(const UniformSignal& signal, const DyadicTree& full, std::size_t n) {
  return sampling_row(signal, derivative(signal), tree_for_budget(full, n), n);
}

std::vector<SamplingRow> bench_sampling(const UniformSignal& signal, unsigned depth,
                                        const std::vector<double>& mu_grid) {
  if (mu_grid.empty()) throw ParameterError("mu grid is empty");
  const DyadicTree full = build_full_tree(signal, depth);
  const DerivativeGrid deriv = derivative(signal);
  // One tree per distinct leaf count; the smallest mu reaching it wins.
  std::map<std::size_t, DyadicTree> trees;
  for (double mu : mu_grid) {
    DyadicTree t = prune(full, {mu});
    trees.try_emplace(t.leaf_count(), std::move(t));
  }
  std::vector<SamplingRow> rows;
  for (const auto& [leaves, tree] : trees) rows.push_back(sampling_row(signal, deriv, tree, leaves));
  return rows;
}

CodecRow codec_point(const UniformSignal& signal, std::size_t n, const CodecConfig& cfg) {
  const SamplerDescriptor desc = describe(signal, n);
  const auto bytes = encode_descriptor(desc, cfg);
  const DecodedStream decoded = decode_descriptor(bytes, cfg);
  const RateReport rate = rate_report(bytes.size(), signal.size());
  CodecRow row;
  row.n = n;
  row.segments = desc.boundaries.segments();
  row.extrema = desc.extrema.size();
  row.stream_bits = rate.stream_bits;
  row.bits_per_sample = rate.bits_per_sample;
  row.payload_bits_per_sample = rate.payload_bits_per_sample;
  row.mse = empirical_mse(signal, reconstruct(decoded.descriptor));
  return row;
}

std::vector<CodecRow> bench_codec(const UniformSignal& signal, const std::vector<std::size_t>& budgets,
                                  const CodecConfig& cfg) {
  if (budgets.empty()) throw ParameterError("no codec budgets given");
  std::vector<CodecRow> rows;
  rows.reserve(budgets.size());
  for (std::size_t n : budgets) rows.push_back(codec_point(signal, n, cfg));
  return rows;
}

std::vector<RateComparison> compare_at_top_rates(const std::vector<TreeSweepRow>& tree,
                                                 const std::vector<CodecRow>& codec, std::size_t n_u,
                                                 std::size_t top) {
  std::vector<TreeSweepRow> points = tree;
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.bits > b.bits; });
  points.erase(std::unique(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.bits == b.bits; }),
               points.end());
  if (points.size() > top) points.resize(top);

  std::vector<RateComparison> out;
  for (const auto& p : points) {
    RateComparison c;
    c.tree_bits_per_sample = static_cast<double>(p.bits) / static_cast<double>(n_u);
    c.tree_mse = p.mse_quantized;
    for (const auto& row : codec) {
      if (row.stream_bits > p.bits) continue;
      if (!c.codec_found || row.mse < c.codec_mse) {
        c.codec_found = true;
        c.codec_n = row.n;
        c.codec_bits_per_sample = row.bits_per_sample;
        c.codec_mse = row.mse;
      }
    }
    out.push_back(c);
  }
  return out;
}

void write_sampling_csv(std::ostream& out, const std::vector<SamplingRow>& rows) {
  out << "N,mse_opt_empirical,mse_opt_theory,mse_uniform,mse_tree,tree_leaves,"
         "nmse_opt_empirical,nmse_uniform,nmse_tree\n";
  out.precision(10);
  for (const auto& r : rows) {
    const double e = r.energy > 0.0 ? r.energy : 1.0;
    out << r.n << ',' << r.mse_opt_empirical << ',' << r.mse_opt_theory << ',' << r.mse_uniform << ','
        << r.mse_tree << ',' << r.tree_leaves << ',' << r.mse_opt_empirical / e << ',' << r.mse_uniform / e
        << ',' << r.mse_tree / e << '\n';
  }
}

void write_codec_csv(std::ostream& out, const std::vector<CodecRow>& rows) {
  out << "N,segments,J,stream_bits,bits_per_sample,payload_bits_per_sample,mse\n";
  out.precision(10);
  for (const auto& r : rows)
    out << r.n << ',' << r.segments << ',' << r.extrema << ',' << r.stream_bits << ',' << r.bits_per_sample
        << ',' << r.payload_bits_per_sample << ',' << r.mse << '\n';
}

void write_tree_csv(std::ostream& out, const std::vector<TreeSweepRow>& rows, std::size_t n_u) {
  out << "mu,leaves,bits,bits_per_sample,mse,mse_quantized\n";
  out.precision(10);
  for (const auto& r : rows)
    out << r.mu << ',' << r.leaves << ',' << r.bits << ','
        << static_cast<double>(r.bits) / static_cast<double>(n_u) << ',' << r.mse << ',' << r.mse_quantized
        << '\n';
}

unsigned bench_depth(std::size_t n_u) {
  unsigned d = 0;
  while (d < 16 && n_u % (std::size_t{1} << (d + 1)) == 0 && (std::size_t{1} << (d + 1)) <= n_u) ++d;
  return d;
}

}  // namespace nus
