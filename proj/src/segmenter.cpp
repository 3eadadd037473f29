#include "nus/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nus/error.hpp"

namespace nus {

namespace {

double cube_root_energy(double slope) { return std::cbrt(slope * slope); }

void check_count(std::size_t n_u, std::size_t n) {
  if (n < 1) throw ResolutionError("segment count must be at least 1");
  if (n > n_u)
    throw ResolutionError("segment count " + std::to_string(n) + " exceeds grid size " +
                          std::to_string(n_u));
}

// Places boundary i at the first edge k where cumulative[k] >= i * step.
std::vector<std::size_t> place_on_cumulative(std::span<const double> cumulative, std::size_t n,
                                             double step) {
  const std::size_t n_u = cumulative.size() - 1;
  // Absorbs summation rounding so exact ties land on the tied edge.
  const double slack = 1e-12 * cumulative[n_u];
  std::vector<std::size_t> b;
  b.reserve(n + 1);
  b.push_back(0);
  std::size_t k = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const double target = static_cast<double>(i) * step;
    while (k < n_u && cumulative[k] < target - slack) ++k;
    if (k >= n_u) break;
    if (k > b.back()) b.push_back(k);
  }
  b.push_back(n_u);
  return b;
}

}  // namespace

Segmentation::Segmentation(std::vector<std::size_t> boundaries) : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2) throw ParameterError("segmentation needs at least one segment");
  if (boundaries_.front() != 0) throw ParameterError("segmentation must start at grid index 0");
  for (std::size_t i = 1; i < boundaries_.size(); ++i)
    if (boundaries_[i] <= boundaries_[i - 1])
      throw ParameterError("segmentation boundaries must be strictly increasing");
}

std::size_t Segmentation::segment_of(std::size_t k) const {
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), k);
  return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

DensityGrid optimal_density(const DerivativeGrid& deriv, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  DensityGrid out{std::vector<double>(deriv.size())};
  double mass = 0.0;
  for (std::size_t k = 0; k < deriv.size(); ++k) {
    out.values[k] = std::cbrt(std::max(deriv[k] * deriv[k], epsilon));
    mass += out.values[k];
  }
  mass *= deriv.cell_width();
  for (double& v : out.values) v /= mass;
  return out;
}

CompressorCurve compressor(const DensityGrid& density) {
  const std::size_t n_u = density.size();
  const double dt = density.cell_width();
  CompressorCurve out{std::vector<double>(n_u + 1)};
  double acc = 0.0;
  for (std::size_t k = 0; k < n_u; ++k) {
    out.values[k] = std::min(acc, 1.0);
    acc += density[k] * dt;
  }
  out.values[n_u] = 1.0;
  return out;
}

Segmentation segment_by_expander(const CompressorCurve& curve, std::size_t n) {
  const std::size_t n_u = curve.grid_size();
  check_count(n_u, n);
  return Segmentation(place_on_cumulative(curve.values, n, 1.0 / static_cast<double>(n)));
}

ThresholdResult segment_by_threshold(const DerivativeGrid& deriv, std::size_t n) {
  const std::size_t n_u = deriv.size();
  check_count(n_u, n);
  const double dt = deriv.cell_width();
  std::vector<double> cumulative(n_u + 1, 0.0);
  for (std::size_t k = 0; k < n_u; ++k)
    cumulative[k + 1] = cumulative[k] + cube_root_energy(deriv[k]) * dt;
  const double total = cumulative[n_u];
  if (!(total > 0.0)) throw DegenerateSignalError("derivative is identically zero");
  const double threshold = total / static_cast<double>(n);
  return ThresholdResult{Segmentation(place_on_cumulative(cumulative, n, threshold)), threshold};
}

Segmentation uniform_segmentation(std::size_t n_u, std::size_t n) {
  check_count(n_u, n);
  std::vector<std::size_t> b(n + 1);
  // round(i * n_u / n), half up, in integer arithmetic.
  for (std::size_t i = 0; i <= n; ++i) b[i] = (2 * i * n_u + n) / (2 * n);
  return Segmentation(std::move(b));
}

std::vector<double> segment_masses(const DerivativeGrid& deriv, const Segmentation& seg) {
  if (seg.grid_size() != deriv.size()) throw ParameterError("segmentation and derivative grid differ");
  const double dt = deriv.cell_width();
  std::vector<double> out(seg.segments(), 0.0);
  for (std::size_t i = 0; i < seg.segments(); ++i)
    for (std::size_t k = seg.left(i); k < seg.right(i); ++k) out[i] += cube_root_energy(deriv[k]) * dt;
  return out;
}

double max_cell_mass(const DerivativeGrid& deriv) {
  double m = 0.0;
  for (double d : deriv.values) m = std::max(m, cube_root_energy(d));
  return m * deriv.cell_width();
}

}  // namespace nus
