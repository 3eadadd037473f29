#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nus/signal.hpp"

namespace nus {

/// Matlab's `eps`, the default floor on the derivative energy.
inline constexpr double kDefaultEpsilon = 0x1.0p-52;

/// Sampling-point density on the uniform grid; its left Riemann sum is 1.
struct DensityGrid {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double cell_width() const noexcept { return 1.0 / static_cast<double>(values.size()); }
  double operator[](std::size_t k) const noexcept { return values[k]; }
};

/// Cumulative density at the N_U + 1 grid edges; u[0] = 0, u[N_U] = 1.
struct CompressorCurve {
  std::vector<double> values;

  std::size_t grid_size() const noexcept { return values.size() - 1; }
  double operator[](std::size_t k) const noexcept { return values[k]; }
};

/// Boundary grid indices b_0 = 0 < b_1 < ... < b_N = N_U.
class Segmentation {
public:
  explicit Segmentation(std::vector<std::size_t> boundaries);

  std::size_t segments() const noexcept { return boundaries_.size() - 1; }
  std::size_t grid_size() const noexcept { return boundaries_.back(); }
  std::span<const std::size_t> boundaries() const noexcept { return boundaries_; }
  std::size_t left(std::size_t i) const noexcept { return boundaries_[i]; }
  std::size_t right(std::size_t i) const noexcept { return boundaries_[i + 1]; }
  std::size_t length(std::size_t i) const noexcept { return boundaries_[i + 1] - boundaries_[i]; }

  /// Segment index containing grid cell k.
  std::size_t segment_of(std::size_t k) const;

  bool operator==(const Segmentation&) const = default;

private:
  std::vector<std::size_t> boundaries_;
};

struct ThresholdResult {
  Segmentation segmentation;
  double threshold;  ///< T_opt: cube-root derivative-energy mass per segment
};

/// lambda[k] proportional to max(deriv[k]^2, eps)^(1/3).
DensityGrid optimal_density(const DerivativeGrid& deriv, double epsilon = kDefaultEpsilon);

CompressorCurve compressor(const DensityGrid& density);

/// b_i = smallest k with u[k] >= i / N. Coinciding boundaries are merged,
/// so the result can hold fewer than N segments when single cells carry
/// more than 1/N of the mass.
Segmentation segment_by_expander(const CompressorCurve& curve, std::size_t n);

/// Sequential accumulation of |deriv|^(2/3) against T_opt.
///
/// The running mass is measured from the origin, so boundary i is the first
/// grid index whose cumulative mass reaches i * T_opt. Every segment mass then
/// lies within one cell contribution of T_opt, including the last one.
ThresholdResult segment_by_threshold(const DerivativeGrid& deriv, std::size_t n);

Segmentation uniform_segmentation(std::size_t n_u, std::size_t n);

/// Cube-root-energy mass |deriv|^(2/3) * dt of each segment.
std::vector<double> segment_masses(const DerivativeGrid& deriv, const Segmentation& seg);

/// Largest single-cell contribution |deriv|^(2/3) * dt.
double max_cell_mass(const DerivativeGrid& deriv);

}  // namespace nus
