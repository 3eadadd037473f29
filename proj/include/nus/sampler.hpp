#pragma once

#include <cstddef>
#include <vector>

#include "nus/segmenter.hpp"
#include "nus/signal.hpp"

namespace nus {

/// One representative amplitude per segment.
struct PiecewiseConstant {
  Segmentation segmentation;
  std::vector<double> samples;

  /// Value on grid cell k.
  double at(std::size_t k) const { return samples[segmentation.segment_of(k)]; }
  /// Expands back onto the dense grid.
  std::vector<double> expand() const;
};

/// Per-segment mean of the signal.
PiecewiseConstant optimal_samples(const UniformSignal& signal, const Segmentation& seg);

/// (1 / N_U) * sum_k (signal[k] - pc(k))^2.
double empirical_mse(const UniformSignal& signal, const PiecewiseConstant& pc);

/// Per-segment (1 / n_i) * sum (signal[k] - pc_i)^2 over the segment's cells.
std::vector<double> segment_mse(const UniformSignal& signal, const PiecewiseConstant& pc);

/// High-resolution MSE of a density: (1 / 12N^2) * integral deriv^2 / lambda^2.
double bennett_mse(const DerivativeGrid& deriv, const DensityGrid& density, std::size_t n);

/// Minimum of bennett_mse over densities: (1 / 12N^2) * (integral |deriv|^(2/3))^3.
double panter_dite_mse(const DerivativeGrid& deriv, std::size_t n);

/// Left Riemann sum of signal^2; used to normalise MSE curves.
double signal_energy(const UniformSignal& signal);

}  // namespace nus
