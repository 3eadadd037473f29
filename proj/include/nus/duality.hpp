#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "nus/segmenter.hpp"
#include "nus/signal.hpp"

namespace nus {

/// Density sampled on a uniform grid of cells over [x_low, x_high).
struct PdfGrid {
  double x_low = 0.0;
  double x_high = 1.0;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double width() const noexcept { return x_high - x_low; }
  double cell_width() const noexcept { return width() / static_cast<double>(values.size()); }
  double center(std::size_t m) const noexcept {
    return x_low + (static_cast<double>(m) + 0.5) * cell_width();
  }

  /// Throws ParameterError unless the values are non-negative and the
  /// Riemann sum is 1 within 1e-9.
  void validate() const;
  /// Rescales `values` so the Riemann sum is 1.
  static PdfGrid normalized(double x_low, double x_high, std::vector<double> values);
};

struct SignalPdf {
  PdfGrid pdf;     ///< on [0, 1)
  double energy;   ///< integral of the squared derivative
};

/// p = deriv^2 / integral(deriv^2).
SignalPdf pdf_from_signal(const UniformSignal& signal);

/// phi(t) = (1 / width) * integral of sqrt(p) from x_low to x_low + t * width.
UniformSignal signal_from_pdf(const PdfGrid& pdf);

struct QuantizerSpec {
  std::vector<double> boundaries;     ///< N + 1 edges, pinned to the support ends
  std::vector<double> reproduction;   ///< conditional mean of each cell
  std::vector<std::size_t> grid_edges;  ///< the same edges as pdf grid indices
};

/// High-rate scalar quantizer obtained by running the sampler's companding
/// on signal_from_pdf(pdf).
QuantizerSpec design_quantizer_via_sampling(const PdfGrid& pdf, std::size_t n, double epsilon = kDefaultEpsilon);

/// (1 / 12N^2) * integral p / lambda^2 with lambda a point density on the
/// same grid, normalized over the pdf's support.
double quantizer_bennett_mse(const PdfGrid& pdf, const std::vector<double>& lambda, std::size_t n);

/// Rows of lower,upper,reproduction.
void write_quantizer_csv(std::ostream& out, const QuantizerSpec& q);

}  // namespace nus
