#include "nus/sampler.hpp"

#include <cmath>

#include "nus/error.hpp"

namespace nus {

namespace {

void check_grid(const UniformSignal& signal, const Segmentation& seg) {
  if (seg.grid_size() != signal.size())
    throw ParameterError("segmentation does not cover the signal grid");
}

}  // namespace

std::vector<double> PiecewiseConstant::expand() const {
  std::vector<double> out(segmentation.grid_size());
  for (std::size_t i = 0; i < segmentation.segments(); ++i)
    for (std::size_t k = segmentation.left(i); k < segmentation.right(i); ++k) out[k] = samples[i];
  return out;
}

PiecewiseConstant optimal_samples(const UniformSignal& signal, const Segmentation& seg) {
  check_grid(signal, seg);
  std::vector<double> samples(seg.segments());
  for (std::size_t i = 0; i < seg.segments(); ++i) {
    double sum = 0.0;
    for (std::size_t k = seg.left(i); k < seg.right(i); ++k) sum += signal[k];
    samples[i] = sum / static_cast<double>(seg.length(i));
  }
  return PiecewiseConstant{seg, std::move(samples)};
}

double empirical_mse(const UniformSignal& signal, const PiecewiseConstant& pc) {
  const Segmentation& seg = pc.segmentation;
  check_grid(signal, seg);
  if (pc.samples.size() != seg.segments()) throw ParameterError("sample count differs from segment count");
  double total = 0.0;
  for (std::size_t i = 0; i < seg.segments(); ++i) {
    for (std::size_t k = seg.left(i); k < seg.right(i); ++k) {
      const double e = signal[k] - pc.samples[i];
      total += e * e;
    }
  }
  return total / static_cast<double>(signal.size());
}

std::vector<double> segment_mse(const UniformSignal& signal, const PiecewiseConstant& pc) {
  const Segmentation& seg = pc.segmentation;
  check_grid(signal, seg);
  std::vector<double> out(seg.segments());
  for (std::size_t i = 0; i < seg.segments(); ++i) {
    double total = 0.0;
    for (std::size_t k = seg.left(i); k < seg.right(i); ++k) {
      const double e = signal[k] - pc.samples[i];
      total += e * e;
    }
    out[i] = total / static_cast<double>(seg.length(i));
  }
  return out;
}

double bennett_mse(const DerivativeGrid& deriv, const DensityGrid& density, std::size_t n) {
  if (n < 1) throw ParameterError("segment count must be at least 1");
  if (deriv.size() != density.size()) throw ParameterError("density and derivative grids differ");
  double integral = 0.0;
  for (std::size_t k = 0; k < deriv.size(); ++k) {
    const double energy = deriv[k] * deriv[k];
    if (energy == 0.0) continue;
    if (!(density[k] > 0.0)) throw ParameterError("density vanishes where the derivative does not");
    integral += energy / (density[k] * density[k]);
  }
  integral *= deriv.cell_width();
  const double nn = static_cast<double>(n);
  return integral / (12.0 * nn * nn);
}

double panter_dite_mse(const DerivativeGrid& deriv, std::size_t n) {
  if (n < 1) throw ParameterError("segment count must be at least 1");
  double integral = 0.0;
  for (double d : deriv.values) integral += std::cbrt(d * d);
  integral *= deriv.cell_width();
  const double nn = static_cast<double>(n);
  return integral * integral * integral / (12.0 * nn * nn);
}

double signal_energy(const UniformSignal& signal) {
  double total = 0.0;
  for (double v : signal.values()) total += v * v;
  return total * signal.cell_width();
}

}  // namespace nus
