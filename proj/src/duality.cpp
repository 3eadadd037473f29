#include "nus/duality.hpp"

#include <cmath>
#include <ostream>

#include "nus/error.hpp"

namespace nus {

void PdfGrid::validate() const {
  if (values.size() < 2) throw ParameterError("pdf needs at least two cells");
  if (!(x_low < x_high) || !std::isfinite(x_low) || !std::isfinite(x_high))
    throw ParameterError("pdf support must satisfy x_low < x_high");
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("pdf values must be finite and non-negative");
    sum += v;
  }
  if (std::abs(sum * cell_width() - 1.0) > 1e-9) throw ParameterError("pdf does not integrate to 1");
}

PdfGrid PdfGrid::normalized(double x_low, double x_high, std::vector<double> values) {
  PdfGrid p{x_low, x_high, std::move(values)};
  double sum = 0.0;
  for (double v : p.values) sum += v;
  const double mass = sum * p.cell_width();
  if (!(mass > 0.0)) throw DegenerateSignalError("pdf has no mass");
  for (double& v : p.values) v /= mass;
  p.validate();
  return p;
}

SignalPdf pdf_from_signal(const UniformSignal& signal) {
  const DerivativeGrid d = derivative(signal);
  std::vector<double> sq(d.size());
  double energy = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    sq[k] = d[k] * d[k];
    energy += sq[k];
  }
  energy *= d.cell_width();
  if (!(energy > 0.0)) throw DegenerateSignalError("signal has no derivative energy");
  for (double& v : sq) v /= energy;
  return SignalPdf{PdfGrid{0.0, 1.0, std::move(sq)}, energy};
}

UniformSignal signal_from_pdf(const PdfGrid& pdf) {
  pdf.validate();
  const std::size_t n = pdf.size();
  // (1 / width) * sum sqrt(p) * (width / n) collapses to a plain 1 / n.
  std::vector<double> phi(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    phi[k] = acc / static_cast<double>(n);
    acc += std::sqrt(pdf.values[k]);
  }
  return UniformSignal(std::move(phi));
}

QuantizerSpec design_quantizer_via_sampling(const PdfGrid& pdf, std::size_t n, double epsilon) {
  const UniformSignal phi = signal_from_pdf(pdf);
  const Segmentation seg = segment_by_expander(compressor(optimal_density(derivative(phi), epsilon)), n);

  QuantizerSpec q;
  const double scale = pdf.width() / static_cast<double>(pdf.size());
  for (std::size_t b : seg.boundaries()) {
    q.grid_edges.push_back(b);
    q.boundaries.push_back(pdf.x_low + static_cast<double>(b) * scale);
  }
  q.boundaries.back() = pdf.x_high;
  for (std::size_t i = 0; i < seg.segments(); ++i) {
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t m = seg.left(i); m < seg.right(i); ++m) {
      mass += pdf.values[m];
      moment += pdf.values[m] * pdf.center(m);
    }
    q.reproduction.push_back(mass > 0.0 ? moment / mass : 0.5 * (q.boundaries[i] + q.boundaries[i + 1]));
  }
  return q;
}

double quantizer_bennett_mse(const PdfGrid& pdf, const std::vector<double>& lambda, std::size_t n) {
  if (lambda.size() != pdf.size()) throw ParameterError("density and pdf grids differ");
  if (n < 1) throw ParameterError("N must be positive");
  double sum = 0.0;
  for (std::size_t m = 0; m < pdf.size(); ++m) {
    if (pdf.values[m] == 0.0) continue;
    if (!(lambda[m] > 0.0)) throw ParameterError("density must be positive where the pdf is");
    sum += pdf.values[m] / (lambda[m] * lambda[m]);
  }
  const double nn = static_cast<double>(n);
  return sum * pdf.cell_width() / (12.0 * nn * nn);
}

void write_quantizer_csv(std::ostream& out, const QuantizerSpec& q) {
  out << "lower,upper,reproduction\n";
  out.precision(17);
  for (std::size_t i = 0; i < q.reproduction.size(); ++i)
    out << q.boundaries[i] << ',' << q.boundaries[i + 1] << ',' << q.reproduction[i] << '\n';
}

}  // namespace nus
