#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nus/sampler.hpp"
#include "nus/segmenter.hpp"
#include "nus/signal.hpp"

namespace nus {

/// Everything the reconstruction needs: boundaries, extrema, the initial
/// monotonicity sign, the value at t = 0 and the per-segment threshold.
struct SamplerDescriptor {
  Segmentation boundaries;
  ExtremaList extrema;
  int s0 = 1;
  double phi0 = 0.0;
  double t_opt = 0.0;
  std::size_t n_u = 0;

  /// Throws ParameterError when an invariant is broken.
  void validate() const;
  /// N + 2J + 2: boundaries, extrema pairs, phi0 and t_opt (s0 rides along).
  std::size_t real_value_count() const;
};

/// c2 t^2 + c1 t + c0 over absolute time.
struct QuadCoeffs {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double value(double t) const { return (c2 * t + c1) * t + c0; }
  double slope(double t) const { return 2.0 * c2 * t + c1; }
  /// Exact integral over [a, b].
  double integral(double a, double b) const;
};

SamplerDescriptor describe(const UniformSignal& signal, std::size_t n);

/// s * (t_opt / delta)^(3/2).
double infer_derivative(double delta, double t_opt, int s);

/// Passes through (a_prev, phi_prev) and (x, phi_x) with zero slope at x.
QuadCoeffs fit_left_quadratic(double a_prev, double phi_prev, double x, double phi_x);

/// Quadratic on [x, a_i] with value phi_x and zero slope at x whose
/// cube-root slope mass equals what the left piece left over from t_opt.
///
/// Integrals use the left Riemann rule on the n_u grid; a_prev, x and a_i
/// are expected on grid edges. A negative leftover mass, or a right piece too
/// short to carry any mass on the grid, gives the flat continuation.
QuadCoeffs fit_right_quadratic(double x, double phi_x, double a_i, const QuadCoeffs& left, double a_prev,
                               double t_opt, bool prev_increasing, std::size_t n_u);

struct SegmentTrace {
  bool has_extremum = false;
  std::size_t extrema_inside = 0;
  double slope = 0.0;        ///< inferred slope of a monotone segment
  QuadCoeffs left, right;    ///< fits of an extremum segment
  bool left_skipped = false; ///< extremum sits on the left boundary
  double left_value = 0.0;   ///< running estimate entering the segment
  double right_value = 0.0;  ///< running estimate leaving the segment
};

struct Reconstruction {
  PiecewiseConstant signal;
  std::vector<SegmentTrace> segments;
  int final_sign = 1;
};

Reconstruction reconstruct_traced(const SamplerDescriptor& desc);
PiecewiseConstant reconstruct(const SamplerDescriptor& desc);

std::string descriptor_to_json(const SamplerDescriptor& desc);
SamplerDescriptor descriptor_from_json(const std::string& text);

}  // namespace nus
