#include "nus/reconstructor.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "nus/error.hpp"

namespace nus {

namespace {

std::size_t grid_index(double t, std::size_t n_u) {
  return static_cast<std::size_t>(std::llround(t * static_cast<double>(n_u)));
}

// Left Riemann sum of f over [a, b) on the n_u grid.
template <typename F>
double left_riemann(double a, double b, std::size_t n_u, F&& f) {
  const std::size_t ka = grid_index(a, n_u);
  const std::size_t kb = grid_index(b, n_u);
  const double dt = 1.0 / static_cast<double>(n_u);
  double sum = 0.0;
  for (std::size_t k = ka; k < kb; ++k) sum += f(static_cast<double>(k) * dt);
  return sum * dt;
}

int first_slope_sign(const UniformSignal& signal) {
  for (std::size_t k = 0; k + 1 < signal.size(); ++k) {
    if (signal[k + 1] > signal[k]) return 1;
    if (signal[k + 1] < signal[k]) return -1;
  }
  return 0;
}

}  // namespace

void SamplerDescriptor::validate() const {
  if (s0 != 1 && s0 != -1) throw ParameterError("s0 must be +1 or -1");
  if (!(t_opt > 0.0) || !std::isfinite(t_opt)) throw ParameterError("t_opt must be positive");
  if (boundaries.grid_size() != n_u) throw ParameterError("boundaries do not end at n_u");
  std::size_t prev = 0;
  for (const auto& e : extrema.entries) {
    if (e.index == 0 || e.index >= n_u) throw ParameterError("extremum index outside (0, n_u)");
    if (e.index <= prev && prev != 0) throw ParameterError("extremum indices must increase");
    prev = e.index;
  }
}

std::size_t SamplerDescriptor::real_value_count() const {
  // N - 1 interior boundaries, 2J extrema values, then s0, phi0 and t_opt.
  return (boundaries.segments() - 1) + 2 * extrema.size() + 3;
}

double QuadCoeffs::integral(double a, double b) const {
  auto anti = [this](double t) { return ((c2 / 3.0 * t + c1 / 2.0) * t + c0) * t; };
  return anti(b) - anti(a);
}

SamplerDescriptor describe(const UniformSignal& signal, std::size_t n) {
  const int s0 = first_slope_sign(signal);
  if (s0 == 0) throw DegenerateSignalError("cannot describe a constant signal");
  ThresholdResult seg = segment_by_threshold(derivative(signal), n);
  SamplerDescriptor desc{std::move(seg.segmentation), find_extrema(signal), s0, signal[0], seg.threshold,
                         signal.size()};
  return desc;
}

double infer_derivative(double delta, double t_opt, int s) {
  if (!(delta > 0.0)) throw ParameterError("segment length must be positive");
  const double ratio = t_opt / delta;
  return static_cast<double>(s) * ratio * std::sqrt(ratio);
}

QuadCoeffs fit_left_quadratic(double a_prev, double phi_prev, double x, double phi_x) {
  if (!(a_prev < x)) throw ParameterError("left fit needs a_prev < x");
  // Zero slope at x fixes c1 = -2 c2 x; the two values then fix c2.
  const double gap = a_prev - x;
  const double c2 = (phi_prev - phi_x) / (gap * gap);
  return QuadCoeffs{c2, -2.0 * c2 * x, phi_x + c2 * x * x};
}

QuadCoeffs fit_right_quadratic(double x, double phi_x, double a_i, const QuadCoeffs& left, double a_prev,
                               double t_opt, bool prev_increasing, std::size_t n_u) {
  if (!(x > 0.0)) throw ParameterError("right fit needs an interior extremum");
  if (!(x < a_i)) throw ParameterError("right fit needs x < a_i");
  const double used = left_riemann(a_prev, x, n_u, [&](double t) {
    const double s = left.slope(t);
    return std::cbrt(s * s);
  });
  const double leftover = std::max(t_opt - used, 0.0);
  const double shape = left_riemann(x, a_i, n_u, [&](double t) {
    const double u = 1.0 - t / x;
    return std::cbrt(u * u);
  });
  double rho1 = 0.0;
  if (shape > 0.0) {
    const double ratio = leftover / shape;
    rho1 = ratio * std::sqrt(ratio);
  }
  // A maximum follows an increasing run: rho1 >= 0 and rho2 <= 0.
  if (!prev_increasing) rho1 = -rho1;
  return QuadCoeffs{-rho1 / (2.0 * x), rho1, phi_x - x * rho1 / 2.0};
}

Reconstruction reconstruct_traced(const SamplerDescriptor& desc) {
  desc.validate();
  const Segmentation& seg = desc.boundaries;
  const std::size_t n_u = desc.n_u;
  const double dt = 1.0 / static_cast<double>(n_u);
  const auto& extrema = desc.extrema.entries;

  Reconstruction out{PiecewiseConstant{seg, std::vector<double>(seg.segments())}, {}, desc.s0};
  out.segments.resize(seg.segments());
  int s = desc.s0;
  double running = desc.phi0;
  std::size_t next = 0;  // first extremum not yet consumed

  for (std::size_t i = 0; i < seg.segments(); ++i) {
    const std::size_t left_k = seg.left(i);
    const std::size_t right_k = seg.right(i);
    const double a_prev = static_cast<double>(left_k) * dt;
    const double a_i = static_cast<double>(right_k) * dt;
    const double width = a_i - a_prev;
    SegmentTrace& tr = out.segments[i];
    tr.left_value = running;

    std::size_t inside = 0;
    while (next + inside < extrema.size() && extrema[next + inside].index < right_k) ++inside;

    if (inside == 0) {
      tr.slope = infer_derivative(width, desc.t_opt, s);
      out.signal.samples[i] = running + tr.slope * width / 2.0;
      running += tr.slope * width;
    } else {
      const Extremum& first = extrema[next];
      const double x = static_cast<double>(first.index) * dt;
      tr.has_extremum = true;
      tr.extrema_inside = inside;
      double area = 0.0;
      double x_start = x;
      if (first.index == left_k) {
        // The left system is singular here; the right form covers the segment.
        tr.left_skipped = true;
        tr.right = fit_right_quadratic(x, first.amplitude, a_i, QuadCoeffs{}, x, desc.t_opt, s > 0, n_u);
        x_start = a_prev;
      } else {
        tr.left = fit_left_quadratic(a_prev, running, x, first.amplitude);
        tr.right = fit_right_quadratic(x, first.amplitude, a_i, tr.left, a_prev, desc.t_opt, s > 0, n_u);
        area += tr.left.integral(a_prev, x);
      }
      area += tr.right.integral(x_start, a_i);
      out.signal.samples[i] = area / width;
      running = tr.right.value(a_i);
      if (inside % 2 == 1) s = -s;
      next += inside;
    }
    tr.right_value = running;
  }
  out.final_sign = s;
  return out;
}

PiecewiseConstant reconstruct(const SamplerDescriptor& desc) { return reconstruct_traced(desc).signal; }

std::string descriptor_to_json(const SamplerDescriptor& desc) {
  nlohmann::ordered_json j;
  j["n_u"] = desc.n_u;
  j["boundaries"] = std::vector<std::size_t>(desc.boundaries.boundaries().begin(),
                                             desc.boundaries.boundaries().end());
  auto& ext = j["extrema"] = nlohmann::ordered_json::array();
  for (const auto& e : desc.extrema.entries)
    ext.push_back({{"index", e.index}, {"amplitude", e.amplitude}, {"maximum", e.maximum}});
  j["s0"] = desc.s0;
  j["phi0"] = desc.phi0;
  j["t_opt"] = desc.t_opt;
  return j.dump(2);
}

SamplerDescriptor descriptor_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ExtremaList extrema;
    for (const auto& e : j.at("extrema"))
      extrema.entries.push_back(Extremum{e.at("index").get<std::size_t>(), e.at("amplitude").get<double>(),
                                         e.value("maximum", false)});
    SamplerDescriptor desc{Segmentation(j.at("boundaries").get<std::vector<std::size_t>>()),
                           std::move(extrema),
                           j.at("s0").get<int>(),
                           j.at("phi0").get<double>(),
                           j.at("t_opt").get<double>(),
                           j.at("n_u").get<std::size_t>()};
    desc.validate();
    return desc;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed descriptor json: ") + e.what());
  }
}

}  // namespace nus
